#!/usr/bin/env python3
"""Entry point for the fmdlab CLI."""

import sys

from fmdlab.cli import main

if __name__ == "__main__":
    sys.exit(main())
