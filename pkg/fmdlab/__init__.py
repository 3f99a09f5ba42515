# fmdlab - finite molecularization lab

__version__ = "1.0.0"
__description__ = "Exact factorization of ideals into molecules inside certified finite quotient rings"

from .cli import main

__all__ = ["main"]
