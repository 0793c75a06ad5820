"""Grammar mining from traced recursive-descent parsers."""

__version__ = "0.1.0"
