"""Model checking and expression-complexity classification for positive
single-quantifier fragments of first-order logic over finite structures."""

__version__ = "0.1.0"
