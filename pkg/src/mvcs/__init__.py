"""Multi-matrix vector coherent states on truncated tensor-product spaces."""

__version__ = "0.1.0"
