"""kdv-stationary - stationary periodic solutions of KdV and mKdV equations."""

__version__ = "0.1.0"
