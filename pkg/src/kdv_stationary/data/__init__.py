"""Bundled data files for kdv-stationary."""
