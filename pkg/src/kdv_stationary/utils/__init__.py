"""Utility functions: logging setup, result files, output paths."""
