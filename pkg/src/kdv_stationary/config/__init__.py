"""Solver settings, run configuration and their loaders."""
