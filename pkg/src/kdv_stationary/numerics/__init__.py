"""Numerical core: potentials, period integral, constant solve, profiles, residual checks."""
