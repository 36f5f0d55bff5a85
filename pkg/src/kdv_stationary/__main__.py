"""Entry point for running as a module: python -m kdv_stationary."""

from .cli import main

if __name__ == "__main__":
    main()
