"""Keeps the tests directory on sys.path so the oracle module imports."""
