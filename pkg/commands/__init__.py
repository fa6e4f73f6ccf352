"""Command groups mounted on the top-level CLI in ``main.py``."""
