"""Shared helpers for exact numbers and output rendering."""
