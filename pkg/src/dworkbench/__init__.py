"""Workbench for exact character-sum arithmetic over small finite fields."""

__version__ = "0.1.0"
