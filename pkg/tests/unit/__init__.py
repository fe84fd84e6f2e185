"""Unit tests for bisetcalc."""
