"""Integration tests for bisetcalc."""
