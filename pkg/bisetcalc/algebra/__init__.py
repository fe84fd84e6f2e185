"""Finite groups, G-sets, the 2-category of variable group actions and its slice functors."""
