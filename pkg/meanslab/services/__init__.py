"""Numerical service layer for meanslab."""
