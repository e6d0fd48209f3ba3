"""Utility modules for spatialpoll."""
