"""
Unit tests package for spatialpoll.
"""
