"""
Tests package for RepVar Calculator
"""
