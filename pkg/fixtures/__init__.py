"""
Fixtures package
"""
