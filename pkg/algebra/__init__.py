"""
Algebra package
"""
