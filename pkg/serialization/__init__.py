"""
Serialization package
"""
