"""
Synthetic texture fixtures.

- texture_generator.py: geometric shapes, midpoint-displacement fields and labeled datasets
"""
