"""
Texture analysis modules.

This package contains the feature extraction pipeline:
- feature_extractor.py: Main coordinator (facade pattern)
- fractal_analyzer.py: Box counting and log-log regression
- holder_analyzer.py: Hoelder image and multifractal spectrum
- glcm_analyzer.py: Co-occurrence matrices and Haralick features
"""
