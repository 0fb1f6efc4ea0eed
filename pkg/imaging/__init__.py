"""
Image representation and ingestion for the texture analysis toolkit.

This package contains the region-of-interest preparation step:
- gray_image.py: GrayImage/BinaryImage/Rect, quantization, thresholding, cropping
- pgm_io.py: PGM (P2/P5) decoding and encoding
"""
