"""
Evaluation of trained classifiers.

This package contains:
- confusion.py: ConfusionMatrix, sensitivity/specificity/CCR and the row-percent table
- splitter.py: Seeded stratified train/test split
- ablation.py: Fractal / GLCM / combined holdout comparison
"""
