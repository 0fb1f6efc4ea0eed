"""
Classification stage of the texture pipeline.

This package contains:
- features.py: FeatureVector/LabeledSample, feature fusion and the features CSV format
- normalizer.py: Per-dimension z-score scaling
- svm_trainer.py: Linear SVM training, prediction and model files
- vote_fusion.py: Majority vote over per-family classifiers
"""
