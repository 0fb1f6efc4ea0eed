# Configuration constants for the texture analysis toolkit

# Image ingestion
PGM_MAX_MAXVAL = 255  # Largest accepted PGM maxval (8-bit payloads only)
PGM_DEFAULT_BINARY = True  # emit_pgm writes P5 unless asked for P2

# Thresholding (region of interest step)
THRESHOLD_MODE = "auto"  # "auto" = Otsu over the image histogram, or an integer intensity

# Fractal analysis
FRACTAL_SOURCE = "threshold"  # Binary support for the box dimension: threshold | holder | contour
HOLDER_WINDOWS = (3, 5, 7, 9)  # Odd window sides (pixels) for the Hölder measure
SPECTRUM_BINS = 10  # Equal-width alpha bins of the multifractal spectrum
SPECTRUM_FLAT_TOLERANCE = 1e-12  # Alpha range below this collapses to a single bin
F_ALPHA_TOLERANCE = 0.1  # Allowed regression overshoot above the embedding dimension (2)

# GLCM
GLCM_DISTANCE = 2  # Pixels; features averaged over the 4 directions
GLCM_LEVELS = 8  # Gray levels after quantization
GLCM_SYMMETRIC = True  # Normalized symmetrical GLCM
GLCM_NORMALIZATION_TOLERANCE = 1e-9  # |sum(P) - 1| accepted by haralick_features
GLCM_VARIANCE_EPSILON = 1e-12  # sigma^2 at or below this -> correlation undefined

# SVM
SVM_C = 1.0  # Soft-margin constant
SVM_ITERATIONS = 100000  # Fixed subgradient iteration budget
SVM_OBJECTIVE_EVERY = 1000  # Record the primal objective every N iterations
FUSION_MODE = "early"  # early = one SVM on all features, vote = one SVM per family
FEATURE_MASK = "combined"  # fractal | glcm | combined

# Evaluation
SPLIT_FRACTION = 0.5  # Train share per class (20/20 -> 10/10 train, 10/10 test)
SEED = 20240611  # Default seed for splits and synthetic fixtures

# Synthetic fixtures
SYNTH_IMAGE_SIZE = 64  # Pixels per side of the designed dataset images
SYNTH_PER_CLASS = 20  # Images per class
SYNTH_SEED = 7  # Built-in seed of the designed dataset
SYNTH_ROUGHNESS = 0.5  # h of every designed image
SYNTH_SKEW = 3.0  # Power on the rescaled field: sparse bright peaks on a dark floor
SYNTH_FULL_CONTRAST_RANGE = (64, 255)  # Gray range; both ends on 8-level GLCM bin edges (bins 2..7)
SYNTH_HALF_CONTRAST_RANGE = (32, 127)  # Half the full range, bins 1..3
SYNTH_STRIPE_PERIOD = 4  # Pixels; columns x mod 4 < 2 are lifted

# Output formatting
FLOAT_FORMAT = "%.17g"  # Value-exact round trip for features and model files
PERCENT_FORMAT = "%.2f"  # Metrics report cells
MODEL_HEADER = "texfrac-svm v1"  # First line of every model file

# Extraction workers
EXTRACT_WORKERS = 1  # Threads for cmd_extract; output order follows the manifest
