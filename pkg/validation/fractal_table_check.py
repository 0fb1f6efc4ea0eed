"""
FRACTAL DIMENSION TABLE CHECK
Box-counting estimates for the three textbook shapes (line, filled square,
Sierpinski carpet of triangles) against their known dimensions.
"""
import math
import os
import sys
import time

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from imaging.gray_image import BinaryImage
from processing.fractal_analyzer import box_count, box_counting_dimension
from synthesis.texture_generator import TextureSpec, generate

SIZE = 256
DEPTH = 8
TOLERANCE = 0.05

# (label, spec, known dimension)
SHAPES = [
    ("Line", TextureSpec("hline", SIZE), 1.0),
    ("Square", TextureSpec("filled_rect", SIZE), 2.0),
    ("Sierpinski", TextureSpec("sierpinski", SIZE, depth=DEPTH), math.log(3) / math.log(2)),
]


def print_analysis():
    print("=" * 80)
    print("FRACTAL DIMENSION TABLE CHECK")
    print(f"Box counting on {SIZE}x{SIZE} binary images")
    print("=" * 80)

    print(f"\n{'Shape':<12} {'Known':>8} {'Estimate':>10} {'Error':>9} {'r^2':>10} {'Time':>9}")
    print("-" * 62)
    failures = 0
    for label, spec, known in SHAPES:
        img = BinaryImage.from_gray(generate(spec))
        start = time.perf_counter()
        estimate = box_counting_dimension(img)
        elapsed = time.perf_counter() - start
        error = estimate.dimension - known
        print(f"{label:<12} {known:>8.4f} {estimate.dimension:>10.4f} {error:>+9.4f} "
              f"{estimate.r_squared:>10.6f} {elapsed * 1000:>7.1f}ms")
        if abs(error) > TOLERANCE:
            failures += 1

    print("\nSierpinski box counts (expect 3^m at box side 2^(8-m)):")
    img = BinaryImage.from_gray(generate(SHAPES[2][1]))
    for m in range(DEPTH + 1):
        side = 2 ** (DEPTH - m)
        count = box_count(img, side)
        mark = "✓" if count == 3 ** m else "✗"
        print(f"  side {side:>3}: {count:>5} boxes  {mark}")

    print()
    if failures:
        print(f"⚠ {failures} shape(s) outside ±{TOLERANCE}")
    else:
        print(f"✓ All shapes within ±{TOLERANCE} of their known dimension")
    return failures


if __name__ == "__main__":
    sys.exit(1 if print_analysis() else 0)
