"""
Deterministic stratified train/test split.

Shuffling uses the splitmix64 sequence seeded with the run seed and a
Fisher-Yates pass per class, +1 class first, so a split can be reproduced
by any implementation of those two algorithms.
"""
import logging
import math

from errors import TooFewSamples

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 pseudo-random sequence."""

    def __init__(self, seed):
        self._state = int(seed) & _MASK64

    def next(self):
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def shuffle(self, items):
        """Fisher-Yates: for i = n-1 .. 1 swap items[i] with items[next() % (i + 1)]."""
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.next() % (i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def train_count(n, train_fraction):
    """floor(f n + 0.5) clamped so each side keeps at least one sample."""
    return min(max(math.floor(train_fraction * n + 0.5), 1), n - 1)


def split(samples, train_fraction, seed):
    """
    Stratified split of labeled samples.

    Args:
        samples: list of LabeledSample
        train_fraction: Share of each class used for training, 0 < f < 1
        seed: Integer seed of the shuffle

    Returns:
        tuple: (train, test) lists

    Raises:
        TooFewSamples: a class has fewer than 2 samples
    """
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")

    rng = SplitMix64(seed)
    train, test = [], []
    for label in (1, -1):
        members = [s for s in samples if s.label == label]
        if len(members) < 2:
            raise TooFewSamples(f"Class {label:+d} has {len(members)} samples, need at least 2")
        shuffled = rng.shuffle(members)
        n_train = train_count(len(members), train_fraction)
        train.extend(shuffled[:n_train])
        test.extend(shuffled[n_train:])
        logger.debug("Class %+d: %d train, %d test", label, n_train, len(members) - n_train)

    logger.info("Split %d samples into %d train and %d test", len(samples), len(train), len(test))
    return train, test
