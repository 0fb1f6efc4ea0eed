"""
Late fusion of per-family classifier decisions by majority vote.
"""
from typing import NamedTuple

from errors import NoVoters


class FusedDecision(NamedTuple):
    label: int
    confidence: float


def vote_fusion(decisions):
    """
    Combine (label, score) decisions.

    The majority label wins; a tied vote goes to the sign of the score sum
    (a zero sum gives +1). Each score counts with the sign of its label, so
    a raw SVM score and its magnitude give the same result. Confidence is
    |sum of scores| / number of voters.

    Raises:
        NoVoters: empty decision list
    """
    decisions = list(decisions)
    if not decisions:
        raise NoVoters("vote_fusion needs at least one decision")

    positive = sum(1 for label, _ in decisions if label == 1)
    negative = len(decisions) - positive
    score_sum = sum(label * abs(float(score)) for label, score in decisions)

    if positive != negative:
        label = 1 if positive > negative else -1
    else:
        label = 1 if score_sum >= 0 else -1
    return FusedDecision(label, abs(score_sum) / len(decisions))
