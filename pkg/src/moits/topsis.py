"""Ranking of alternatives by similarity to ideal solutions.

Alternatives are rows of a decision matrix; criteria columns are tagged
benefit or cost. Columns are normalized by their maximum absolute value,
positive/negative ideal rows are extracted, and each alternative gets a
closeness coefficient ``xi = d- / (d+ + d-)``; ranking is by descending
``xi``. In the solver, the criteria are the (minimization-sense) objective
values plus the maximum constraint violation, all treated as cost.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DecisionMatrix",
    "TopsisRanking",
    "build_matrix",
    "normalize",
    "ideal_solutions",
    "closeness",
    "rank",
    "best_alternative",
    "cost_closeness",
]

BENEFIT = "benefit"
COST = "cost"

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class DecisionMatrix:
    """Alternatives-by-criteria matrix with per-column senses and weights."""

    entries: np.ndarray
    criteria_senses: tuple[str, ...]
    weights: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "weights", weights)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise ValueError("entries must be a non-empty 2-D matrix")
        ncols = entries.shape[1]
        if len(self.criteria_senses) != ncols or weights.shape != (ncols,):
            raise ValueError("senses and weights must match the column count")
        for sense in self.criteria_senses:
            if sense not in (BENEFIT, COST):
                raise ValueError(f"unknown criterion sense {sense!r}")
        if np.any(weights < 0) or abs(float(weights.sum()) - 1.0) > _WEIGHT_TOL:
            raise ValueError("weights must be non-negative and sum to 1")

    @property
    def n_alternatives(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class TopsisRanking:
    normalized: np.ndarray
    positive_ideal: np.ndarray
    negative_ideal: np.ndarray
    d_plus: np.ndarray
    d_minus: np.ndarray
    closeness: np.ndarray
    order: tuple[int, ...]


def build_matrix(evaluations, weights=None) -> DecisionMatrix:
    """Decision matrix over candidate solutions: d objective columns plus the
    violation column, every criterion cost. Weights default to uniform."""
    if not evaluations:
        raise ValueError("cannot build a decision matrix from zero evaluations")
    d = len(evaluations[0].objectives_min)
    if any(len(ev.objectives_min) != d for ev in evaluations):
        raise ValueError("evaluations have inconsistent objective counts")
    entries = np.array(
        [list(ev.objectives_min) + [ev.violation] for ev in evaluations], dtype=float
    )
    ncols = d + 1
    if weights is None:
        weights = np.full(ncols, 1.0 / ncols)
    return DecisionMatrix(entries, (COST,) * ncols, np.asarray(weights, dtype=float))


def normalize(matrix: DecisionMatrix) -> np.ndarray:
    """Divide each column by its maximum absolute value; all-zero columns stay zero."""
    entries = matrix.entries
    scale = np.abs(entries).max(axis=0)
    safe = np.where(scale == 0.0, 1.0, scale)
    return entries / safe


def ideal_solutions(normalized: np.ndarray, senses) -> tuple[np.ndarray, np.ndarray]:
    """Per-column best (positive ideal) and worst (negative ideal) rows:
    max/min for benefit columns, min/max for cost columns."""
    col_max = normalized.max(axis=0)
    col_min = normalized.min(axis=0)
    benefit = np.array([s == BENEFIT for s in senses])
    positive = np.where(benefit, col_max, col_min)
    negative = np.where(benefit, col_min, col_max)
    return positive, negative


def closeness(normalized, positive_ideal, negative_ideal, weights):
    """Weighted Euclidean distances to each ideal and the closeness coefficient.

    Weights multiply the squared differences inside the root. Alternatives
    coinciding with both ideals (d+ = d- = 0) get closeness 1.
    """
    w = np.asarray(weights, dtype=float)
    d_plus = np.sqrt(((positive_ideal - normalized) ** 2 * w).sum(axis=1))
    d_minus = np.sqrt(((negative_ideal - normalized) ** 2 * w).sum(axis=1))
    total = d_plus + d_minus
    xi = np.where(total > 0.0, d_minus / np.where(total > 0.0, total, 1.0), 1.0)
    return d_plus, d_minus, xi


def rank(matrix: DecisionMatrix) -> TopsisRanking:
    """Full pipeline: normalize, ideals, distances, closeness, ordering.

    Ordering is by descending closeness; ties keep the lower row index.
    """
    normalized = normalize(matrix)
    positive, negative = ideal_solutions(normalized, matrix.criteria_senses)
    d_plus, d_minus, xi = closeness(normalized, positive, negative, matrix.weights)
    order = tuple(int(i) for i in np.argsort(-xi, kind="stable"))
    return TopsisRanking(normalized, positive, negative, d_plus, d_minus, xi, order)


def best_alternative(ranking: TopsisRanking) -> int:
    """Row index of the alternative with the greatest closeness coefficient."""
    return ranking.order[0]


def cost_closeness(entries: np.ndarray) -> np.ndarray:
    """Closeness coefficients for an all-cost matrix with uniform weights.

    Lean path used inside the optimizer loops; identical arithmetic to
    :func:`rank` specialized to cost criteria.
    """
    scale = np.abs(entries).max(axis=0)
    scale[scale == 0.0] = 1.0
    normalized = entries / scale
    positive = normalized.min(axis=0)
    negative = normalized.max(axis=0)
    w = 1.0 / entries.shape[1]
    d_plus = np.sqrt(((positive - normalized) ** 2).sum(axis=1) * w)
    d_minus = np.sqrt(((negative - normalized) ** 2).sum(axis=1) * w)
    total = d_plus + d_minus
    zero = total == 0.0
    total[zero] = 1.0
    xi = d_minus / total
    xi[zero] = 1.0
    return xi
