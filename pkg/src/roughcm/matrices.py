"""Granule frequency matrices and rough confusion matrices.

The granule frequency matrix cross-classifies a granule partition against
the decision classes: cell (i, j) counts the members of granule i lying in
decision class j. A rough classifier assigns every granule to one class;
its confusion matrix aggregates the frequency rows by assigned class, so
cell (i, j) counts objects predicted to be class i whose true class is j.
Classes that no granule is mapped to keep an all-zero row, and rows are
emitted in class order. Column sums therefore always equal the decision
class sizes, whatever the classifier does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .core import ObjectSet, Partition, _require_same_universe
from .errors import ShapeMismatchError

if TYPE_CHECKING:
    from .classifiers import RoughClassifier

__all__ = [
    "GranuleFrequencyMatrix",
    "RoughConfusionMatrix",
    "granule_frequency_matrix",
    "predictor_set",
    "confusion_matrix",
]


@dataclass(frozen=True)
class GranuleFrequencyMatrix:
    """Cross-classification counts of granules (rows) by decision classes.

    Row sums equal granule sizes and column sums equal class sizes; both
    are checked on construction, so a value of this type is always a
    faithful contingency table of its two partitions.
    """

    cells: tuple[tuple[int, ...], ...]
    granules: Partition
    decisions: Partition

    def __post_init__(self) -> None:
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        _require_same_universe(self.granules, self.decisions)
        m, k = len(self.granules.blocks), len(self.decisions.blocks)
        if len(cells) != m or any(len(row) != k for row in cells):
            raise ShapeMismatchError(f"expected a {m}x{k} count matrix")
        if any(c < 0 for row in cells for c in row):
            raise ValueError("counts must be non-negative")
        for row, block in zip(cells, self.granules.blocks):
            if sum(row) != len(block):
                raise ValueError("row sums must equal granule sizes")
        for j, cls in enumerate(self.decisions.blocks):
            if sum(row[j] for row in cells) != len(cls):
                raise ValueError("column sums must equal decision class sizes")

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def k(self) -> int:
        return len(self.decisions.blocks)

    @property
    def granule_sizes(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.cells)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(sum(row[j] for row in self.cells) for j in range(self.k))

    @property
    def total(self) -> int:
        return sum(self.granule_sizes)


@dataclass(frozen=True)
class RoughConfusionMatrix:
    """Square count matrix: rows are predicted classes, columns true classes."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        k = len(cells)
        if k < 2:
            raise ShapeMismatchError("a confusion matrix needs at least two classes")
        if any(len(row) != k for row in cells):
            raise ShapeMismatchError("confusion matrix must be square")
        if any(c < 0 for row in cells for c in row):
            raise ValueError("counts must be non-negative")
        if all(c == 0 for row in cells for c in row):
            raise ValueError("a confusion matrix must count at least one object")

    @property
    def k(self) -> int:
        return len(self.cells)

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.cells)

    @property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(row[j] for row in self.cells) for j in range(self.k))

    @property
    def total(self) -> int:
        return sum(self.row_sums)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.cells[i][i] for i in range(self.k))


def granule_frequency_matrix(
    granules: Partition, decisions: Partition
) -> GranuleFrequencyMatrix:
    """Count, for every granule, how many members fall in each class."""
    _require_same_universe(granules, decisions)
    cells = tuple(
        tuple(len(block & cls) for cls in decisions.blocks)
        for block in granules.blocks
    )
    return GranuleFrequencyMatrix(cells, granules, decisions)


def predictor_set(
    f: RoughClassifier, class_index: int, granules: Partition
) -> ObjectSet:
    """Union of the granules that `f` maps to the given class (1-based).

    The predictor set is this classifier's stand-in for the class: every
    object inside it receives that prediction.
    """
    if len(f.assignment) != len(granules.blocks):
        raise ShapeMismatchError(
            f"classifier assigns {len(f.assignment)} granules, "
            f"partition has {len(granules.blocks)}"
        )
    if not 1 <= class_index <= f.n_classes:
        raise IndexError(f"class index {class_index} out of range 1..{f.n_classes}")
    picked = [
        block
        for block, cls in zip(granules.blocks, f.assignment)
        if cls == class_index
    ]
    return frozenset().union(*picked)


def confusion_matrix(
    gfm: GranuleFrequencyMatrix, f: RoughClassifier
) -> RoughConfusionMatrix:
    """Aggregate the granule frequency rows by the class `f` assigns them.

    Row i of the result is the sum of the frequency rows of all granules
    mapped to class i; classes with an empty preimage keep an all-zero
    row. Because every granule row lands in exactly one result row, the
    column margins remain the decision class sizes.
    """
    if len(f.assignment) != gfm.m:
        raise ShapeMismatchError(
            f"classifier assigns {len(f.assignment)} granules, matrix has {gfm.m}"
        )
    if f.n_classes != gfm.k:
        raise ShapeMismatchError(
            f"classifier uses {f.n_classes} classes, matrix has {gfm.k}"
        )
    rows = [[0] * gfm.k for _ in range(gfm.k)]
    for source, cls in zip(gfm.cells, f.assignment):
        target = rows[cls - 1]
        for j, count in enumerate(source):
            target[j] += count
    return RoughConfusionMatrix(tuple(tuple(row) for row in rows))
