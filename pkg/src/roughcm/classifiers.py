"""Granule-level classifiers, the overlap rule, and the maximal row classifier.

A rough classifier is a total map from granules to decision classes. It
cannot distinguish objects inside a granule, so it predicts one class for
the whole block. The overlap rule demands that every granule intersect the
class it is mapped to, i.e. at least one member of the granule is
classified correctly. The maximal row classifier picks, for each granule,
a class with the highest frequency count; it satisfies the overlap rule by
construction and maximizes the success ratio among all rough classifiers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ClassifierFileError, ShapeMismatchError
from .matrices import GranuleFrequencyMatrix, RoughConfusionMatrix

__all__ = [
    "TieBreak",
    "RoughClassifier",
    "ValidationReport",
    "validate_overlap",
    "maximal_row_classifier",
    "is_row_maximal",
    "success_ratio",
    "classifier_to_text",
    "classifier_from_text",
]


class TieBreak(Enum):
    """How the maximal row classifier resolves ties between equal counts."""

    LOWEST = "lowest"
    HIGHEST = "highest"
    RANDOM = "random"


@dataclass(frozen=True)
class RoughClassifier:
    """Total assignment of granules to decision classes, both 1-based.

    `assignment[i]` is the class index chosen for granule i + 1; granules
    are numbered in the canonical order of the partition the classifier
    was built against, which is also the row order of its frequency matrix.
    """

    assignment: tuple[int, ...]
    n_classes: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if not self.assignment:
            raise ValueError("a classifier needs at least one granule")
        if self.n_classes < 1:
            raise ValueError("n_classes must be positive")
        bad = [cls for cls in self.assignment if not 1 <= cls <= self.n_classes]
        if bad:
            raise ValueError(
                f"class indices out of range 1..{self.n_classes}: {sorted(set(bad))}"
            )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the overlap-rule check; violations list 1-based granules."""

    satisfies_rule: bool
    violations: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "violations", tuple(self.violations))
        if self.satisfies_rule != (not self.violations):
            raise ValueError("satisfies_rule must mirror the violation list")


def _require_shapes(f: RoughClassifier, gfm: GranuleFrequencyMatrix) -> None:
    if len(f.assignment) != gfm.m:
        raise ShapeMismatchError(
            f"classifier assigns {len(f.assignment)} granules, matrix has {gfm.m}"
        )
    if f.n_classes != gfm.k:
        raise ShapeMismatchError(
            f"classifier uses {f.n_classes} classes, matrix has {gfm.k}"
        )


def validate_overlap(
    f: RoughClassifier, gfm: GranuleFrequencyMatrix
) -> ValidationReport:
    """Check that every granule meets the class it is mapped to.

    Granule i violates the rule when cell (i, f(i)) of the frequency
    matrix is zero: no member of the granule belongs to the predicted
    class, so the prediction is wrong for every single object in it.
    """
    _require_shapes(f, gfm)
    violations = tuple(
        i
        for i, cls in enumerate(f.assignment, start=1)
        if gfm.cells[i - 1][cls - 1] == 0
    )
    return ValidationReport(satisfies_rule=not violations, violations=violations)


def maximal_row_classifier(
    gfm: GranuleFrequencyMatrix,
    tie_break: TieBreak = TieBreak.LOWEST,
    seed: int = 0,
) -> RoughClassifier:
    """Assign each granule a class with the maximal row count.

    Ties are resolved by `tie_break`: the lowest tied class index, the
    highest, or a seeded uniform draw. The random policy consumes one draw
    per row from random.Random(seed), so a (matrix, policy, seed) triple
    always produces the same classifier.
    """
    rng = random.Random(seed)
    assignment = []
    for row in gfm.cells:
        top = max(row)
        candidates = [j for j, count in enumerate(row, start=1) if count == top]
        if tie_break is TieBreak.LOWEST:
            assignment.append(candidates[0])
        elif tie_break is TieBreak.HIGHEST:
            assignment.append(candidates[-1])
        else:
            assignment.append(rng.choice(candidates))
    return RoughClassifier(tuple(assignment), gfm.k)


def is_row_maximal(f: RoughClassifier, gfm: GranuleFrequencyMatrix) -> bool:
    """True iff `f` picks a maximal cell in every frequency row.

    Any classifier with this property behaves like a maximal row
    classifier under some tie-break, which is exactly the precondition of
    the sharper confusion-matrix bounds.
    """
    _require_shapes(f, gfm)
    return all(
        row[cls - 1] == max(row) for row, cls in zip(gfm.cells, f.assignment)
    )


def success_ratio(cm: RoughConfusionMatrix) -> Fraction:
    """Fraction of objects whose predicted class equals their true class."""
    return Fraction(sum(cm.diagonal), cm.total)


def classifier_to_text(f: RoughClassifier) -> str:
    """Render the mapping-file form: one `granule_index class_index` per line."""
    lines = ["# granule_index class_index"]
    lines += [f"{i} {cls}" for i, cls in enumerate(f.assignment, start=1)]
    return "\n".join(lines) + "\n"


def classifier_from_text(text: str, n_granules: int, n_classes: int) -> RoughClassifier:
    """Parse a mapping file; `#` starts a comment, blank lines are ignored.

    The file must assign every granule 1..n_granules exactly once to a
    class in 1..n_classes.
    """
    seen: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ClassifierFileError(
                f"line {lineno}: expected two fields, got {len(parts)}"
            )
        try:
            granule, cls = int(parts[0]), int(parts[1])
        except ValueError:
            raise ClassifierFileError(
                f"line {lineno}: indices must be integers"
            ) from None
        if not 1 <= granule <= n_granules:
            raise ClassifierFileError(
                f"line {lineno}: granule index {granule} out of range 1..{n_granules}"
            )
        if not 1 <= cls <= n_classes:
            raise ClassifierFileError(
                f"line {lineno}: class index {cls} out of range 1..{n_classes}"
            )
        if granule in seen:
            raise ClassifierFileError(f"line {lineno}: granule {granule} assigned twice")
        seen[granule] = cls
    missing = [i for i in range(1, n_granules + 1) if i not in seen]
    if missing:
        listed = ", ".join(map(str, missing))
        raise ClassifierFileError(f"no assignment for granule(s) {listed}")
    return RoughClassifier(
        tuple(seen[i] for i in range(1, n_granules + 1)), n_classes
    )
