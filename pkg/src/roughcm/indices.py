"""Approximation-quality indices and confusion-matrix bounds.

System-side indices, computed from the partitions themselves, where n_j is
the size of decision class j and nl_j / nu_j are the sizes of its lower
and upper approximations:

    lower coverage   nl_j / n_j    share of the class certainly covered
    upper precision  n_j / nu_j    share of the possible region that is the class
    accuracy         nl_j / nu_j   product of the two
    gamma            (sum_j nl_j) / n   overall approximation quality

Confusion-side estimates, read off a k x k confusion matrix with entries
n_ij, row sums r_j and column sums c_j (so c_j = n_j for every rough
classifier):

    gamma_hat   (sum_j n_jj) / n, the success ratio
    alpha_hat_j n_jj / (r_j + c_j - n_jj)
    nl_star     n_jj
    nl_star2    n_jj - Ind(off-diagonal sum of row j)
    nu_star     r_j + c_j - n_jj
    nu_star2    nu_star + number of non-zero off-diagonal cells in column j
    nl_m        n_jj - max off-diagonal entry of row j        (row-maximal only)
    nu_m        n_jj + offdiag(row j) + 2 * offdiag(col j)    (row-maximal only)

where Ind(b) is 0 for b = 0 and 1 otherwise. Under the overlap rule the
estimates bracket the true approximation sizes per class:

    nl_j <= nl_star2 <= nl_star <= n_j <= nu_star <= nu_star2 <= nu_j

and for row-maximal classifiers additionally

    nl_j <= nl_m <= nl_star2        nl_star2 <= nu_m <= nu_j.

Every index is an exact rational (fractions.Fraction); decimal renderings
happen only in reports and are never the source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Partition, _require_same_universe, lower_approximation, upper_approximation
from .classifiers import ValidationReport
from .errors import DegenerateDecisionError, UndefinedClassError
from .matrices import RoughConfusionMatrix

__all__ = [
    "indicator",
    "ClassApproximation",
    "ApproximationSummary",
    "approximation_summary",
    "gamma_hat",
    "alpha_hat_per_class",
    "alpha_hat_overall",
    "alpha_from_gamma",
    "ClassBounds",
    "BoundsReport",
    "confusion_bounds",
]


def indicator(count: int) -> int:
    """0 for a zero count, 1 for anything else."""
    return 0 if count == 0 else 1


@dataclass(frozen=True)
class ClassApproximation:
    """Approximation sizes and quality indices of one decision class."""

    size: int
    lower_size: int
    upper_size: int
    lower_coverage: Fraction
    upper_precision: Fraction
    accuracy: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.lower_size <= self.size <= self.upper_size:
            raise ValueError("need 0 <= lower_size <= size <= upper_size")
        if self.size < 1:
            raise ValueError("decision classes are nonempty")
        if self.lower_coverage != Fraction(self.lower_size, self.size):
            raise ValueError("lower_coverage inconsistent with the sizes")
        if self.upper_precision != Fraction(self.size, self.upper_size):
            raise ValueError("upper_precision inconsistent with the sizes")
        if self.accuracy != Fraction(self.lower_size, self.upper_size):
            raise ValueError("accuracy inconsistent with the sizes")


@dataclass(frozen=True)
class ApproximationSummary:
    """Per-class approximation indices plus the overall quality gamma."""

    classes: tuple[ClassApproximation, ...]
    gamma: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))
        if len(self.classes) < 2:
            raise DegenerateDecisionError("at least two decision classes are required")
        total = sum(c.size for c in self.classes)
        expected = Fraction(sum(c.lower_size for c in self.classes), total)
        if self.gamma != expected:
            raise ValueError("gamma inconsistent with the per-class sizes")


def approximation_summary(
    granules: Partition, decisions: Partition
) -> ApproximationSummary:
    """Compute every per-class index and the overall quality gamma.

    gamma weights each class's lower coverage by its relative size, which
    collapses to (total lower-approximation mass) / n.
    """
    _require_same_universe(granules, decisions)
    if len(decisions.blocks) < 2:
        raise DegenerateDecisionError("at least two decision classes are required")
    per = []
    for cls in decisions.blocks:
        low = lower_approximation(granules, cls)
        upp = upper_approximation(granules, cls)
        n_j, nl, nu = len(cls), len(low), len(upp)
        per.append(
            ClassApproximation(
                size=n_j,
                lower_size=nl,
                upper_size=nu,
                lower_coverage=Fraction(nl, n_j),
                upper_precision=Fraction(n_j, nu),
                accuracy=Fraction(nl, nu),
            )
        )
    total = sum(c.size for c in per)
    gamma = Fraction(sum(c.lower_size for c in per), total)
    return ApproximationSummary(tuple(per), gamma)


def gamma_hat(cm: RoughConfusionMatrix) -> Fraction:
    """Diagonal mass over total: the success ratio read off the matrix."""
    return Fraction(sum(cm.diagonal), cm.total)


def alpha_hat_per_class(cm: RoughConfusionMatrix) -> tuple[Fraction, ...]:
    """Per-class accuracy estimate n_jj / (r_j + c_j - n_jj).

    Raises UndefinedClassError for a class that is never predicted and
    never occurs, where the quotient would be 0/0. Matrices built from a
    decision system cannot trigger this: their column sums are the class
    sizes, which are at least 1.
    """
    out = []
    for j in range(cm.k):
        denominator = cm.row_sums[j] + cm.col_sums[j] - cm.cells[j][j]
        if denominator == 0:
            raise UndefinedClassError(j + 1)
        out.append(Fraction(cm.cells[j][j], denominator))
    return tuple(out)


def alpha_hat_overall(cm: RoughConfusionMatrix) -> Fraction:
    """Aggregate accuracy estimate: total diagonal over total row-plus-column
    mass minus the diagonal. Equals alpha_from_gamma(gamma_hat(cm)) exactly."""
    diag = sum(cm.diagonal)
    denominator = sum(
        cm.row_sums[j] + cm.col_sums[j] - cm.cells[j][j] for j in range(cm.k)
    )
    return Fraction(diag, denominator)


def alpha_from_gamma(quality: Fraction | int) -> Fraction:
    """Map an overall quality g in [0, 1] to the aggregate accuracy g / (2 - g)."""
    g = Fraction(quality)
    if not 0 <= g <= 1:
        raise ValueError(f"quality must lie in [0, 1], got {g}")
    return g / (2 - g)


@dataclass(frozen=True)
class ClassBounds:
    """Confusion-side size estimators for one class; see the module docstring.

    nl_m and nu_m are populated only for row-maximal classifiers. clamped
    records that a raw estimator was negative and got clamped to zero,
    which can happen only when the overlap rule does not hold.
    """

    class_size: int
    nl_star: int
    nl_star2: int
    nu_star: int
    nu_star2: int
    nl_m: int | None
    nu_m: int | None
    clamped: bool

    def __post_init__(self) -> None:
        values = [self.class_size, self.nl_star, self.nl_star2, self.nu_star, self.nu_star2]
        values += [v for v in (self.nl_m, self.nu_m) if v is not None]
        if any(v < 0 for v in values):
            raise ValueError("estimators are clamped at zero, negatives are invalid")


@dataclass(frozen=True)
class BoundsReport:
    """Per-class estimator values plus the flags that scope their meaning."""

    classes: tuple[ClassBounds, ...]
    rule_validated: bool
    mrc_classifier: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))
        if not self.classes:
            raise ValueError("a bounds report needs at least one class")
        for cb in self.classes:
            if self.mrc_classifier:
                if cb.nl_m is None or cb.nu_m is None:
                    raise ValueError("row-maximal estimators missing")
            elif cb.nl_m is not None or cb.nu_m is not None:
                raise ValueError("row-maximal estimators set without the flag")
            if self.rule_validated:
                chain = (cb.nl_star2, cb.nl_star, cb.class_size, cb.nu_star, cb.nu_star2)
                if any(a > b for a, b in zip(chain, chain[1:])):
                    raise ValueError("estimator chain violated under the overlap rule")
                if self.mrc_classifier and not cb.nl_m <= cb.nl_star2 <= cb.nu_m:
                    raise ValueError("row-maximal estimator chain violated")


def confusion_bounds(
    cm: RoughConfusionMatrix, validation: ValidationReport, is_mrc: bool
) -> BoundsReport:
    """Per-class lower/upper approximation size estimators from the matrix.

    The sharper nl_m / nu_m estimators are computed only when `is_mrc`
    says the classifier is row-maximal. Negative raw values (possible only
    without the overlap rule) are clamped to zero and flagged per class.
    """
    rows, k = cm.cells, cm.k
    row_sums, col_sums = cm.row_sums, cm.col_sums
    classes = []
    for j in range(k):
        diag = rows[j][j]
        row_off = row_sums[j] - diag
        col_off = col_sums[j] - diag
        nl_star = diag
        raw_star2 = diag - indicator(row_off)
        nu_star = diag + row_off + col_off
        nu_star2 = nu_star + sum(indicator(rows[i][j]) for i in range(k) if i != j)
        clamped = raw_star2 < 0
        nl_star2 = max(0, raw_star2)
        nl_m = nu_m = None
        if is_mrc:
            raw_m = diag - max(rows[j][t] for t in range(k) if t != j)
            clamped = clamped or raw_m < 0
            nl_m = max(0, raw_m)
            nu_m = diag + row_off + 2 * col_off
        classes.append(
            ClassBounds(
                class_size=col_sums[j],
                nl_star=nl_star,
                nl_star2=nl_star2,
                nu_star=nu_star,
                nu_star2=nu_star2,
                nl_m=nl_m,
                nu_m=nu_m,
                clamped=clamped,
            )
        )
    return BoundsReport(tuple(classes), validation.satisfies_rule, is_mrc)
