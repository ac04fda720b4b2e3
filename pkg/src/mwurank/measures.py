"""Association measures over contingency tables.

Applicability: all 12 measures at n=2; ll, tmi, pmi, ps at n=3; ll at
n=4. Natural logarithm everywhere; every reported use is a ranking, which
is invariant under the log base, but LOG_BASE can be changed to match an
external reference's absolute scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .counts import ContingencyTable
from .errors import InconsistentTableError, MeasureDomainError, UsageError

# Base of all logarithms; None means natural log.
LOG_BASE: float | None = None


def _log(x: float) -> float:
    value = math.log(x)
    if LOG_BASE is not None:
        value /= math.log(LOG_BASE)
    return value


def _name(ct: ContingencyTable) -> str:
    return f"table(observed={ct.observed}, total={ct.total})"


def dice(ct: ContingencyTable) -> float:
    """2*n11 / (n1p + np1), in [0, 1]."""
    denom = ct.n1p + ct.np1
    if denom == 0:
        raise MeasureDomainError(f"dice: zero marginal sum for {_name(ct)}")
    return 2.0 * ct.n11 / denom


def jaccard(ct: ContingencyTable) -> float:
    """n11 / (n1p + np1 - n11), in [0, 1]."""
    denom = ct.n1p + ct.np1 - ct.n11
    if denom == 0:
        raise MeasureDomainError(f"jaccard: zero denominator for {_name(ct)}")
    return ct.n11 / denom


def pmi(ct: ContingencyTable) -> float:
    """log of observed joint over its independence expectation."""
    if ct.joint == 0 or any(s == 0 for s in ct.singles):
        raise MeasureDomainError(f"pmi: zero count for {_name(ct)}")
    return _log(ct.joint / ct.expected_joint)


def poisson_stirling(ct: ContingencyTable) -> float:
    """joint * (log(joint / expected_joint) - 1)."""
    if ct.joint == 0 or any(s == 0 for s in ct.singles):
        raise MeasureDomainError(f"ps: zero count for {_name(ct)}")
    return ct.joint * (_log(ct.joint / ct.expected_joint) - 1.0)


def log_likelihood(ct: ContingencyTable) -> float:
    """2 * sum over cells of obs*log(obs/exp), with 0*log(0) = 0."""
    acc = 0.0
    for obs, exp in zip(ct.observed, ct.expected):
        if obs == 0:
            continue
        if exp <= 0.0:
            raise InconsistentTableError(
                f"ll: observed {obs} in a cell with zero expectation "
                f"for {_name(ct)}")
        acc += obs * _log(obs / exp)
    return 2.0 * acc


def true_mutual_information(ct: ContingencyTable) -> float:
    """sum over cells of (obs/total)*log(obs/exp); equals ll/(2*total)."""
    return log_likelihood(ct) / (2.0 * ct.total)


def chi_squared(ct: ContingencyTable) -> float:
    """Pearson's chi-squared over the 2x2 table."""
    if any(exp <= 0.0 for exp in ct.expected):
        raise MeasureDomainError(f"x2: zero expected cell for {_name(ct)}")
    return sum((obs - exp) ** 2 / exp
               for obs, exp in zip(ct.observed, ct.expected))


def phi_coefficient(ct: ContingencyTable) -> float:
    """chi-squared scaled by the grand total (squared phi)."""
    return chi_squared(ct) / ct.npp


def tscore(ct: ContingencyTable) -> float:
    """(n11 - m11) / sqrt(n11)."""
    if ct.n11 == 0:
        raise MeasureDomainError(f"tscore: zero joint count for {_name(ct)}")
    return (ct.n11 - ct.expected_joint) / math.sqrt(ct.n11)


def _hypergeometric_log_pmf(k: int, n1p: int, np1: int, npp: int) -> float:
    def lncomb(n: int, r: int) -> float:
        return (math.lgamma(n + 1) - math.lgamma(r + 1)
                - math.lgamma(n - r + 1))

    return (lncomb(n1p, k) + lncomb(npp - n1p, np1 - k) - lncomb(npp, np1))


def _fisher_pmf(ct: ContingencyTable) -> tuple[int, int, list[float]]:
    """Hypergeometric pmf over the feasible k-range with fixed marginals,
    evaluated via log-gamma. Returns (k_min, k_max, probabilities)."""
    n1p, np1, npp = ct.n1p, ct.np1, ct.npp
    k_min = max(0, n1p + np1 - npp)
    k_max = min(n1p, np1)
    if not k_min <= ct.n11 <= k_max:
        raise InconsistentTableError(
            f"fisher: joint {ct.n11} outside feasible range "
            f"[{k_min}, {k_max}] for {_name(ct)}")
    pmf = [math.exp(_hypergeometric_log_pmf(k, n1p, np1, npp))
           for k in range(k_min, k_max + 1)]
    return k_min, k_max, pmf


# pmf values within this relative tolerance of p(n11) count as ties in the
# two-tailed sum; guards float equality.
FISHER_TIE_TOLERANCE = 1e-12


def fisher_left(ct: ContingencyTable) -> float:
    k_min, _, pmf = _fisher_pmf(ct)
    return math.fsum(pmf[: ct.n11 - k_min + 1])


def fisher_right(ct: ContingencyTable) -> float:
    k_min, _, pmf = _fisher_pmf(ct)
    return math.fsum(pmf[ct.n11 - k_min:])


def fisher_twotailed(ct: ContingencyTable) -> float:
    """Sum of all outcomes no more probable than the observed one."""
    k_min, _, pmf = _fisher_pmf(ct)
    p_obs = pmf[ct.n11 - k_min]
    cutoff = p_obs * (1.0 + FISHER_TIE_TOLERANCE)
    return math.fsum(p for p in pmf if p <= cutoff)


@dataclass(frozen=True)
class Measure:
    name: str
    func: Callable[[ContingencyTable], float]
    gram_sizes: tuple[int, ...]
    description: str


MEASURES: dict[str, Measure] = {
    m.name: m
    for m in (
        Measure("dice", dice, (2,), "Dice coefficient"),
        Measure("left", fisher_left, (2,), "Fisher's exact test, left-sided"),
        Measure("right", fisher_right, (2,), "Fisher's exact test, right-sided"),
        Measure("twotailed", fisher_twotailed, (2,),
                "Fisher's exact test, two-tailed"),
        Measure("jaccard", jaccard, (2,), "Jaccard coefficient"),
        Measure("ll", log_likelihood, (2, 3, 4), "Log-likelihood ratio"),
        Measure("tmi", true_mutual_information, (2, 3),
                "True mutual information"),
        Measure("pmi", pmi, (2, 3), "Pointwise mutual information"),
        Measure("phi", phi_coefficient, (2,), "Phi coefficient (squared)"),
        Measure("x2", chi_squared, (2,), "Pearson's chi-squared"),
        Measure("ps", poisson_stirling, (2, 3), "Poisson-Stirling measure"),
        Measure("tscore", tscore, (2,), "T-score"),
    )
}

ALIASES = {"mi": "tmi"}


def resolve_measure(name: str) -> Measure:
    canonical = ALIASES.get(name, name)
    if canonical not in MEASURES:
        raise UsageError(
            f"unknown measure {name!r}; choose from "
            f"{', '.join(sorted(MEASURES))}")
    return MEASURES[canonical]


def check_applicability(name: str, n: int) -> Measure:
    measure = resolve_measure(name)
    if n not in measure.gram_sizes:
        allowed = [m.name for m in MEASURES.values() if n in m.gram_sizes]
        raise UsageError(
            f"measure {measure.name!r} is not defined for {n}-grams; "
            f"{n}-gram measures are: {', '.join(allowed)}")
    return measure


def score(name: str, ct: ContingencyTable) -> float:
    return check_applicability(name, ct.n).func(ct)
