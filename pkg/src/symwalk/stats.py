"""Descriptive statistics, OLS regression, histogram/QQ data, and the
exhaustive small-group oracle for mod-p equidistribution checks.

Quantiles are nearest-rank (no interpolation) so summaries are exactly
reproducible.  The oracle enumerates the full finite group by brute
force; at the group orders involved (<= 720 for Sp(4, F_2)) clarity
beats cleverness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

from .intmat import NotPrimeError, is_prime

QUANTILE_LEVELS = (1, 5, 25, 50, 75, 95, 99)


@dataclass(frozen=True)
class StatSummary:
    count: int
    mean: float
    variance: float
    min: float
    max: float
    quantiles: dict


def summarize(samples) -> StatSummary:
    """Two-pass mean/variance plus nearest-rank quantiles."""
    xs = sorted(float(x) for x in samples)
    n = len(xs)
    if n == 0:
        raise ValueError("empty input")
    mean = sum(xs) / n
    var = sum((x - mean) ** 2 for x in xs) / (n - 1) if n > 1 else 0.0
    quantiles = {}
    for q in QUANTILE_LEVELS:
        rank = max(1, -(-q * n // 100))        # ceil(q*n/100), at least 1
        quantiles[q] = xs[rank - 1]
    return StatSummary(n, mean, var, xs[0], xs[-1], quantiles)


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float


def linear_fit(x, y) -> LinearFit:
    """Ordinary least squares y = intercept + slope * x."""
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    n = len(xs)
    if n != len(ys) or n < 2:
        raise ValueError("need two equal-length samples of size >= 2")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((v - mx) ** 2 for v in xs)
    if sxx == 0:
        raise ValueError("x is constant")
    sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    syy = sum((v - my) ** 2 for v in ys)
    slope = sxy / sxx
    r2 = 1.0 if syy == 0 else (sxy * sxy) / (sxx * syy)
    return LinearFit(slope, my - slope * mx, r2)


def histogram(samples, bin_count: int):
    """Equal-width bins over [min, max], rightmost bin closed.
    Returns a list of (bin lower edge, count)."""
    xs = [float(x) for x in samples]
    if not xs:
        raise ValueError("empty input")
    if bin_count < 1:
        raise ValueError("need at least one bin")
    lo, hi = min(xs), max(xs)
    width = (hi - lo) / bin_count
    counts = [0] * bin_count
    for x in xs:
        if width == 0:
            idx = 0
        else:
            idx = min(int((x - lo) / width), bin_count - 1)
        counts[idx] += 1
    return [(lo + i * width, counts[i]) for i in range(bin_count)]


def qq_points(samples):
    """Sorted standardized samples vs normal quantiles at (i - 0.5)/n."""
    xs = sorted(float(x) for x in samples)
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two samples")
    mean = sum(xs) / n
    var = sum((x - mean) ** 2 for x in xs) / (n - 1)
    if var == 0:
        raise ValueError("zero variance")
    sd = var ** 0.5
    nd = NormalDist()
    return [(nd.inv_cdf((i + 0.5) / n), (x - mean) / sd)
            for i, x in enumerate(xs)]


@dataclass(frozen=True)
class RankTable:
    """Empirical vs predicted distribution of mod-p homology ranks."""

    p: int
    frequencies: dict
    predicted: dict

    def total_variation(self) -> float:
        keys = set(self.frequencies) | set(self.predicted)
        return 0.5 * sum(abs(float(self.frequencies.get(k, 0))
                             - float(self.predicted.get(k, 0)))
                         for k in keys)


def empirical_rank_table(p: int, ranks, predicted=None) -> RankTable:
    freq = {}
    total = len(ranks)
    for r in ranks:
        freq[r] = freq.get(r, 0) + 1
    freq = {r: c / total for r, c in sorted(freq.items())}
    return RankTable(p, freq, predicted or {})


# --- exhaustive finite-group oracle ----------------------------------------

def _sl2_elements(p: int):
    """All of SL(2, F_p), solving for the fourth entry."""
    for a in range(p):
        for b in range(p):
            for c in range(p):
                if a != 0:
                    d = ((1 + b * c) * pow(a, -1, p)) % p
                    yield (a, b, c, d)
                else:
                    # -bc = 1 mod p
                    if b != 0 and (-b * c) % p == 1:
                        for d in range(p):
                            yield (a, b, c, d)


def _rank2x2(a, b, c, d, p):
    if a % p == 0 and b % p == 0 and c % p == 0 and d % p == 0:
        return 0
    if (a * d - b * c) % p == 0:
        return 1
    return 2


def _sp4_f2_elements():
    """All 720 elements of Sp(4, F_2), by brute force over F_2^16."""
    j = ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0))
    for bits in range(1 << 16):
        m = tuple(tuple((bits >> (4 * i + k)) & 1 for k in range(4))
                  for i in range(4))
        # check m^T J m == J over F_2
        ok = True
        for r in range(4):
            for c in range(4):
                v = sum(m[i][r] * j[i][k] * m[k][c]
                        for i in range(4) for k in range(4)) % 2
                if v != j[r][c]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield m


def _nullity_mod2(m):
    rows = [list(r) for r in m]
    n = len(rows)
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(n):
            if i != rank and rows[i][col]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return n - rank


def exhaustive_sp2_oracle(p: int, g: int) -> dict:
    """Exact distribution of 1 + dim ker(M - I) over the full group
    Sp(2g, F_p); exact rational probabilities.

    Supported: g = 1 with small p (SL(2, F_p) = Sp(2, F_p)), and the
    g = 2, p = 2 case (Sp(4, F_2), order 720).
    """
    if not is_prime(p):
        raise NotPrimeError("%d is not prime" % p)
    counts = {}
    if g == 1:
        order = p * (p * p - 1)
        if order > 10 ** 6:
            raise ValueError("group too large (order %d)" % order)
        total = 0
        for a, b, c, d in _sl2_elements(p):
            nullity = 2 - _rank2x2(a - 1, b, c, d - 1, p)
            counts[1 + nullity] = counts.get(1 + nullity, 0) + 1
            total += 1
        assert total == order
    elif g == 2 and p == 2:
        total = 0
        for m in _sp4_f2_elements():
            mi = tuple(tuple((m[i][k] - (1 if i == k else 0)) % 2
                             for k in range(4)) for i in range(4))
            nullity = _nullity_mod2(mi)
            counts[1 + nullity] = counts.get(1 + nullity, 0) + 1
            total += 1
        assert total == 720
    else:
        raise ValueError("unsupported (p, g) = (%d, %d)" % (p, g))
    return {r: Fraction(c, total) for r, c in sorted(counts.items())}
