"""Generator families for Sp(2g, Z) and SL(n, Z).

Three named families:

* ``humphries``: homology images of the Humphries generating set of the
  mapping class group of a genus-g surface (2g+1 matrices in Sp(2g, Z)).
* ``hua-reiner``: the two-element generating set of SL(n, Z).
* ``stanek``: the two/three-element generating set of Sp(2n, Z).

Indexing below follows the 1-based conventions of the original listings
and is converted to 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intmat import (IntMatrix, SymplecticForm, det, identity, inverse,
                     is_symplectic, mat_mul)

POSITIVE = "positive-only"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class GeneratorFamily:
    """An ordered, deduplicated list of integer matrix generators.

    ``group`` is a display tag like ``Sp(4)`` or ``SL(3)``.  ``form`` records
    which multiple of the standard symplectic form (if any) every member
    preserves: "J", "-J" (members each preserve J or -J), or None.
    """

    name: str
    group: str
    matrices: tuple
    mode: str = POSITIVE
    form: str | None = field(default=None)

    def __post_init__(self):
        if not self.matrices:
            raise ValueError("a generator family must be nonempty")
        dim = self.matrices[0].dim
        for m in self.matrices:
            if m.dim != dim:
                raise ValueError("all generators must share one dimension")
            if det(m) != 1:
                raise ValueError("generator has determinant != 1")
        object.__setattr__(self, "form", _discover_form(self.matrices))

    @property
    def dim(self) -> int:
        return self.matrices[0].dim

    def __len__(self) -> int:
        return len(self.matrices)


def _discover_form(matrices) -> str | None:
    """Check empirically whether every generator preserves the standard
    form J up to sign.  Returns "J", "-J", or None."""
    dim = matrices[0].dim
    if dim % 2 != 0:
        return None
    j = SymplecticForm(dim // 2).matrix
    neg_j = -j
    all_plus = True
    for m in matrices:
        mjm = mat_mul(mat_mul(m.transpose(), j), m)
        if mjm == j:
            continue
        if mjm == neg_j:
            all_plus = False
            continue
        return None
    return "J" if all_plus else "-J"


def _unit(n: int, i: int, j: int, value: int = 1) -> IntMatrix:
    """Identity plus ``value`` at 1-based position (i, j)."""
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][j - 1] += value
    return IntMatrix(tuple(tuple(r) for r in rows))


def birman_y(g: int, i: int) -> IntMatrix:
    return _unit(2 * g, i, g + i, -1)


def birman_u(g: int, i: int) -> IntMatrix:
    return _unit(2 * g, g + i, i, 1)


def birman_z(g: int, i: int) -> IntMatrix:
    rows = [[1 if r == c else 0 for c in range(2 * g)] for r in range(2 * g)]
    rows[i - 1][g + i - 1] = -1
    rows[i][g + i] = -1
    rows[i - 1][g + i] = 1
    rows[i][g + i - 1] = 1
    return IntMatrix(tuple(tuple(r) for r in rows))


def humphries_symplectic(g: int) -> GeneratorFamily:
    """Humphries generator images in Sp(2g, Z); 2g+1 distinct matrices.

    g = 1 is rejected: the construction uses birman_y(g, 2), which only
    exists for g >= 2.
    """
    if g < 2:
        raise ValueError("humphries family needs genus >= 2")
    seen = []
    for m in ([birman_u(g, i) for i in range(1, g + 1)]
              + [birman_z(g, i) for i in range(1, g)]
              + [birman_y(g, 1), birman_y(g, 2)]):
        if m not in seen:
            seen.append(m)
    return GeneratorFamily("humphries", "Sp(%d)" % (2 * g), tuple(seen))


def hru2(n: int) -> IntMatrix:
    return _unit(n, 1, 2, 1)


def hru5(n: int) -> IntMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    rows[0][n - 1] = (-1) ** (n - 1)
    return IntMatrix(tuple(tuple(r) for r in rows))


def hua_reiner(n: int) -> GeneratorFamily:
    """The two Hua-Reiner generators of SL(n, Z)."""
    if n < 2:
        raise ValueError("hua-reiner family needs n >= 2")
    return GeneratorFamily("hua-reiner", "SL(%d)" % n, (hru2(n), hru5(n)))


def stanek_r21(n: int) -> IntMatrix:
    rows = [[1 if r == c else 0 for c in range(2 * n)] for r in range(2 * n)]
    rows[1][0] = 1
    rows[n][n + 1] = -1
    return IntMatrix(tuple(tuple(r) for r in rows))


def stanek_tk(n: int, k: int) -> IntMatrix:
    return _unit(2 * n, n + k, k, 1)


def stanek_dd(n: int) -> IntMatrix:
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(1, 2 * n + 1):
        j = i + 1
        if j - i == 1 and (i < n or (n + 1 <= i < 2 * n)):
            rows[i - 1][j - 1] = 1
    rows[n - 1][n] = -1
    rows[2 * n - 1][0] = 1
    return IntMatrix(tuple(tuple(r) for r in rows))


def stanek(n: int) -> GeneratorFamily:
    """Stanek generators of Sp(2n, Z); n = 1 falls back to Hua-Reiner SL(2)."""
    if n < 1:
        raise ValueError("stanek family needs n >= 1")
    if n == 1:
        fam = hua_reiner(2)
        return GeneratorFamily("stanek", "Sp(2)", fam.matrices)
    if n in (2, 3):
        mats = (stanek_r21(n), stanek_tk(n, 1), stanek_dd(n))
    else:
        mats = (mat_mul(stanek_r21(n), stanek_tk(n, 1)), stanek_dd(n))
    return GeneratorFamily("stanek", "Sp(%d)" % (2 * n), mats)


def custom_family(matrices, group: str = "custom") -> GeneratorFamily:
    return GeneratorFamily("custom", group, tuple(matrices))


def symmetric_closure(fam: GeneratorFamily) -> GeneratorFamily:
    """Extend a family by the exact inverses of its members, deduplicated."""
    mats = list(fam.matrices)
    for m in fam.matrices:
        d = det(m)
        if d not in (1, -1):
            raise ValueError("generator with det %d has no integer inverse" % d)
        inv = inverse(m)
        if inv not in mats:
            mats.append(inv)
    return GeneratorFamily(fam.name, fam.group, tuple(mats), mode=SYMMETRIC)


def make_family(name: str, param: int) -> GeneratorFamily:
    """Resolve a family by name and its size parameter (genus or n)."""
    if name == "humphries":
        return humphries_symplectic(param)
    if name in ("hua-reiner", "hua_reiner"):
        return hua_reiner(param)
    if name == "stanek":
        return stanek(param)
    raise ValueError("unknown family %r" % name)
