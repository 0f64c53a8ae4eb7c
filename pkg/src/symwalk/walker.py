"""Seeded random words over a generator family and their exact products.

Reproducibility contract: every sample of a batch gets its own seed,
derived by mixing (master_seed, word_length, sample_index) through a
splitmix64-style hash, so the batch is embarrassingly parallel and the
output stream is a pure function of the config.

Products exploit the shape of the generators: almost all of them are
either "identity plus a few off-diagonal units" (a transvection-like
column update, O(dim) per step) or signed permutations (a column shuffle).
Falling back to dense multiplication is always correct, just slower.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .generators import (POSITIVE, SYMMETRIC, GeneratorFamily, make_family,
                         symmetric_closure)
from .intmat import IntMatrix, mat_mul

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def derive_seed(master_seed: int, length: int, index: int) -> int:
    """Per-sample seed: hash of (master_seed, length, index)."""
    s = splitmix64(master_seed & _MASK)
    s = splitmix64(s ^ ((length & _MASK) * 0xD1342543DE82EF95 & _MASK))
    s = splitmix64(s ^ ((index & _MASK) * 0xDABA0B6EB09322E3 & _MASK))
    return s


@dataclass(frozen=True)
class Word:
    """A sequence of generator indices over a family."""

    family: GeneratorFamily
    letters: tuple

    def __post_init__(self):
        k = len(self.family)
        for i in self.letters:
            if not 0 <= i < k:
                raise ValueError("letter %d out of range for family of %d" % (i, k))

    @property
    def length(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class WalkSample:
    word: Word
    product: IntMatrix
    seed: int


@dataclass(frozen=True)
class BatchConfig:
    """One experiment batch: family spec, a progression of word lengths,
    samples per length, and the master seed."""

    family_name: str
    family_param: int
    lengths: tuple          # (start, end, step), inclusive endpoints
    samples_per_length: int
    master_seed: int
    mode: str = POSITIVE

    def __post_init__(self):
        start, end, step = self.lengths
        if start < 1 or step < 1 or self.samples_per_length < 1:
            raise ValueError("lengths must start >= 1, step >= 1, samples >= 1")
        if self.mode not in (POSITIVE, SYMMETRIC):
            raise ValueError("unknown mode %r" % self.mode)

    def length_values(self):
        start, end, step = self.lengths
        return list(range(start, end + 1, step))

    def resolve_family(self) -> GeneratorFamily:
        fam = make_family(self.family_name, self.family_param)
        if self.mode == SYMMETRIC:
            fam = symmetric_closure(fam)
        return fam


def sample_word(family: GeneratorFamily, length: int, seed: int) -> Word:
    """Uniform i.i.d. letters over the family, deterministic in the seed."""
    if length < 1:
        raise ValueError("word length must be >= 1")
    k = len(family)
    rng = random.Random(seed)
    return Word(family, tuple(rng.randrange(k) for _ in range(length)))


def _classify(m: IntMatrix):
    """Classify a generator for the fast product path.

    Returns ("elem", entries) for identity + sparse off-diagonal units,
    ("perm", mapping) for signed permutations (mapping[j] = (src, sign):
    column j of P*Q is sign * column src of P), or ("dense", m).
    """
    n = m.dim
    off = [(i, j, m.rows[i][j])
           for i in range(n) for j in range(n)
           if i != j and m.rows[i][j] != 0]
    if all(m.rows[i][i] == 1 for i in range(n)) and len(off) <= n:
        return ("elem", tuple(off))
    # signed permutation: exactly one nonzero per row and column, each +-1
    mapping = [None] * n
    ok = True
    for i in range(n):
        nz = [(j, m.rows[i][j]) for j in range(n) if m.rows[i][j] != 0]
        if len(nz) != 1 or nz[0][1] not in (1, -1) or mapping[nz[0][0]] is not None:
            ok = False
            break
        mapping[nz[0][0]] = (i, nz[0][1])
    if ok and all(x is not None for x in mapping):
        return ("perm", tuple(mapping))
    return ("dense", m)


_CLASSIFY_CACHE = {}


def _classified(family: GeneratorFamily):
    key = id(family)
    cached = _CLASSIFY_CACHE.get(key)
    if cached is None or cached[0] is not family:
        cached = (family, [_classify(m) for m in family.matrices])
        _CLASSIFY_CACHE[key] = cached
    return cached[1]


def word_product(word: Word) -> IntMatrix:
    """Exact left-to-right product of the lettered generators."""
    fam = word.family
    kinds = _classified(fam)
    n = fam.dim
    rows = [list(r) for r in fam.matrices[word.letters[0]].rows]
    for letter in word.letters[1:]:
        kind, data = kinds[letter]
        if kind == "elem":
            for row in rows:
                updates = [(j, row[i] * c) for i, j, c in data if row[i]]
                for j, d in updates:
                    row[j] += d
        elif kind == "perm":
            for r in range(n):
                row = rows[r]
                rows[r] = [row[src] if sign == 1 else -row[src]
                           for src, sign in data]
        else:
            prod = mat_mul(IntMatrix(tuple(tuple(r) for r in rows)), data)
            rows = prod.to_lists()
    return IntMatrix(tuple(tuple(r) for r in rows))


def make_sample(family: GeneratorFamily, length: int, seed: int) -> WalkSample:
    word = sample_word(family, length, seed)
    return WalkSample(word, word_product(word), seed)


class BatchError(RuntimeError):
    """A per-sample callback failed; carries the failing (length, index)."""

    def __init__(self, length, index, cause):
        super().__init__("batch sample (length=%d, index=%d) failed: %s"
                         % (length, index, cause))
        self.length = length
        self.index = index
        self.cause = cause


def _run_one(args):
    family, length, index, seed, per_sample = args
    sample = make_sample(family, length, seed)
    return per_sample(sample)


def run_batch(config: BatchConfig, per_sample, threads: int = 1):
    """Yield per_sample(WalkSample) records in deterministic (length, index)
    order.  With threads > 1 the samples are computed by a process pool
    (per_sample must then be picklable); the emission order is unchanged.
    """
    family = config.resolve_family()
    tasks = [(family, length, j, derive_seed(config.master_seed, length, j),
              per_sample)
             for length in config.length_values()
             for j in range(config.samples_per_length)]
    if threads <= 1:
        for family_, length, j, seed, cb in tasks:
            try:
                yield _run_one((family_, length, j, seed, cb))
            except Exception as exc:
                raise BatchError(length, j, exc) from exc
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunk = max(1, len(tasks) // (8 * threads))
            results = iter(pool.map(_run_one, tasks, chunksize=chunk))
            for family_, length, j, seed, cb in tasks:
                try:
                    yield next(results)
                except Exception as exc:
                    raise BatchError(length, j, exc) from exc
