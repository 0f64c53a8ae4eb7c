"""Exact characteristic polynomials and diagnostics built on them.

Characteristic polynomials are computed by the Faddeev-LeVerrier
recursion; every division in it is exact over the integers, so the
result is exact.  Irreducibility over Q is certified by finding a prime
modulo which the polynomial is irreducible; reducibility by a rational
root or an exact low-degree factorization.  Anything else is honestly
"undetermined".
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .intmat import IntMatrix, det, identity, mat_mul


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant coefficient first."""

    coefficients: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coefficients)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            cs = (0,)
        object.__setattr__(self, "coefficients", cs)

    @property
    def degree(self) -> int:
        if self.coefficients == (0,):
            return 0
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coefficients:
            g = gcd(g, c)
        return g


def char_poly(m: IntMatrix) -> IntPolynomial:
    """det(xI - m) via Faddeev-LeVerrier; all divisions are exact."""
    n = m.dim
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    a = identity(n)
    for k in range(1, n + 1):
        a = mat_mul(m, a)
        tr = sum(a.rows[i][i] for i in range(n))
        assert tr % k == 0, "Faddeev-LeVerrier division must be exact"
        c = -tr // k
        coeffs[n - k] = c
        if k < n:
            a = IntMatrix(tuple(
                tuple(a.rows[i][j] + (c if i == j else 0) for j in range(n))
                for i in range(n)))
    return IntPolynomial(tuple(coeffs))


def has_eigenvalue_one(m: IntMatrix) -> bool:
    return det(m - identity(m.dim)) == 0


# --- polynomial arithmetic over F_p ---------------------------------------

def _pmod(f, p):
    f = [c % p for c in f]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, p)


def _pdivmod(a, b, p):
    a = list(a)
    db, dl = len(b) - 1, b[-1]
    inv = pow(dl, -1, p)
    q = [0] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - db
        c = (a[-1] * inv) % p
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    return _pmod(q, p), _pmod(a, p)


def _pgcd(a, b, p):
    a, b = _pmod(a, p), _pmod(b, p)
    while b != [0]:
        a, b = b, _pdivmod(a, b, p)[1]
    if a[-1] != 1 and a != [0]:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pdivmod(base, f, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), f, p)[1]
        base = _pdivmod(_pmul(base, base, p), f, p)[1]
        e >>= 1
    return result


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _irreducible_mod_p(f, p) -> bool:
    """Rabin's test: f (monic over F_p, degree n) is irreducible iff
    x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for primes q | n."""
    n = len(f) - 1
    if n <= 0:
        return False
    x = [0, 1]
    for q in _prime_factors(n):
        h = _ppowmod(x, p ** (n // q), f, p)
        diff = _pmod([(a - b) % p for a, b in
                      zip(h + [0] * 2, x + [0] * len(h))], p)
        if _pgcd(diff, f, p) != [1]:
            return False
    h = _ppowmod(x, p ** n, f, p)
    diff = _pmod([(a - b) % p for a, b in
                  zip(h + [0] * 2, x + [0] * len(h))], p)
    return diff == [0]


def _first_primes(count: int):
    out = []
    n = 2
    while len(out) < count:
        if all(n % q for q in out):
            out.append(n)
        n += 1
    return out


# --- certificates ----------------------------------------------------------

@dataclass(frozen=True)
class IrreducibilityCertificate:
    status: str                      # "irreducible" | "reducible" | "undetermined"
    witness_prime: int | None = None
    factor: IntPolynomial | None = None


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _rational_root_factor(f: IntPolynomial) -> IntPolynomial | None:
    """A linear factor q*x - p from a rational root p/q, if one exists."""
    cs = f.coefficients
    c0, lead = cs[0], cs[-1]
    if c0 == 0:
        return IntPolynomial((0, 1))
    for q in _divisors(lead):
        for p_abs in _divisors(c0):
            for p_ in (p_abs, -p_abs):
                if gcd(p_, q) != 1:
                    continue
                # evaluate f(p/q) * q^deg exactly
                deg = len(cs) - 1
                acc = sum(c * p_ ** k * q ** (deg - k) for k, c in enumerate(cs))
                if acc == 0:
                    return IntPolynomial((-p_, q))
    return None


def _quartic_quadratic_factor(f: IntPolynomial) -> IntPolynomial | None:
    """Search an exact quadratic factor of a degree-4 integer polynomial."""
    cs = f.coefficients
    f0, f1, f2, f3, f4 = cs
    for a in _divisors(f4):
        d_ = f4 // a if f4 % a == 0 else None
        if d_ is None:
            continue
        for c in _divisors(f0):
            for c_s in (c, -c):
                if c_s == 0:
                    continue
                if f0 % c_s != 0:
                    continue
                g_ = f0 // c_s
                # unknowns b, e:  a e + b d = f3;  b g + c e = f1;
                # check:          a g + b e + c d = f2
                # solve the 2x2 linear system for (b, e)
                det2 = a * g_ - c_s * d_
                for b in _linear_solutions(a, d_, f3, c_s, g_, f1, det2):
                    e = None
                    if a != 0:
                        num = f3 - b * d_
                        if num % a == 0:
                            e = num // a
                    if e is None:
                        continue
                    if b * g_ + c_s * e != f1:
                        continue
                    if a * g_ + b * e + c_s * d_ != f2:
                        continue
                    return IntPolynomial((c_s, b, a))
    return None


def _linear_solutions(a, d_, f3, c_s, g_, f1, det2):
    """Candidate integer b solving a*e + b*d = f3, b*g + c*e = f1."""
    # eliminate e:  e = (f3 - b d)/a  ->  b (a g - c d) = a f1 - c f3
    if det2 != 0:
        num = a * f1 - c_s * f3
        if num % det2 == 0:
            yield num // det2
        return
    # degenerate system: fall back to a bounded scan over divisor-sized b
    bound = max(abs(f3), abs(f1), 1)
    for b in range(-bound, bound + 1):
        yield b


def irreducibility_certificate(f: IntPolynomial, prime_budget: int = 25) -> IrreducibilityCertificate:
    """Three-way irreducibility check over Q for a primitive polynomial."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree < 1:
        raise ValueError("polynomial must be nonconstant")
    root_factor = _rational_root_factor(f)
    if root_factor is not None:
        return IrreducibilityCertificate("reducible", factor=root_factor)
    if f.degree == 4:
        quad = _quartic_quadratic_factor(f)
        if quad is not None:
            return IrreducibilityCertificate("reducible", factor=quad)
    lead = f.coefficients[-1]
    for p in _first_primes(prime_budget):
        if lead % p == 0:
            continue
        inv = pow(lead % p, -1, p)
        monic = [(c * inv) % p for c in f.coefficients]
        if _irreducible_mod_p(monic, p):
            return IrreducibilityCertificate("irreducible", witness_prime=p)
    if f.degree in (2, 3):
        # no rational root => irreducible over Q for degrees 2 and 3,
        # even without a modular witness
        return IrreducibilityCertificate("irreducible")
    return IrreducibilityCertificate("undetermined")


def alexander_second_derivative(f: IntPolynomial) -> int:
    """f''(1), exactly: sum over k >= 2 of k(k-1) c_k."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    return sum(k * (k - 1) * c for k, c in enumerate(f.coefficients) if k >= 2)
