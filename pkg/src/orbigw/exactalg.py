"""Exact arithmetic: rationals, cyclotomic numbers, Puiseux polynomials and
truncated power series in one or two formal variables.

Rationals are ``gmpy2.mpq``.  A :class:`CycRational` lives in Q(zeta_N) and is
stored by its coordinates in the power basis ``1, zeta, ..., zeta^(phi(N)-1)``.
A :class:`PuiseuxPoly` is a finite sum of monomials ``w_1^q_1 ... w_r^q_r``
with rational exponents and cyclotomic coefficients.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from gmpy2 import mpq

from orbigw import _kernels

Rational = type(mpq(0))
Exponents = Tuple[Rational, ...]

ZERO = mpq(0)
ONE = mpq(1)


def rational(x) -> Rational:
    """Coerce ints, Fractions, mpq or ``"p/q"`` strings to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return mpq(int(num), int(den))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(q: Rational) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# cyclotomic fields
# ---------------------------------------------------------------------------


def _poly_divexact(num: list, den: list) -> list:
    """Exact division of integer polynomials (coefficient lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q, rem = divmod(c, lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CycField:
    """Reduction data for Q(zeta_N): the images of every power zeta^p, 0 <= p < N."""

    _cache: Dict[int, "CycField"] = {}
    _lock = threading.Lock()

    def __init__(self, n: int):
        phi_poly = cyclotomic_polynomial(n)
        self.n = n
        self.degree = len(phi_poly) - 1
        d = self.degree
        powers = []
        vec = [0] * d
        vec[0] = 1
        for _ in range(n):
            powers.append(tuple(vec))
            # multiply by x and reduce with x^d = -sum phi_k x^k (phi monic)
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for k in range(d):
                    vec[k] -= top * phi_poly[k]
        self.powers = tuple(powers)
        # sparse form of the power table, used by the multiplication kernel
        self.sparse_powers = tuple(
            tuple((k, mpq(c)) for k, c in enumerate(p) if c) for p in powers
        )

    @classmethod
    def get(cls, n: int) -> "CycField":
        field = cls._cache.get(n)
        if field is None:
            with cls._lock:
                field = cls._cache.get(n)
                if field is None:
                    field = cls(n)
                    cls._cache[n] = field
        return field


class CycRational:
    """An element of the cyclotomic field Q(zeta_N).

    >>> z4 = CycRational.root_of_unity(4, 1)
    >>> z4 * z4 == CycRational.from_rational(4, -1)
    True
    """

    __slots__ = ("n", "coords", "_hash")

    def __init__(self, n: int, coords: Sequence):
        field = CycField.get(n)
        if len(coords) != field.degree:
            raise ValueError(
                f"Q(zeta_{n}) has degree {field.degree}, got {len(coords)} coordinates"
            )
        self.n = n
        self.coords = tuple(rational(c) for c in coords)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coords: tuple) -> "CycRational":
        obj = object.__new__(cls)
        obj.n = n
        obj.coords = coords
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, n: int, q) -> "CycRational":
        d = CycField.get(n).degree
        return cls._raw(n, (rational(q),) + (ZERO,) * (d - 1))

    @classmethod
    def zero(cls, n: int) -> "CycRational":
        return cls._raw(n, (ZERO,) * CycField.get(n).degree)

    @classmethod
    def one(cls, n: int) -> "CycRational":
        return cls.from_rational(n, 1)

    @classmethod
    def root_of_unity(cls, n: int, k: int) -> "CycRational":
        """zeta_N^k."""
        field = CycField.get(n)
        return cls._raw(n, tuple(mpq(c) for c in field.powers[k % n]))

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "CycRational") -> None:
        if other.n != self.n:
            raise ValueError(f"conductor mismatch: {self.n} vs {other.n}")

    def _coerce(self, other):
        if isinstance(other, CycRational):
            self._check(other)
            return other
        return CycRational.from_rational(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        return CycRational._raw(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return CycRational._raw(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return CycRational._raw(self.n, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, CycRational):
            self._check(other)
            if len(self.coords) == 1:
                return CycRational._raw(self.n, (self.coords[0] * other.coords[0],))
            field = CycField.get(self.n)
            return CycRational._raw(
                self.n,
                _kernels.cyc_mul(self.coords, other.coords, field.sparse_powers, self.n),
            )
        q = rational(other)
        return CycRational._raw(self.n, tuple(a * q for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by rationals only; the field inverse is deliberately absent
        q = rational(other)
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return CycRational._raw(self.n, tuple(a / q for a in self.coords))

    def __eq__(self, other):
        if isinstance(other, CycRational):
            return self.n == other.n and self.coords == other.coords
        try:
            q = rational(other)
        except TypeError:
            return NotImplemented
        return self.is_rational() and self.coords[0] == q

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords[0]) if self.is_rational() else hash((self.n, self.coords))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_strings(self) -> list:
        return [format_rational(c) for c in self.coords]

    def __repr__(self):
        if self.is_rational():
            return format_rational(self.coords[0])
        parts = []
        for k, c in enumerate(self.coords):
            if c:
                parts.append(format_rational(c) + ("" if k == 0 else f"*z{self.n}^{k}"))
        return "(" + " + ".join(parts) + ")"


def cyc_arith(op: str, a: CycRational, b: CycRational):
    """Dispatch ``add``, ``mul``, ``neg`` or ``eq`` on two elements of Q(zeta_N)."""
    if a.n != b.n:
        raise ValueError(f"conductor mismatch: {a.n} vs {b.n}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Puiseux polynomials in the equivariant parameters
# ---------------------------------------------------------------------------


def monomial(exponents: Iterable) -> Exponents:
    return tuple(rational(e) for e in exponents)


def _add_exponents(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


class PuiseuxPoly:
    """A finite sum  sum_q c_q w^q  with rational exponent vectors q and
    coefficients in Q(zeta_N).

    ``r`` is the number of variables and ``n`` the cyclotomic conductor; both
    are fixed at construction and checked on every binary operation.
    """

    __slots__ = ("r", "n", "terms")

    def __init__(self, r: int, n: int, terms: Mapping | None = None):
        self.r = r
        self.n = n
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = monomial(exps)
                if len(exps) != r:
                    raise ValueError(f"expected {r} exponents, got {len(exps)}")
                if not isinstance(c, CycRational):
                    c = CycRational.from_rational(n, c)
                elif c.n != n:
                    raise ValueError(f"conductor mismatch: {c.n} vs {n}")
                if exps in clean:
                    c = clean[exps] + c
                if c.is_zero():
                    clean.pop(exps, None)
                else:
                    clean[exps] = c
        self.terms: Dict[Exponents, CycRational] = clean

    @classmethod
    def _raw(cls, r: int, n: int, terms: dict) -> "PuiseuxPoly":
        obj = object.__new__(cls)
        obj.r = r
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, r: int, n: int) -> "PuiseuxPoly":
        return cls._raw(r, n, {})

    @classmethod
    def constant(cls, r: int, n: int, c=1) -> "PuiseuxPoly":
        if not isinstance(c, CycRational):
            c = CycRational.from_rational(n, c)
        if c.is_zero():
            return cls.zero(r, n)
        return cls._raw(r, n, {(ZERO,) * r: c})

    @classmethod
    def mono(cls, r: int, n: int, exponents, c=1) -> "PuiseuxPoly":
        if not isinstance(c, CycRational):
            c = CycRational.from_rational(n, c)
        exps = monomial(exponents)
        if len(exps) != r:
            raise ValueError(f"expected {r} exponents, got {len(exps)}")
        if c.is_zero():
            return cls.zero(r, n)
        return cls._raw(r, n, {exps: c})

    @classmethod
    def variable(cls, r: int, n: int, i: int, power=1) -> "PuiseuxPoly":
        exps = [ZERO] * r
        exps[i] = rational(power)
        return cls.mono(r, n, exps)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> CycRational:
        return self.terms.get((ZERO,) * self.r, CycRational.zero(self.n))

    def is_rational(self) -> bool:
        """True when every coefficient lies in Q (no nonconstant cyclotomic coordinate)."""
        return all(c.is_rational() for c in self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponents, CycRational]]:
        return iter(self.terms.items())

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "PuiseuxPoly") -> None:
        if other.r != self.r or other.n != self.n:
            raise ValueError(
                f"ring mismatch: (r={self.r}, N={self.n}) vs (r={other.r}, N={other.n})"
            )

    def _coerce(self, other) -> "PuiseuxPoly":
        if isinstance(other, PuiseuxPoly):
            self._check(other)
            return other
        return PuiseuxPoly.constant(self.r, self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return PuiseuxPoly._raw(self.r, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxPoly._raw(self.r, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, PuiseuxPoly):
            self._check(other)
            if not self.terms or not other.terms:
                return PuiseuxPoly.zero(self.r, self.n)
            return PuiseuxPoly._raw(
                self.r, self.n, _kernels.poly_mul(self.terms, other.terms, _add_exponents)
            )
        if isinstance(other, CycRational):
            if other.n != self.n:
                raise ValueError(f"conductor mismatch: {other.n} vs {self.n}")
            if other.is_zero():
                return PuiseuxPoly.zero(self.r, self.n)
            return PuiseuxPoly._raw(self.r, self.n, {e: c * other for e, c in self.terms.items()})
        q = rational(other)
        if q == 0:
            return PuiseuxPoly.zero(self.r, self.n)
        return PuiseuxPoly._raw(self.r, self.n, {e: c * q for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = rational(other)
        return PuiseuxPoly._raw(self.r, self.n, {e: c / q for e, c in self.terms.items()})

    def times_monomial(self, exponents, c=None) -> "PuiseuxPoly":
        """Multiply by ``c * w^exponents`` (``c`` defaults to 1)."""
        exps = monomial(exponents)
        out = {_add_exponents(e, exps): v for e, v in self.terms.items()}
        res = PuiseuxPoly._raw(self.r, self.n, out)
        return res if c is None else res * c

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only available for monomials")
        out = PuiseuxPoly.constant(self.r, self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, PuiseuxPoly):
            return self.r == other.r and self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, CycRational, Rational)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def denominators_divide(self, bounds: Sequence[int]) -> bool:
        """True when the i-th exponent denominator of every term divides ``bounds[i]``."""
        return all(
            bounds[i] % e.denominator == 0 for exps in self.terms for i, e in enumerate(exps)
        )

    # -- serialization --------------------------------------------------
    def to_records(self) -> list:
        """Canonical serialization: records sorted lexicographically by exponents."""
        return [
            {"exponents": [format_rational(e) for e in exps], "coeff": c.to_strings()}
            for exps, c in sorted(self.terms.items(), key=lambda t: t[0])
        ]

    @classmethod
    def from_records(cls, records: Sequence[Mapping], r: int, n: int) -> "PuiseuxPoly":
        terms = {}
        for rec in records:
            exps = monomial(rec["exponents"])
            terms[exps] = CycRational(n, [rational(c) for c in rec["coeff"]])
        return cls(r, n, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in sorted(self.terms.items(), key=lambda t: t[0]):
            mono = "*".join(
                f"w{i + 1}" if e == 1 else f"w{i + 1}^({format_rational(e)})"
                for i, e in enumerate(exps)
                if e
            )
            pieces.append(f"{c!r}*{mono}" if mono else repr(c))
        return " + ".join(pieces)


# ---------------------------------------------------------------------------
# Bernoulli polynomials
# ---------------------------------------------------------------------------

_bernoulli_lock = threading.Lock()
_bernoulli_numbers: list = [ONE]
_bernoulli_polys: Dict[int, Tuple[Rational, ...]] = {}


def bernoulli_number(m: int) -> Rational:
    """B_m with the convention B_1 = -1/2 (so that B_m = B_m(0))."""
    if m < len(_bernoulli_numbers):
        return _bernoulli_numbers[m]
    with _bernoulli_lock:
        while len(_bernoulli_numbers) <= m:
            k = len(_bernoulli_numbers)
            s = sum(comb(k + 1, j) * _bernoulli_numbers[j] for j in range(k))
            _bernoulli_numbers.append(-s / (k + 1))
    return _bernoulli_numbers[m]


def bernoulli_coefficients(m: int) -> Tuple[Rational, ...]:
    """Coefficients of B_m(x) in increasing powers of x, computed once per degree."""
    coeffs = _bernoulli_polys.get(m)
    if coeffs is None:
        computed = tuple(comb(m, k) * bernoulli_number(m - k) for k in range(m + 1))
        with _bernoulli_lock:
            coeffs = _bernoulli_polys.setdefault(m, computed)
    return coeffs


def bernoulli_eval(m: int, x) -> Rational:
    """Exact value of the Bernoulli polynomial B_m at a rational point."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    x = rational(x)
    acc = ZERO
    for c in reversed(bernoulli_coefficients(m)):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

Coeff = PuiseuxPoly


class TruncSeries:
    """Power series in one (``("z",)``) or two (``("z", "zeta")``) formal
    variables with Puiseux-polynomial coefficients, truncated at total degree
    ``order``.  Coefficients are keyed by exponent tuples.
    """

    __slots__ = ("variables", "order", "r", "n", "coeffs")

    def __init__(self, variables: Sequence[str], order: int, r: int, n: int, coeffs=None):
        if len(variables) not in (1, 2):
            raise ValueError("one or two formal variables are supported")
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.variables = tuple(variables)
        self.order = order
        self.r = r
        self.n = n
        nv = len(self.variables)
        clean = {}
        for key, c in (coeffs or {}).items():
            key = (key,) if isinstance(key, int) else tuple(key)
            if len(key) != nv or any(k < 0 for k in key):
                raise ValueError(f"bad exponent {key!r}")
            if sum(key) > order:
                continue
            if not isinstance(c, PuiseuxPoly):
                c = PuiseuxPoly.constant(r, n, c)
            if key in clean:
                c = clean[key] + c
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.coeffs: Dict[tuple, PuiseuxPoly] = clean

    @classmethod
    def _raw(cls, variables, order, r, n, coeffs) -> "TruncSeries":
        obj = object.__new__(cls)
        obj.variables = variables
        obj.order = order
        obj.r = r
        obj.n = n
        obj.coeffs = coeffs
        return obj

    def _like(self, coeffs, order=None) -> "TruncSeries":
        return TruncSeries._raw(
            self.variables, self.order if order is None else order, self.r, self.n, coeffs
        )

    @classmethod
    def one(cls, variables, order, r, n) -> "TruncSeries":
        key = (0,) * len(tuple(variables))
        return cls(variables, order, r, n, {key: PuiseuxPoly.constant(r, n, 1)})

    def __getitem__(self, key) -> PuiseuxPoly:
        key = (key,) if isinstance(key, int) else tuple(key)
        if sum(key) > self.order:
            raise IndexError(f"coefficient {key} lies beyond truncation order {self.order}")
        return self.coeffs.get(key) or PuiseuxPoly.zero(self.r, self.n)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "TruncSeries") -> None:
        if self.variables != other.variables or self.r != other.r or self.n != other.n:
            raise ValueError("series live in different rings")

    def __add__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        out = {k: v for k, v in self.coeffs.items() if sum(k) <= order}
        for k, v in other.coeffs.items():
            if sum(k) > order:
                continue
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._like(out, order)

    def __neg__(self):
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            order = min(self.order, other.order)
            out: Dict[tuple, PuiseuxPoly] = {}
            for k1, v1 in self.coeffs.items():
                d1 = sum(k1)
                for k2, v2 in other.coeffs.items():
                    if d1 + sum(k2) > order:
                        continue
                    k = tuple(a + b for a, b in zip(k1, k2))
                    p = v1 * v2
                    out[k] = out[k] + p if k in out else p
            return self._like({k: v for k, v in out.items() if v}, order)
        out = {}
        for k, v in self.coeffs.items():
            p = v * other
            if p:
                out[k] = p
        return self._like(out)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "TruncSeries":
        order = min(order, self.order)
        return self._like({k: v for k, v in self.coeffs.items() if sum(k) <= order}, order)

    def substitute_negative(self) -> "TruncSeries":
        """s(-z) (or s(-z, -zeta))."""
        return self._like({k: (v if sum(k) % 2 == 0 else -v) for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return f"O({self.variables[0]}^{self.order + 1})"
        parts = []
        for k in sorted(self.coeffs, key=lambda t: (sum(t), t)):
            mono = "*".join(f"{v}^{e}" for v, e in zip(self.variables, k) if e)
            parts.append(f"({self.coeffs[k]!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) + f" + O(deg {self.order + 1})"


def series_exp(s: TruncSeries) -> TruncSeries:
    """exp(s) = sum_j s^j / j! truncated at the order of ``s``."""
    zero_key = (0,) * len(s.variables)
    if s.coeffs.get(zero_key):
        raise ValueError("series_exp needs a series without constant term")
    result = TruncSeries.one(s.variables, s.order, s.r, s.n)
    term = result
    for j in range(1, s.order + 1):
        term = (term * s) * mpq(1, j)
        if term.is_zero():
            break
        result = result + term
    return result


class DivisibilityError(ArithmeticError):
    """Raised when a bivariate series is not divisible by z + zeta."""

    def __init__(self, key, residue):
        self.key = key
        self.residue = residue
        super().__init__(f"not divisible by (z+zeta): residue {residue!r} at z^{key[0]} zeta^{key[1]}")


def divide_by_zplus_zeta(numer: TruncSeries) -> TruncSeries:
    """The series q with q * (z + zeta) = numer, truncated at order - 1.

    Divisibility is checked degree by degree; a nonzero remainder raises
    :class:`DivisibilityError` naming the offending coefficient.
    """
    if len(numer.variables) != 2:
        raise ValueError("need a series in two variables")
    if numer.order < 1:
        raise ValueError("order must be at least 1")
    const = numer.coeffs.get((0, 0))
    if const:
        raise DivisibilityError((0, 0), const)
    zero = PuiseuxPoly.zero(numer.r, numer.n)
    out = {}
    for d in range(1, numer.order + 1):
        prev = zero
        # n(i, d-i) = q(i-1, d-i) + q(i, d-1-i)
        for i in range(d):
            q = numer.coeffs.get((i, d - i), zero) - prev
            if q:
                out[(i, d - 1 - i)] = q
            prev = q
        residue = numer.coeffs.get((d, 0), zero) - prev
        if residue:
            raise DivisibilityError((d, 0), residue)
    return numer._like(out, numer.order - 1)


__all__ = [
    "Rational",
    "rational",
    "format_rational",
    "CycRational",
    "CycField",
    "cyclotomic_polynomial",
    "cyc_arith",
    "PuiseuxPoly",
    "monomial",
    "TruncSeries",
    "series_exp",
    "divide_by_zplus_zeta",
    "DivisibilityError",
    "bernoulli_number",
    "bernoulli_coefficients",
    "bernoulli_eval",
]
