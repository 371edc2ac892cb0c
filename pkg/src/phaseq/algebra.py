"""Exact polynomial algebra over phase-space coordinates.

The eight generators are q0..q3 and p0..p3 (upper-index components).
Coefficients are complex numbers with exact rational real and imaginary
parts, so every algebraic identity in this package can be tested for
literal equality instead of closeness to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "ComplexRational",
    "CR_ZERO",
    "CR_ONE",
    "CR_I",
    "MetricSignature",
    "MOSTLY_MINUS",
    "MOSTLY_PLUS",
    "PhasePolynomial",
    "q_var",
    "p_var",
    "poisson_bracket",
]

_RationalLike = (int, Fraction)


@dataclass(frozen=True)
class ComplexRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "ComplexRational":
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, _RationalLike):
            return ComplexRational(Fraction(value))
        if isinstance(value, complex):
            # exact binary floats convert losslessly through Fraction
            return ComplexRational(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return ComplexRational(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} to ComplexRational")

    def __add__(self, other):
        other = ComplexRational.of(other)
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-ComplexRational.of(other))

    def __rsub__(self, other):
        return ComplexRational.of(other) + (-self)

    def __mul__(self, other):
        other = ComplexRational.of(other)
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ComplexRational.of(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero ComplexRational")
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)


CR_ZERO = ComplexRational()
CR_ONE = ComplexRational(Fraction(1))
CR_I = ComplexRational(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class MetricSignature:
    """Diagonal metric with entries +/-1 and exactly one timelike direction."""

    diag: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.diag) != 4 or any(g not in (1, -1) for g in self.diag):
            raise ValueError("metric diagonal must be four entries of +/-1")
        if abs(sum(self.diag)) != 2:
            raise ValueError("metric must have exactly one timelike entry")

    def __getitem__(self, mu: int) -> int:
        return self.diag[mu]

    def label(self) -> str:
        return "".join("+" if g == 1 else "-" for g in self.diag)


MOSTLY_MINUS = MetricSignature((1, -1, -1, -1))
MOSTLY_PLUS = MetricSignature((-1, 1, 1, 1))

# exponent keys: (q0, q1, q2, q3, p0, p1, p2, p3)
_ZERO_KEY = (0,) * 8


class PhasePolynomial:
    """Multivariate polynomial in q0..q3, p0..p3 with ComplexRational coefficients.

    Immutable; all arithmetic is exact. ``dims`` bounds the active coordinate
    pairs: generators q{i}, p{i} with i >= dims are rejected.
    """

    __slots__ = ("terms", "dims")

    def __init__(self, terms, dims: int):
        if not 1 <= dims <= 4:
            raise ValueError("dims must be between 1 and 4")
        clean = {}
        for key, coeff in terms.items():
            coeff = ComplexRational.of(coeff)
            if coeff.is_zero():
                continue
            key = tuple(key)
            if len(key) != 8 or any(e < 0 for e in key):
                raise ValueError(f"bad exponent key {key}")
            for i in range(4):
                if i >= dims and (key[i] or key[4 + i]):
                    raise ValueError(f"generator index {i} out of range for dims={dims}")
            clean[key] = coeff
        PhasePolynomial._set(self, clean, dims)

    @staticmethod
    def _set(obj, terms, dims):
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "dims", dims)

    @classmethod
    def _raw(cls, terms: dict, dims: int) -> "PhasePolynomial":
        # internal fast path: terms already clean
        obj = object.__new__(cls)
        cls._set(obj, terms, dims)
        return obj

    @classmethod
    def zero(cls, dims: int = 4) -> "PhasePolynomial":
        return cls._raw({}, dims)

    @classmethod
    def constant(cls, value, dims: int = 4) -> "PhasePolynomial":
        c = ComplexRational.of(value)
        return cls._raw({} if c.is_zero() else {_ZERO_KEY: c}, dims)

    @classmethod
    def coordinate(cls, kind: str, index: int, dims: int = 4) -> "PhasePolynomial":
        if kind not in ("q", "p"):
            raise ValueError("kind must be 'q' or 'p'")
        if not 0 <= index < dims:
            raise ValueError(f"generator index {index} out of range for dims={dims}")
        key = [0] * 8
        key[index + (0 if kind == "q" else 4)] = 1
        return cls._raw({tuple(key): CR_ONE}, dims)

    @classmethod
    def monomial(cls, exponents, coeff=CR_ONE, dims: int = 4) -> "PhasePolynomial":
        return cls({tuple(exponents): ComplexRational.of(coeff)}, dims)

    # -- ring operations ---------------------------------------------------

    def _check_dims(self, other: "PhasePolynomial"):
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other):
        if not isinstance(other, PhasePolynomial):
            other = PhasePolynomial.constant(other, self.dims)
        self._check_dims(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = terms.get(key, CR_ZERO) + coeff
            if acc.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = acc
        return PhasePolynomial._raw(terms, self.dims)

    __radd__ = __add__

    def __neg__(self):
        return PhasePolynomial._raw({k: -c for k, c in self.terms.items()}, self.dims)

    def __sub__(self, other):
        if not isinstance(other, PhasePolynomial):
            other = PhasePolynomial.constant(other, self.dims)
        return self + (-other)

    def __rsub__(self, other):
        return PhasePolynomial.constant(other, self.dims) + (-self)

    def __mul__(self, other):
        if not isinstance(other, PhasePolynomial):
            return self.scale(other)
        self._check_dims(other)
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                acc = terms.get(key, CR_ZERO) + c1 * c2
                if acc.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = acc
        return PhasePolynomial._raw(terms, self.dims)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value) -> "PhasePolynomial":
        c = ComplexRational.of(value)
        if c.is_zero():
            return PhasePolynomial.zero(self.dims)
        return PhasePolynomial._raw({k: v * c for k, v in self.terms.items()}, self.dims)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = PhasePolynomial.constant(1, self.dims)
        base = self
        while n:
            if n & 1:
                out = out * base
            base_needed = n > 1
            if base_needed:
                base = base * base
            n >>= 1
        return out

    # -- calculus ----------------------------------------------------------

    def derivative(self, kind: str, index: int) -> "PhasePolynomial":
        """Exact partial derivative with respect to q{index} or p{index}."""
        if kind not in ("q", "p"):
            raise ValueError("kind must be 'q' or 'p'")
        if not 0 <= index < 4:
            raise ValueError("generator index out of range")
        slot = index + (0 if kind == "q" else 4)
        terms: dict = {}
        for key, coeff in self.terms.items():
            e = key[slot]
            if e == 0:
                continue
            nk = list(key)
            nk[slot] = e - 1
            terms[tuple(nk)] = coeff * e
        return PhasePolynomial._raw(terms, self.dims)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(k) for k in self.terms)

    def conjugate(self) -> "PhasePolynomial":
        return PhasePolynomial._raw(
            {k: c.conjugate() for k, c in self.terms.items()}, self.dims
        )

    def constant_term(self) -> ComplexRational:
        return self.terms.get(_ZERO_KEY, CR_ZERO)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, PhasePolynomial):
            return self.dims == other.dims and self.terms == other.terms
        if isinstance(other, (int, Fraction, complex, ComplexRational)):
            return self == PhasePolynomial.constant(other, self.dims)
        return NotImplemented

    def __hash__(self):
        return hash((self.dims, frozenset(self.terms.items())))

    def __str__(self):
        from .parsing import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"PhasePolynomial({self.__str__()!r}, dims={self.dims})"


def q_var(index: int, dims: int = 4) -> PhasePolynomial:
    return PhasePolynomial.coordinate("q", index, dims)


def p_var(index: int, dims: int = 4) -> PhasePolynomial:
    return PhasePolynomial.coordinate("p", index, dims)


def poisson_bracket(
    f: PhasePolynomial, g: PhasePolynomial, metric: MetricSignature = MOSTLY_MINUS
) -> PhasePolynomial:
    """Poisson bracket sum_mu g^{mumu} (df/dq^mu dg/dp^mu - df/dp^mu dg/dq^mu).

    The metric factor raises the momentum-derivative index; with the
    mostly-minus default, {q0, p0} = 1 and {q1, p1} = -1.
    """
    if f.dims != g.dims:
        raise ValueError(f"dimension mismatch: {f.dims} vs {g.dims}")
    out = PhasePolynomial.zero(f.dims)
    for mu in range(f.dims):
        gm = metric[mu]
        term = f.derivative("q", mu) * g.derivative("p", mu) - f.derivative(
            "p", mu
        ) * g.derivative("q", mu)
        out = out + term.scale(gm)
    return out
