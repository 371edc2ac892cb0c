"""Moyal star product on polynomials and the Bopp-shift operator calculus.

The star product is evaluated term by term in powers of the symplectic
bidifferential operator; on polynomials the series terminates at
min(deg f, deg g), so the result is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import (
    ComplexRational,
    MOSTLY_MINUS,
    MetricSignature,
    PhasePolynomial,
)

__all__ = [
    "moyal_star",
    "Operator",
    "Identity",
    "BoppP",
    "BoppQ",
    "MultiplyBy",
    "Scale",
    "Sum",
    "Compose",
    "bopp_momentum",
    "bopp_position",
    "lowered_momentum",
    "lowered_position",
    "apply_operator",
    "commutator_on",
]

_I_HALF_POWERS = {}


def _i_half_power(k: int) -> ComplexRational:
    # (i/2)^k as an exact ComplexRational
    try:
        return _I_HALF_POWERS[k]
    except KeyError:
        re, im = [(1, 0), (0, 1), (-1, 0), (0, -1)][k % 4]
        value = ComplexRational(Fraction(re, 2**k), Fraction(im, 2**k))
        _I_HALF_POWERS[k] = value
        return value


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _iterated_derivative(poly: PhasePolynomial, kind: str, orders) -> PhasePolynomial:
    out = poly
    for mu, count in enumerate(orders):
        for _ in range(count):
            if out.is_zero():
                return out
            out = out.derivative(kind, mu)
    return out


def moyal_star(
    f: PhasePolynomial, g: PhasePolynomial, metric: MetricSignature = MOSTLY_MINUS
) -> PhasePolynomial:
    """Exact star product of two polynomials.

    Expansion over derivative multi-indices alpha (q on f, p on g) and
    beta (p on f, q on g):

        f*g = sum (i/2)^{|a|+|b|} (-1)^{|b|} / (a! b!)
              * prod_mu g^{mumu (a_mu+b_mu)}
              * (d_q^a d_p^b f) (d_p^a d_q^b g)
    """
    if f.dims != g.dims:
        raise ValueError(f"dimension mismatch: {f.dims} vs {g.dims}")
    kmax = min(f.degree(), g.degree())
    out = PhasePolynomial.zero(f.dims)
    if f.is_zero() or g.is_zero():
        return out
    for k in range(0, max(kmax, 0) + 1):
        for alpha_beta in _compositions(k, 8):
            alpha, beta = alpha_beta[:4], alpha_beta[4:]
            df = _iterated_derivative(
                _iterated_derivative(f, "q", alpha), "p", beta
            )
            if df.is_zero():
                continue
            dg = _iterated_derivative(
                _iterated_derivative(g, "p", alpha), "q", beta
            )
            if dg.is_zero():
                continue
            weight = _i_half_power(k)
            if sum(beta) % 2:
                weight = -weight
            denom = 1
            sign = 1
            for mu in range(4):
                denom *= factorial(alpha[mu]) * factorial(beta[mu])
                if metric[mu] == -1 and (alpha[mu] + beta[mu]) % 2:
                    sign = -sign
            coeff = weight * ComplexRational(Fraction(sign, denom))
            out = out + (df * dg).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# operator expressions


class Operator:
    """Composable linear operator on PhasePolynomial values."""

    def apply(self, f: PhasePolynomial) -> PhasePolynomial:
        raise NotImplementedError

    def __matmul__(self, other: "Operator") -> "Operator":
        return Compose((self, other))

    def __add__(self, other: "Operator") -> "Operator":
        return Sum((self, other))

    def __sub__(self, other: "Operator") -> "Operator":
        return Sum((self, Scale(ComplexRational.of(-1), other)))

    def __neg__(self) -> "Operator":
        return Scale(ComplexRational.of(-1), self)

    def __rmul__(self, scalar) -> "Operator":
        return Scale(ComplexRational.of(scalar), self)


@dataclass(frozen=True)
class Identity(Operator):
    def apply(self, f):
        return f


@dataclass(frozen=True)
class BoppP(Operator):
    """P^mu = p^mu - (i/2) d/dq_mu (momentum Bopp shift, upper index)."""

    mu: int
    metric: MetricSignature = MOSTLY_MINUS

    def apply(self, f):
        p = PhasePolynomial.coordinate("p", self.mu, f.dims)
        shift = f.derivative("q", self.mu).scale(
            ComplexRational(Fraction(0), Fraction(-self.metric[self.mu], 2))
        )
        return p * f + shift


@dataclass(frozen=True)
class BoppQ(Operator):
    """Q^mu = q^mu + (i/2) d/dp_mu (position Bopp shift, upper index)."""

    mu: int
    metric: MetricSignature = MOSTLY_MINUS

    def apply(self, f):
        q = PhasePolynomial.coordinate("q", self.mu, f.dims)
        shift = f.derivative("p", self.mu).scale(
            ComplexRational(Fraction(0), Fraction(self.metric[self.mu], 2))
        )
        return q * f + shift


@dataclass(frozen=True)
class MultiplyBy(Operator):
    poly: PhasePolynomial

    def apply(self, f):
        return self.poly * f


@dataclass(frozen=True)
class Scale(Operator):
    coeff: ComplexRational
    inner: Operator

    def apply(self, f):
        return self.inner.apply(f).scale(self.coeff)


@dataclass(frozen=True)
class Sum(Operator):
    parts: tuple

    def apply(self, f):
        out = PhasePolynomial.zero(f.dims)
        for part in self.parts:
            out = out + part.apply(f)
        return out


@dataclass(frozen=True)
class Compose(Operator):
    """Ordered composition; the rightmost factor is applied first."""

    factors: tuple

    def apply(self, f):
        out = f
        for factor in reversed(self.factors):
            out = factor.apply(out)
        return out


def bopp_momentum(mu: int, metric: MetricSignature = MOSTLY_MINUS) -> Operator:
    if not 0 <= mu < 4:
        raise ValueError("index out of range")
    return BoppP(mu, metric)


def bopp_position(mu: int, metric: MetricSignature = MOSTLY_MINUS) -> Operator:
    if not 0 <= mu < 4:
        raise ValueError("index out of range")
    return BoppQ(mu, metric)


def lowered_momentum(mu: int, metric: MetricSignature = MOSTLY_MINUS) -> Operator:
    """P_mu = g_{mumu} P^mu."""
    op = bopp_momentum(mu, metric)
    return op if metric[mu] == 1 else Scale(ComplexRational.of(-1), op)


def lowered_position(mu: int, metric: MetricSignature = MOSTLY_MINUS) -> Operator:
    """Q_mu = g_{mumu} Q^mu."""
    op = bopp_position(mu, metric)
    return op if metric[mu] == 1 else Scale(ComplexRational.of(-1), op)


def apply_operator(op: Operator, f: PhasePolynomial) -> PhasePolynomial:
    return op.apply(f)


def commutator_on(a: Operator, b: Operator, f: PhasePolynomial) -> PhasePolynomial:
    """(AB - BA) applied to f, exactly."""
    return a.apply(b.apply(f)) - b.apply(a.apply(f))
