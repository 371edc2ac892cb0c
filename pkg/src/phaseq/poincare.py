"""Symplectic Poincare generators and exact verification of their algebra.

Generators are built from the Bopp shifts:

    M_{mu nu} = Q_mu P_nu - Q_nu P_mu          (lowered components)
    W_mu      = 1/2 eps_{mu nu rho sigma} M^{nu sigma} P^rho

Operator identities are decided by application to every monomial up to a
caller-chosen degree; residuals are exact polynomials, and a check passes
only when every residual is the literal zero polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .algebra import (
    ComplexRational,
    MOSTLY_MINUS,
    MetricSignature,
    PhasePolynomial,
)
from .star import (
    Compose,
    Operator,
    Scale,
    Sum,
    bopp_momentum,
    bopp_position,
    commutator_on,
    lowered_momentum,
    lowered_position,
)

__all__ = [
    "ResidualRecord",
    "AlgebraReport",
    "monomial_basis",
    "angular_generator",
    "check_poincare_algebra",
    "pauli_lubanski",
    "casimir_p2",
    "casimir_w2",
    "check_casimirs",
    "levi_civita",
]

_I = ComplexRational(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class ResidualRecord:
    relation: str
    monomial: str
    residual: str


@dataclass
class AlgebraReport:
    """Outcome of an exact operator-identity sweep over a monomial basis."""

    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, relation: str, monomial: PhasePolynomial, residual: PhasePolynomial):
        self.checked += 1
        if not residual.is_zero():
            self.violations.append(
                ResidualRecord(relation, str(monomial), str(residual))
            )

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "pass": self.passed,
            "violations": [
                {
                    "relation": v.relation,
                    "monomial": v.monomial,
                    "residual": v.residual,
                }
                for v in self.violations
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def monomial_basis(max_degree: int, dims: int = 4) -> list[PhasePolynomial]:
    """All monomials in the 2*dims generators with total degree <= max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    slots = [i for i in range(4) if i < dims] + [4 + i for i in range(4) if i < dims]
    keys = [(0,) * 8]
    frontier = keys[:]
    for _ in range(max_degree):
        new = []
        for key in frontier:
            for slot in slots:
                k = list(key)
                k[slot] += 1
                new.append(tuple(k))
        frontier = sorted(set(new))
        keys.extend(frontier)
    return [PhasePolynomial.monomial(k, dims=dims) for k in sorted(set(keys))]


def levi_civita(mu: int, nu: int, rho: int, sigma: int) -> int:
    """eps_{mu nu rho sigma} with eps_{0123} = +1 (all indices lowered)."""
    idx = (mu, nu, rho, sigma)
    if len(set(idx)) != 4:
        return 0
    sign = 1
    lst = list(idx)
    for i in range(3):
        for j in range(3 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign


def angular_generator(
    mu: int, nu: int, metric: MetricSignature = MOSTLY_MINUS
) -> Operator:
    """M_{mu nu} = Q_mu P_nu - Q_nu P_mu (both indices lowered)."""
    if not (0 <= mu < 4 and 0 <= nu < 4):
        raise ValueError("index out of range")
    return Sum(
        (
            Compose((lowered_position(mu, metric), lowered_momentum(nu, metric))),
            Scale(
                ComplexRational.of(-1),
                Compose((lowered_position(nu, metric), lowered_momentum(mu, metric))),
            ),
        )
    )


def _scaled(ops: list[tuple[ComplexRational, Operator]]) -> Operator:
    return Sum(tuple(Scale(c, op) for c, op in ops))


def check_poincare_algebra(
    max_degree: int, metric: MetricSignature = MOSTLY_MINUS
) -> AlgebraReport:
    """Verify the three commutator families on every monomial of degree <= max_degree.

    The relations checked are the ones the generators above satisfy exactly:

        [M_{mu nu}, P_sigma]   = i (g_{mu sigma} P_nu - g_{nu sigma} P_mu)
        [P_mu, P_nu]           = 0
        [M_{mu nu}, M_{rho s}] = i (g_{mu rho} M_{nu s} + g_{nu s} M_{mu rho}
                                    - g_{mu s} M_{nu rho} - g_{nu rho} M_{mu s})
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    basis = monomial_basis(max_degree)
    report = AlgebraReport()
    P = [lowered_momentum(mu, metric) for mu in range(4)]
    M = {
        (mu, nu): angular_generator(mu, nu, metric)
        for mu in range(4)
        for nu in range(4)
        if mu != nu
    }

    pairs = [(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]

    for mu, nu in [(a, b) for a in range(4) for b in range(a, 4)]:
        rel = f"[P_{mu},P_{nu}]"
        for mono in basis:
            report.record(rel, mono, commutator_on(P[mu], P[nu], mono))

    for mu, nu in pairs:
        for sigma in range(4):
            rel = f"[M_{mu}{nu},P_{sigma}]"
            rhs_parts = []
            if metric[sigma] != 0:
                if sigma == mu:
                    rhs_parts.append((_I * metric[mu], P[nu]))
                if sigma == nu:
                    rhs_parts.append((-_I * metric[nu], P[mu]))
            rhs = _scaled(rhs_parts)
            for mono in basis:
                res = commutator_on(M[(mu, nu)], P[sigma], mono) - rhs.apply(mono)
                report.record(rel, mono, res)

    def m_op(a, b):
        # M_{ab} with antisymmetry for a == b handled by caller
        return M[(a, b)]

    for mu, nu in pairs:
        for rho, sig in pairs:
            rel = f"[M_{mu}{nu},M_{rho}{sig}]"
            rhs_parts = []
            for g_idx, pair in (
                ((mu, rho), (nu, sig)),
                ((nu, sig), (mu, rho)),
            ):
                a, b = g_idx
                c, d = pair
                if a == b and c != d:
                    rhs_parts.append((_I * metric[a], m_op(c, d)))
            for g_idx, pair in (
                ((mu, sig), (nu, rho)),
                ((nu, rho), (mu, sig)),
            ):
                a, b = g_idx
                c, d = pair
                if a == b and c != d:
                    rhs_parts.append((-_I * metric[a], m_op(c, d)))
            rhs = _scaled(rhs_parts)
            for mono in basis:
                res = commutator_on(M[(mu, nu)], M[(rho, sig)], mono) - rhs.apply(mono)
                report.record(rel, mono, res)

    return report


def pauli_lubanski(mu: int, metric: MetricSignature = MOSTLY_MINUS) -> Operator:
    """W_mu = 1/2 eps_{mu nu rho sigma} M^{nu sigma} P^rho (lower index mu)."""
    if not 0 <= mu < 4:
        raise ValueError("index out of range")
    half = ComplexRational(Fraction(1, 2))
    parts = []
    for nu, rho, sigma in permutations([i for i in range(4) if i != mu], 3):
        eps = levi_civita(mu, nu, rho, sigma)
        if eps == 0:
            continue
        # M^{nu sigma} = Q^nu P^sigma - Q^sigma P^nu (raised = Bopp ops directly)
        m_up = Sum(
            (
                Compose((bopp_position(nu, metric), bopp_momentum(sigma, metric))),
                Scale(
                    ComplexRational.of(-1),
                    Compose((bopp_position(sigma, metric), bopp_momentum(nu, metric))),
                ),
            )
        )
        parts.append(
            Scale(half * eps, Compose((m_up, bopp_momentum(rho, metric))))
        )
    return Sum(tuple(parts))


def casimir_p2(metric: MetricSignature = MOSTLY_MINUS) -> Operator:
    """P^2 = P^mu P_mu."""
    parts = []
    for mu in range(4):
        parts.append(
            Scale(
                ComplexRational.of(metric[mu]),
                Compose((bopp_momentum(mu, metric), bopp_momentum(mu, metric))),
            )
        )
    return Sum(tuple(parts))


def casimir_w2(metric: MetricSignature = MOSTLY_MINUS) -> Operator:
    """W^2 = W^mu W_mu."""
    parts = []
    for mu in range(4):
        w = pauli_lubanski(mu, metric)
        parts.append(Scale(ComplexRational.of(metric[mu]), Compose((w, w))))
    return Sum(tuple(parts))


def check_casimirs(
    max_degree_p2: int = 2,
    max_degree_w2: int = 1,
    metric: MetricSignature = MOSTLY_MINUS,
) -> AlgebraReport:
    """Verify [P^2, .] and [W^2, .] annihilate every generator on monomial bases."""
    if max_degree_p2 < 1 or max_degree_w2 < 1:
        raise ValueError("max_degree must be >= 1")
    report = AlgebraReport()
    p2 = casimir_p2(metric)
    w2 = casimir_w2(metric)
    P = [lowered_momentum(mu, metric) for mu in range(4)]
    pairs = [(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]

    basis_p2 = monomial_basis(max_degree_p2)
    for mu in range(4):
        for mono in basis_p2:
            report.record(f"[P2,P_{mu}]", mono, commutator_on(p2, P[mu], mono))
    for mu, nu in pairs:
        m = angular_generator(mu, nu, metric)
        for mono in basis_p2:
            report.record(f"[P2,M_{mu}{nu}]", mono, commutator_on(p2, m, mono))

    basis_w2 = monomial_basis(max_degree_w2)
    for mu in range(4):
        for mono in basis_w2:
            report.record(f"[W2,P_{mu}]", mono, commutator_on(w2, P[mu], mono))
    for mu, nu in pairs:
        m = angular_generator(mu, nu, metric)
        for mono in basis_w2:
            report.record(f"[W2,M_{mu}{nu}]", mono, commutator_on(w2, m, mono))

    return report
