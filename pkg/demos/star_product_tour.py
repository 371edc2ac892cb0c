"""A walk through the exact symbolic layer.

Star products, Moyal brackets, Bopp-shift operators and the symmetry
algebra, all in exact rational arithmetic. Run with:

    python3 demos/star_product_tour.py
"""

from phaseq import (
    MOSTLY_PLUS,
    bopp_momentum,
    bopp_position,
    check_poincare_algebra,
    commutator_on,
    monomial_basis,
    moyal_star,
    parse_expression,
)

# The star product of two phase-space polynomials terminates into another
# polynomial. The canonical pair picks up the i/2 that plain
# multiplication misses.
q0 = parse_expression("q0")
p0 = parse_expression("p0")
print("q0 * p0  =", q0 * p0)
print("q0 . p0  =", moyal_star(q0, p0))
print("p0 . q0  =", moyal_star(p0, q0))

# Spatial pairs carry the metric sign; with the mostly-plus signature the
# sign comes back.
q1 = parse_expression("q1")
p1 = parse_expression("p1")
print("\nq1 . p1 (+---) =", moyal_star(q1, p1))
print("q1 . p1 (-+++) =", moyal_star(q1, p1, MOSTLY_PLUS))

# The Moyal bracket of the canonical pair is the classical i{q, p}.
bracket = moyal_star(q0, p0) - moyal_star(p0, q0)
print("\n[q0, p0] under the star:", bracket)

# Bopp shifts turn left star multiplication into differential operators.
# Applying the commutator of Q and P to any monomial returns i times it.
Q = bopp_position(0)
P = bopp_momentum(0)
f = parse_expression("q0^2*p0 + 3*q1*p2")
print("\n[Q0, P0] f =", commutator_on(Q, P, f))

# Star products of higher-degree polynomials stay exact: here is one with
# a few correction orders in play.
f = parse_expression("q0^3")
g = parse_expression("p0^3")
print("\nq0^3 . p0^3 =", moyal_star(f, g))

# The ten generators built from these operators close into the expected
# algebra with literal-zero residuals over a monomial basis.
report = check_poincare_algebra(2)
print(
    f"\nsymmetry algebra on degree-2 basis: {report.checked} identities,",
    f"{len(report.violations)} violations, basis size {len(monomial_basis(2))}",
)
