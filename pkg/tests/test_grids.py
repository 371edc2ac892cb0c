import numpy as np
import pytest

from phaseq import (
    Axis,
    Field,
    GridSpec,
    bandlimit,
    fd_derivative,
    fourier_derivative,
    grid_star,
    inner_product,
    kg_two_route_check,
    norm,
    read_field_binary,
    wigner_from_amplitude,
    write_field_binary,
    write_field_csv,
)

from oracles import gaussian_qp_star, quadrature_star


def qp_spec(n=64, half=8.0):
    return GridSpec([Axis("q", n, -half, half), Axis("p", n, -half, half)])


def test_axis_and_spec_validation():
    with pytest.raises(ValueError):
        Axis("q", 3, 0.0, 1.0)
    with pytest.raises(ValueError):
        Axis("q", 8, 1.0, 1.0)
    with pytest.raises(ValueError):
        GridSpec([Axis("q", 8, 0.0, 1.0)])
    with pytest.raises(ValueError):
        GridSpec(
            [Axis("q", 512, -1, 1), Axis("p", 512, -1, 1), Axis("r", 512, -1, 1)]
        )


def test_field_arithmetic_and_nan_guard():
    spec = qp_spec(8)
    f = Field.from_function(spec, lambda q, p: q + p)
    g = Field.from_function(spec, lambda q, p: q * p)
    assert np.allclose((f + g).values, f.values + g.values)
    assert np.allclose((f - g).values, f.values - g.values)
    assert np.allclose((2.0 * f).values, 2.0 * f.values)
    bad = np.ones(spec.shape)
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        Field(spec, bad)


def test_fourier_derivative_of_gaussian():
    spec = qp_spec(128, 10.0)
    f = Field.from_function(spec, lambda q, p: np.exp(-(q * q + p * p) / 2))
    d1 = fourier_derivative(f, 0, 1)
    Q, P = spec.meshgrid()
    expected = -Q * f.values
    assert np.max(np.abs(d1.values - expected)) < 1e-12
    d2 = fourier_derivative(f, 1, 2)
    expected2 = (P * P - 1.0) * f.values
    assert np.max(np.abs(d2.values - expected2)) < 1e-11


def test_fd_derivative_matches_spectral():
    spec = qp_spec(128, 10.0)
    f = Field.from_function(spec, lambda q, p: np.exp(-(q * q + p * p) / 2))
    for axis in (0, 1):
        for order in (1, 2):
            a = fd_derivative(f, axis, order).values
            b = fourier_derivative(f, axis, order).values
            assert np.max(np.abs(a - b)) < 1e-6


def test_grid_star_against_closed_form_oracle():
    s = 4.0
    spec = qp_spec(64, 8.0)
    f = Field.from_function(spec, lambda q, p: q * np.exp(-(q * q + p * p) / s))
    g = Field.from_function(spec, lambda q, p: p * np.exp(-(q * q + p * p) / s))
    fg = grid_star(f, g)
    qs = spec.axes[0].points()
    ps = spec.axes[1].points()
    for i in (24, 32, 40):
        for j in (28, 32, 36):
            ref = gaussian_qp_star(qs[i], ps[j], s)
            assert abs(fg.values[i, j] - ref) < 1e-9


def test_grid_star_against_quadrature_oracle():
    s = 4.0
    w = lambda q, p: np.exp(-(q * q + p * p) / s)
    spec = qp_spec(64, 8.0)
    f = Field.from_function(spec, lambda q, p: (q + 0.2 * p * p) * w(q, p))
    g = Field.from_function(spec, lambda q, p: (p - 0.1 * q) * w(q, p))
    fg = grid_star(f, g)
    qs = spec.axes[0].points()
    ps = spec.axes[1].points()
    for i, j in [(32, 32), (36, 28)]:
        ref = quadrature_star(
            lambda a, b: (a + 0.2 * b * b) * w(a, b),
            lambda a, b: (b - 0.1 * a) * w(a, b),
            qs[i],
            ps[j],
        )
        assert abs(fg.values[i, j] - ref) < 1e-8


def test_grid_star_identity_element():
    spec = qp_spec(32, 6.0)
    one = Field(spec, np.ones(spec.shape))
    f = Field.from_function(spec, lambda q, p: np.exp(-(q * q + p * p)))
    left = grid_star(one, f)
    right = grid_star(f, one)
    fb = bandlimit(f)
    assert np.max(np.abs(left.values - fb.values)) < 1e-12
    assert np.max(np.abs(right.values - fb.values)) < 1e-12


def test_gaussian_idempotence():
    # exp(-(q^2+p^2)) is (pi times) a pure-state Wigner function and is
    # idempotent under the star product up to the known 1/2 factor
    spec = qp_spec(64, 8.0)
    f = Field.from_function(spec, lambda q, p: np.exp(-(q * q + p * p)))
    ff = grid_star(f, f)
    assert np.max(np.abs(ff.values - 0.5 * f.values)) < 1e-12


def test_wigner_realness_scalar_and_spinor():
    spec = qp_spec(64, 8.0)
    amp = Field.from_function(spec, lambda q, p: (q + 1j * p) * np.exp(-(q * q + p * p) / 2))
    fw = wigner_from_amplitude(amp)
    assert np.max(np.abs(fw.values.imag)) < 1e-12 * fw.max_abs()
    zero = Field.zeros(spec)
    fw4 = wigner_from_amplitude([amp, zero, -1 * amp, zero])
    assert np.max(np.abs(fw4.values.imag)) < 1e-12 * fw4.max_abs()


def test_wigner_trace_equals_norm():
    spec = qp_spec(64, 8.0)
    amp = Field.from_function(spec, lambda q, p: np.exp(-(q * q + p * p) / 3))
    fw = wigner_from_amplitude(amp)
    ones = Field(spec, np.ones(spec.shape))
    trace = inner_product(ones, fw).real
    amp_b = bandlimit(amp)
    norm2 = inner_product(amp_b, amp_b).real
    assert abs(trace - norm2) < 1e-12 * norm2


def test_kg_two_route_convergence():
    p_values = (0.7, 0.3)
    results = {}
    for n in (64, 128):
        spec = GridSpec([Axis("q0", n, -9, 9), Axis("q1", n, -9, 9)])
        phi = Field.from_function(
            spec, lambda a, b: np.exp(-(a * a + b * b) / 4)
        )
        report = kg_two_route_check(phi, p_values, 1.0)
        results[n] = report.relative_discrepancy
    assert results[128] < 1e-8
    assert results[64] / results[128] > 10


def test_kg_input_validation():
    spec = GridSpec(
        [Axis("a", 8, -1, 1), Axis("b", 8, -1, 1), Axis("c", 8, -1, 1), Axis("d", 8, -1, 1)]
    )
    phi = Field(spec, np.ones(spec.shape))
    with pytest.raises(ValueError):
        kg_two_route_check(phi, (1.0, 0.0), 1.0)


def test_binary_roundtrip(tmp_path):
    spec = qp_spec(16, 2.0)
    f = Field.from_function(spec, lambda q, p: np.exp(1j * q) * np.cos(p))
    path = tmp_path / "field.bin"
    write_field_binary(f, path)
    g = read_field_binary(path, axis_names=["q", "p"])
    assert g.spec.shape == f.spec.shape
    assert np.max(np.abs(g.values - f.values)) == 0.0
    raw = path.read_bytes()
    assert raw[:4] == b"SDEQ"


def test_csv_header_and_precision(tmp_path):
    spec = qp_spec(4, 1.0)
    f = Field.from_function(spec, lambda q, p: q + 1j * p)
    path = tmp_path / "field.csv"
    write_field_csv(f, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "q,p,re,im"
    assert len(lines) == 1 + 16
    value = float(lines[1].split(",")[2])
    assert value == f.values[0, 0].real


def test_norm_positive():
    spec = qp_spec(16, 3.0)
    f = Field.from_function(spec, lambda q, p: np.exp(-(q * q + p * p)))
    assert norm(f) > 0
