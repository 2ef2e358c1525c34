"""End-to-end smoke tests for the python extension module."""

import math

import numpy as np
import pytest

import slicereg as sl

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def expm_series(mat):
    out = np.eye(mat.shape[0])
    term = np.eye(mat.shape[0])
    for k in range(1, 120):
        term = term @ mat / k
        out = out + term
        if np.linalg.norm(term) < 1e-17 * max(1.0, np.linalg.norm(out)):
            break
    return out


def quaternion_space(m=2):
    alg = sl.algebra(2)
    return alg, sl.ModuleSpace(alg, m)


def cross_operator():
    alg, space = quaternion_space()
    zero = sl.Element.zero(alg)
    e1 = sl.Element.basis(alg, 0b01)
    e2 = sl.Element.basis(alg, 0b10)
    return alg, space, sl.MatrixOperator.from_entries(space, [[zero, e1], [e2, zero]])


def test_blade_arithmetic():
    alg = sl.algebra(2)
    e1 = sl.Element.basis(alg, 0b01)
    e2 = sl.Element.basis(alg, 0b10)
    e12 = e1 * e2
    assert e12.coeff("12") == 1.0
    assert (e1 * e1).scalar_coeff() == -1.0
    assert (e2 * e1 + e12).is_zero()
    q = 0.5 + 2.0 * e1 - e12 / 4.0
    assert q.coeff("") == 0.5
    assert q.coeff("1") == 2.0
    assert q.coeff("12") == -0.25
    assert "e12" in repr(q)
    conj = q.conj()
    assert conj.coeff("1") == -2.0
    assert conj.coeff("") == 0.5
    assert sl.commutator(e1, e2).euclid_norm() == pytest.approx(2.0)


def test_cone_decomposition_and_exp():
    alg = sl.algebra(2)
    e1 = sl.Element.basis(alg, 0b01)
    q = 0.3 + 0.8 * e1
    re, s, axis = sl.cone_decompose(q)
    assert re == pytest.approx(0.3)
    assert s == pytest.approx(0.8)
    assert axis is not None
    rebuilt = sl.slice_point(axis, complex(re, s))
    assert (rebuilt - q).euclid_norm() < 1e-14
    want = math.exp(0.3) * (math.cos(0.8) + math.sin(0.8) * 1.0)
    got = sl.cone_exp(q)
    assert got.scalar_coeff() == pytest.approx(math.exp(0.3) * math.cos(0.8), rel=1e-14)
    assert got.coeff("1") == pytest.approx(math.exp(0.3) * math.sin(0.8), rel=1e-14)
    del want
    real_re, real_s, real_axis = sl.cone_decompose(sl.Element.scalar(alg, -1.5))
    assert real_re == -1.5 and real_s == 0.0 and real_axis is None


def test_zero_divisor_outside_the_cone():
    alg3 = sl.algebra(3)
    w = 1.0 + sl.Element.basis(alg3, 0b111)
    assert (w * (2.0 - w)).is_zero()
    assert not sl.in_quadratic_cone(w)
    assert (w * w).euclid_norm() == pytest.approx(math.sqrt(8.0), rel=1e-12)
    with pytest.raises(sl.ConeMembershipError):
        sl.cone_decompose(sl.Element.basis(alg3, 0b100) + sl.Element.basis(alg3, 0b011))


def test_cross_operator_spectrum():
    _, _, a = cross_operator()
    spec = sorted(sl.spherical_spectrum(a))
    assert len(spec) == 2
    assert spec[0][0] == pytest.approx(-INV_SQRT2, abs=1e-10)
    assert spec[0][1] == pytest.approx(INV_SQRT2, abs=1e-10)
    assert spec[1][0] == pytest.approx(INV_SQRT2, abs=1e-10)
    assert spec[1][1] == pytest.approx(INV_SQRT2, abs=1e-10)
    assert sl.delta_min_singular(a, INV_SQRT2, 1.0) < 1e-10
    assert sl.delta_min_singular(a, 0.9, 1.5) > 1e-3
    with pytest.raises(sl.SingularDelta):
        sl.pseudo_resolvent(a, INV_SQRT2, 1.0, 1e-6)


def test_resolvent_factorization():
    alg, space = quaternion_space()
    rng = sl.Rng(5)
    a = sl.random_operator(space, rng, 0.8)
    axis = sl.Element.basis(alg, 0b01)
    fact = sl.verify_resolvent_factorization(a, axis, 1.7 + 0.9j)
    assert fact.membership_equivalent
    assert fact.q_regular and fact.lambda_regular and fact.conj_regular
    assert fact.residual <= 1e-9
    q = sl.slice_point(axis, 1.7 + 0.9j)
    c_q = sl.spherical_resolvent(a, q)
    assert isinstance(c_q, np.ndarray)
    assert c_q.shape == (space.real_dim, space.real_dim)


def test_right_linearity_and_vectors():
    alg, space, a = cross_operator()
    x = sl.random_vector(space, sl.Rng(12))
    q = sl.Element.basis(alg, 0b01)
    lhs = a(x.right_scaled(q))
    rhs = a(x).right_scaled(q)
    assert (lhs - rhs).euclid_norm() < 1e-12
    flat = x.flat()
    assert flat.shape == (space.real_dim,)
    back = sl.ModuleVector.from_flat(space, flat)
    assert (back - x).euclid_norm() == 0.0
    assert len(x.parts) == 2
    assert a.embedding().shape == (8, 8)
    emb = a.embedding()
    rebuilt = sl.MatrixOperator.from_embedding(space, emb)
    diff = rebuilt.entry(0, 1) - a.entry(0, 1)
    assert diff.euclid_norm() < 1e-12


def test_exp_semigroup_matches_series():
    _, _, a = cross_operator()
    emb = a.embedding()
    for t in (0.25, 1.0):
        got = sl.exp_semigroup(a, sl.Element.scalar(a.space.algebra, t))
        want = expm_series(t * emb)
        assert np.linalg.norm(got - want) <= 1e-12 * max(1.0, np.linalg.norm(want))


def test_contour_semigroup_matches_exponential():
    alg, space = quaternion_space()
    a = sl.random_sectorial_operator(space, sl.Rng(7), 0.45, 0.1, 0.6)
    spec = sl.ContourSpec(axis=sl.Element.basis(alg, 0b01))
    t = 1.0
    got = sl.contour_semigroup(a, spec, t)
    want = sl.exp_semigroup(a, sl.Element.scalar(alg, t))
    assert np.linalg.norm(got - want) <= 1e-6 * max(1.0, np.linalg.norm(want))


def test_laplace_transform_matches_resolvent_power():
    alg, space = quaternion_space()
    a = sl.random_sectorial_operator(space, sl.Rng(21), 0.45, 0.15, 0.5)
    q = sl.slice_point(sl.Element.basis(alg, 0b01), 0.4 + 0.3j)
    for k in (1, 2):
        got = sl.laplace_transform(a, q, k)
        want = sl.resolvent_slice_power(a, q, k)
        assert np.linalg.norm(got - want) <= 1e-6 * max(1.0, np.linalg.norm(want))


def test_semigroup_law_and_report():
    alg, space = quaternion_space()
    a = sl.random_operator(space, sl.Rng(31), 0.6)
    axis = sl.random_axis(alg, sl.Rng(32))
    p = sl.slice_point(axis, 0.3 + 0.4j)
    q = sl.slice_point(axis, 0.1 + 0.7j)
    report = sl.semigroup_law_check(a, p, q, 1e-8)
    assert report.all_pass()
    law = report.find("law.slice-product")
    assert law is not None
    assert law.passed and law.residual <= 1e-8
    assert report.find("no-such-check") is None
    csv = sl.report_to_csv(report)
    assert csv.startswith("check_id,residual,tol,pass\n")
    assert "law.slice-product" in sl.report_to_json(report)
    with pytest.raises(sl.Error):
        e2 = sl.Element.basis(alg, 0b10)
        sl.semigroup_law_check(a, p, sl.slice_point(e2, 0.2 + 0.5j), 1e-8)


def test_yosida_and_generator_estimate():
    alg, space = quaternion_space()
    a = sl.random_sectorial_operator(space, sl.Rng(41), 0.4, 0.05, 0.3)
    yk = sl.yosida_approximant(a, 64.0)
    bracket = sl.op_norm(yk)
    assert 0.0 <= bracket.lower <= bracket.upper
    t = 1.0
    approx = expm_series(t * yk.embedding())
    exact = sl.exp_semigroup(a, sl.Element.scalar(alg, t))
    assert np.linalg.norm(approx - exact) <= 0.05 * max(1.0, np.linalg.norm(exact))
    emb = a.embedding()
    x = sl.ModuleVector.basis(space, 0)
    est = sl.generator_estimate(space, lambda s: expm_series(s * emb), x,
                                [0.1 / 2.0 ** k for k in range(6)])
    assert (est - a(x)).euclid_norm() < 1e-6


def test_stems_and_slice_functions():
    alg = sl.algebra(2)
    e1 = sl.Element.basis(alg, 0b01)
    e2 = sl.Element.basis(alg, 0b10)
    c = [sl.Element.scalar(alg, 1.0), 2.0 * e1, sl.Element.scalar(alg, -0.5)]
    series = sl.power_series_stem(c)
    q = sl.slice_point(e2, 0.4 + 0.6j)
    want = c[0] + c[1] * q + c[2] * (q * q)
    assert (series(q) - want).euclid_norm() < 1e-12
    assert series.cr_residual(0.3 + 0.8j) < 1e-8
    f1, f2 = series.eval(0.5 + 0.25j)
    assert f1.algebra.generators == 2 and f2.algebra.generators == 2
    prod = sl.product_stem(series, series)
    got = prod(q)
    direct_f = sl.is_right_slice(lambda w: c[0] + c[1] * w + c[2] * (w * w), alg)
    assert direct_f.right_slice
    twisted = sl.is_right_slice(lambda w: e1 * w * e2, alg)
    assert not twisted.right_slice
    assert twisted.worst_defect > 1e-3
    expo = sl.exp_stem(sl.Element.scalar(alg, 1.0), sl.Element.zero(alg))
    assert (expo(q) - sl.cone_exp(q)).euclid_norm() < 1e-12
    del got


def test_exp_defect_limit():
    alg = sl.algebra(2)
    e1 = sl.Element.basis(alg, 0b01)
    e2 = sl.Element.basis(alg, 0b10)
    x = 1.0 + e1 * e2
    p = 0.2 + 0.9 * e1
    q = -0.1 + 0.6 * e2
    want = (x * x) * sl.commutator(p, q)
    got = sl.exp_defect_limit(x, p, q)
    assert (got - want).euclid_norm() <= 1e-3 * want.euclid_norm()
    commuting = sl.exp_defect_limit(x, p, 0.7 * e1 - 0.4)
    assert commuting.euclid_norm() == 0.0


def test_json_round_trips():
    alg = sl.algebra(3)
    q = sl.element(alg, {"": 0.1, "13": 1.0 / 3.0, "123": -2.5e-17})
    back = sl.element_from_json(sl.element_to_json(q))
    assert back.coeffs == q.coeffs
    _, space = quaternion_space()
    a = sl.random_operator(space, sl.Rng(2024), 0.9)
    a_back = sl.operator_from_json(sl.operator_to_json(a))
    for u in range(2):
        for v in range(2):
            assert a_back.entry(u, v).coeffs == a.entry(u, v).coeffs
    stem = sl.stem_from_json(sl.stem_to_json([q, q * 2.0]))
    sample = sl.slice_point(sl.Element.basis(alg, 0b001), 0.2 + 0.4j)
    want = q + (q * 2.0) * sample
    assert (stem(sample) - want).euclid_norm() < 1e-12
    assert sl.double_repr(0.1) == "0.1"
    with pytest.raises(sl.ParseError):
        sl.element_from_json("{")
    with pytest.raises(sl.ParseError):
        sl.element_from_json('{"n": 2, "coeff": {"21": 1.0}}')


def test_error_types():
    alg2 = sl.algebra(2)
    alg3 = sl.algebra(3)
    with pytest.raises(sl.SignatureMismatch):
        sl.Element.basis(alg2, 1) + sl.Element.basis(alg3, 1)
    with pytest.raises(sl.DimensionMismatch):
        sl.Element.basis(alg2, 7)
    with pytest.raises(sl.DimensionMismatch):
        sl.Element.from_coeffs(alg2, [1.0, 2.0])
    assert issubclass(sl.SingularDelta, sl.Error)
    assert issubclass(sl.ParseError, sl.Error)


def test_sampling_is_deterministic():
    _, space = quaternion_space()
    a = sl.random_operator(space, sl.Rng(99), 0.7)
    b = sl.random_operator(space, sl.Rng(99), 0.7)
    for u in range(2):
        for v in range(2):
            assert a.entry(u, v).coeffs == b.entry(u, v).coeffs
    axes = sl.sample_imaginary_sphere(sl.algebra(3), 17, 4)
    assert len(axes) == 4
    for j in axes:
        assert sl.in_imaginary_sphere(j)


def test_sector_probe():
    _, space = quaternion_space()
    a = sl.random_sectorial_operator(space, sl.Rng(51), 0.45, 0.1, 0.4)
    opts = sl.SectorProbeOptions()
    opts.radius_count = 7
    opts.radius_max = 100.0
    probe = sl.sectorial_probe(a, 0.0, 0.45, opts)
    assert probe.sectorial
    assert probe.spectrum_in_sector
    assert probe.k_estimate > 0.0
    assert len(probe.rows) > 0
    assert all(row.regular for row in probe.rows)
