#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "slicereg/errors.hpp"
#include "slicereg/rng.hpp"
#include "slicereg/sampling.hpp"
#include "slicereg/stem.hpp"

using namespace slicereg;

namespace {

AlgebraPtr quaternions() { return CliffordAlgebra::create(2); }

Element elem(const AlgebraPtr& alg, std::vector<double> c) {
    return Element::from_coeffs(alg, std::move(c));
}

// sum_k x^k w^k / k! summed pointwise, no stems involved
Element exp_series_pointwise(const Element& x, const Element& w) {
    const auto alg = x.algebra();
    Element sum = Element::scalar(alg, 1.0);
    Element xp = Element::scalar(alg, 1.0);
    Element wp = Element::scalar(alg, 1.0);
    double inv_fact = 1.0;
    for (int k = 1; k <= 200; ++k) {
        xp = xp * x;
        wp = wp * w;
        inv_fact /= static_cast<double>(k);
        const Element term = xp * wp * inv_fact;
        sum = sum + term;
        if (term.clifford_norm() < 1e-17 * std::max(1.0, sum.clifford_norm())) break;
    }
    return sum;
}

double rel_diff(const Element& got, const Element& want) {
    return (got - want).clifford_norm() / std::max(1.0, want.clifford_norm());
}

MatrixOperator cross_unit_operator() {
    const auto alg = quaternions();
    const ModuleSpace space{alg, 2};
    const Element zero = Element::zero(alg);
    return MatrixOperator::from_entries(
        space, {{zero, Element::basis(alg, 0b01)}, {Element::basis(alg, 0b10), zero}});
}

}  // namespace

TEST_CASE("power series stems induce left-coefficient polynomials pointwise") {
    for (int n = 2; n <= 3; ++n) {
        const auto alg = CliffordAlgebra::create(n);
        Rng rng(5 + static_cast<std::uint64_t>(n));
        std::vector<Element> coeffs;
        for (int k = 0; k < 4; ++k) coeffs.push_back(random_element(alg, rng));
        const auto stem = power_series_stem(coeffs);

        for (int trial = 0; trial < 6; ++trial) {
            const Element q = random_cone_element(alg, rng, -1.5, 1.5, 0.0, 1.5);
            Element want = Element::zero(alg);
            Element qp = Element::scalar(alg, 1.0);
            for (const Element& c : coeffs) {
                want = want + c * qp;
                qp = qp * q;
            }
            CHECK(rel_diff(induce(stem, q), want) <= 1e-13);
        }
    }
}

TEST_CASE("constant stems ignore the argument") {
    const auto alg = quaternions();
    const Element c = elem(alg, {1, -2, 3, 0.5});
    const auto stem = constant_stem(c);
    CHECK(rel_diff(induce(stem, elem(alg, {0.3, 1, 0, 0})), c) == 0.0);
    CHECK(rel_diff(induce(stem, Element::scalar(alg, -7.0)), c) == 0.0);
}

TEST_CASE("slice products convolve power series coefficients") {
    for (int n = 2; n <= 3; ++n) {
        const auto alg = CliffordAlgebra::create(n);
        Rng rng(19 + static_cast<std::uint64_t>(n));
        std::vector<Element> a, b;
        for (int k = 0; k < 4; ++k) a.push_back(random_element(alg, rng));
        for (int k = 0; k < 3; ++k) b.push_back(random_element(alg, rng));

        std::vector<Element> conv(a.size() + b.size() - 1, Element::zero(alg));
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) conv[i + j] = conv[i + j] + a[i] * b[j];
        }

        const auto product = product_stem(power_series_stem(a), power_series_stem(b));
        const auto direct = power_series_stem(conv);
        for (int trial = 0; trial < 6; ++trial) {
            const Element q = random_cone_element(alg, rng, -1.2, 1.2, 0.0, 1.2);
            CHECK(rel_diff(induce(product, q), induce(direct, q)) <= 1e-12);
        }
    }
}

TEST_CASE("slice product of iq and jq is kq squared, not the pointwise product") {
    const auto alg = quaternions();
    const Element zero = Element::zero(alg);
    const Element i = Element::basis(alg, 0b01);
    const Element j = Element::basis(alg, 0b10);
    const auto product = product_stem(power_series_stem<Element>({zero, i}),
                                      power_series_stem<Element>({zero, j}));

    const Element q = elem(alg, {1, 1, 0, 0});
    const Element slice_value = induce(product, q);
    // k q^2 = k (2i) = 2j
    CHECK(slice_value.coeff(0b10) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(slice_value.coeff(0b01) == doctest::Approx(0.0).epsilon(1e-13));

    const Element pointwise = i * q * j * q;  // equals 2k at q = 1 + i
    CHECK(pointwise.coeff(0b11) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK((slice_value - pointwise).clifford_norm() > 1.0);
}

TEST_CASE("slice cubes of a shifted variable expand binomially") {
    const auto alg = CliffordAlgebra::create(3);
    Rng rng(29);
    const Element p = random_cone_element(alg, rng, -1.0, 1.0, 0.2, 1.0);
    const Element one = Element::scalar(alg, 1.0);

    const auto linear = power_series_stem<Element>({p, one});
    const auto cube = product_stem(product_stem(linear, linear), linear);
    const auto binomial =
        power_series_stem<Element>({p * p * p, p * p * 3.0, p * 3.0, one});

    for (int trial = 0; trial < 6; ++trial) {
        const Element q = random_cone_element(alg, rng, -1.5, 1.5, 0.0, 1.5);
        CHECK(rel_diff(induce(cube, q), induce(binomial, q)) <= 1e-12);
    }
}

TEST_CASE("exponential stems with scalar coefficient reduce to the cone exponential") {
    const auto alg = quaternions();
    Rng rng(37);
    const Element zero = Element::zero(alg);

    const auto plain = exp_stem(Element::scalar(alg, 1.0), zero);
    const auto scaled = exp_stem(Element::scalar(alg, 2.5), zero);
    for (int trial = 0; trial < 6; ++trial) {
        const Element q = random_cone_element(alg, rng, -1.0, 1.0, 0.0, 1.5);
        CHECK(rel_diff(induce(plain, q), cone_exp(q)) <= 1e-13);
        CHECK(rel_diff(induce(scaled, q), cone_exp(q * 2.5)) <= 1e-13);
    }
}

TEST_CASE("exponential stems with real shift match the pointwise series") {
    for (int n = 2; n <= 3; ++n) {
        const auto alg = CliffordAlgebra::create(n);
        Rng rng(43 + static_cast<std::uint64_t>(n));
        const Element x = random_element(alg, rng, 0.6);
        const double p = 0.7;

        const auto stem = exp_stem(x, Element::scalar(alg, p));
        for (int trial = 0; trial < 5; ++trial) {
            const Element q = random_cone_element(alg, rng, -1.0, 1.0, 0.0, 1.2);
            const Element want = exp_series_pointwise(x, q + Element::scalar(alg, p));
            CHECK(rel_diff(induce(stem, q), want) <= 1e-12);
        }
    }
}

TEST_CASE("exponential stems refuse arguments beyond the term cap") {
    const auto alg = quaternions();
    const auto stem = exp_stem(Element::scalar(alg, 3.0), Element::zero(alg), 1e-14, 5);
    CHECK_THROWS_AS(induce(stem, Element::scalar(alg, 1.0)), Error);
}

TEST_CASE("exponential defect limit recovers the commutator correction") {
    {
        const auto alg = quaternions();
        Rng rng(53);
        const Element x = random_element(alg, rng, 0.8);
        const Element p = random_cone_element(alg, rng, -0.5, 0.5, 0.3, 1.0);
        const Element q = random_cone_element(alg, rng, -0.5, 0.5, 0.3, 1.0);
        const Element predicted = x * x * (p * q - q * p);
        REQUIRE(predicted.clifford_norm() > 0.05);
        CHECK(rel_diff(exp_defect_limit(x, p, q), predicted) <= 1e-6);
    }

    {
        const auto alg = CliffordAlgebra::create(3);
        Rng rng(59);
        const Element x = random_element(alg, rng, 0.7);
        const Element p = slice_point(random_axis(alg, rng), {0.4, 0.9});
        const Element q = slice_point(random_axis(alg, rng), {-0.3, 0.8});
        const Element predicted = x * x * (p * q - q * p);
        REQUIRE(predicted.clifford_norm() > 0.05);
        CHECK(rel_diff(exp_defect_limit(x, p, q), predicted) <= 1e-6);
    }
}

TEST_CASE("exponential shift defect vanishes identically on a common slice") {
    const auto alg = quaternions();
    Rng rng(61);
    const Element axis = random_axis(alg, rng);
    const Element x = random_element(alg, rng, 0.8);
    const Element p = slice_point(axis, {0.4, 0.7});
    const Element q = slice_point(axis, {-0.2, 1.1});

    for (const double t : {0.37, 1.0}) {
        const auto shifted = exp_stem(x, p * t);
        const auto plain = exp_stem(x, Element::zero(alg));
        const Element defect = induce(shifted, q * t) - induce(plain, (p + q) * t);
        CHECK(defect.clifford_norm() <= 1e-13);
    }
    CHECK(exp_defect_limit(x, p, q).clifford_norm() <= 1e-9);
}

TEST_CASE("finite-difference defect of holomorphic stems shrinks at second order") {
    const auto alg = quaternions();
    Rng rng(67);
    const Element x = random_element(alg, rng, 0.8);
    const Element p = random_cone_element(alg, rng, -0.4, 0.4, 0.2, 0.8);
    const auto stem = exp_stem(x, p);

    const std::complex<double> z(0.3, 0.8);
    const double r_coarse = cr_residual(stem, z, 1e-3);
    const double r_fine = cr_residual(stem, z, 5e-4);
    CHECK(r_coarse / r_fine == doctest::Approx(4.0).epsilon(0.15));
    CHECK(cr_residual(stem, z, 1e-5) <= 1e-8);
}

TEST_CASE("finite-difference defect stays order one for a non-holomorphic pair") {
    const auto alg = quaternions();
    const Element one = Element::scalar(alg, 1.0);
    const Element zero = Element::zero(alg);
    const auto broken = function_stem<Element>([one, zero](std::complex<double> z) {
        return StemPair<Element>{one * z.real(), zero};
    });

    const std::complex<double> z(0.4, 0.9);
    const double r_coarse = cr_residual(broken, z, 1e-3);
    const double r_fine = cr_residual(broken, z, 5e-4);
    CHECK(r_coarse > 0.5);
    CHECK(r_coarse / r_fine == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("slice sampler accepts induced polynomials and rejects twisted maps") {
    const auto alg = quaternions();
    Rng rng(71);
    std::vector<Element> coeffs;
    for (int k = 0; k < 3; ++k) coeffs.push_back(random_element(alg, rng, 0.7));
    const auto stem = power_series_stem(coeffs);

    const auto good = [&stem](const Element& q) { return induce(stem, q); };
    const SliceSampleReport ok = is_right_slice(good, alg);
    CHECK(ok.right_slice);
    CHECK(ok.worst_defect <= 1e-6);

    const Element i = Element::basis(alg, 0b01);
    const Element j = Element::basis(alg, 0b10);
    const auto twisted = [i, j](const Element& q) { return i * q * j; };
    const SliceSampleReport bad = is_right_slice(twisted, alg);
    CHECK_FALSE(bad.right_slice);
    CHECK(bad.worst_defect > 0.5);

    // on the i slice the twist fails the right Cauchy-Riemann test with the
    // exact witness 2k (centered differences are exact on affine maps)
    const Element defect = slice_cr_defect(twisted, i, 0.4, 0.8);
    CHECK(defect.coeff(0b11) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK((defect - elem(alg, {0, 0, 0, 2})).clifford_norm() <= 1e-9);

    const auto conjugated = [](const Element& q) { return q.conj(); };
    CHECK_FALSE(is_right_slice(conjugated, alg).right_slice);
}

TEST_CASE("representation formula rebuilds values on new slices") {
    const auto alg = CliffordAlgebra::create(3);
    Rng rng(79);
    const Element x = random_element(alg, rng, 0.8);
    const auto stem = exp_stem(x, Element::zero(alg));

    const auto axes = sample_imaginary_sphere(alg, 5, 2);
    const Element j = axes[0];
    const Element k = random_axis(alg, rng);
    const std::complex<double> z(0.3, 0.9);

    const Element at_j = induce(stem, slice_point(j, z));
    const Element at_conj = induce(stem, slice_point(j, std::conj(z)));
    const Element predicted = representation_combine(at_j, at_conj, j, k);
    CHECK(rel_diff(predicted, induce(stem, slice_point(k, z))) <= 1e-13);
}

TEST_CASE("resolvent stems induce the spherical resolvent") {
    const MatrixOperator a = cross_unit_operator();
    const auto alg = a.space().algebra;
    const auto stem = resolvent_stem(a);
    Rng rng(83);

    for (int trial = 0; trial < 5; ++trial) {
        const Element q = random_cone_element(alg, rng, 1.5, 3.0, 0.2, 1.5);
        const OperatorValue value = induce(stem, q);
        CHECK((value.mat - spherical_resolvent(a, q)).norm() <= 1e-12);
    }

    const std::complex<double> z(1.4, 0.9);
    const double r_coarse = cr_residual(stem, z, 1e-3);
    const double r_fine = cr_residual(stem, z, 5e-4);
    CHECK(r_coarse / r_fine == doctest::Approx(4.0).epsilon(0.15));

    const double r = 1.0 / std::sqrt(2.0);
    CHECK_THROWS_AS(induce(stem, elem(alg, {r, r, 0, 0})), SingularDelta);
}

TEST_CASE("representation formula holds for operator-valued stems") {
    const MatrixOperator a = cross_unit_operator();
    const auto alg = a.space().algebra;
    const auto stem = resolvent_stem(a);
    const Element i = Element::basis(alg, 0b01);
    const Element j = Element::basis(alg, 0b10);
    const std::complex<double> z(1.7, 0.6);

    const OperatorValue at_j = induce(stem, slice_point(j, z));
    const OperatorValue at_conj = induce(stem, slice_point(j, std::conj(z)));
    const OperatorValue predicted = representation_combine(at_j, at_conj, j, i);
    const OperatorValue actual = induce(stem, slice_point(i, z));
    CHECK((predicted.mat - actual.mat).norm() <= 1e-12);
}

TEST_CASE("integral stems reproduce the closed form of the exponential integral") {
    const auto alg = quaternions();
    const Element one = Element::scalar(alg, 1.0);
    // integrand pair of e^{-t z}
    const auto integrand = [one](double t, std::complex<double> z) {
        const double decay = std::exp(-t * z.real());
        return StemPair<Element>{one * (decay * std::cos(t * z.imag())),
                                 one * (-decay * std::sin(t * z.imag()))};
    };
    const auto stem = integral_stem<Element>(integrand, 0.0, 1.0, 1e-13);

    Rng rng(89);
    for (int trial = 0; trial < 5; ++trial) {
        const Element q = random_cone_element(alg, rng, 0.3, 2.0, 0.3, 2.0);
        const Element want = (Element::scalar(alg, 1.0) - cone_exp(q * -1.0)) * cone_inverse(q);
        CHECK(rel_diff(induce(stem, q), want) <= 1e-12);
    }
}

TEST_CASE("integral stems throw when the depth cap blocks convergence") {
    const auto alg = quaternions();
    const Element one = Element::scalar(alg, 1.0);
    const Element zero = Element::zero(alg);
    const auto jumpy = [one, zero](double t, std::complex<double>) {
        return StemPair<Element>{one * (t > 0.31830988618 ? 1.0 : -1.0), zero};
    };
    const auto stem = integral_stem<Element>(jumpy, 0.0, 1.0, 1e-14, 6);
    CHECK_THROWS_AS(stem->eval({0.0, 0.0}), QuadratureError);
}

TEST_CASE("operator values refuse mixed module spaces") {
    const auto alg = quaternions();
    const ModuleSpace s2{alg, 2};
    const ModuleSpace s3{alg, 3};
    const OperatorValue a{s2, Eigen::MatrixXd::Identity(8, 8)};
    const OperatorValue b{s3, Eigen::MatrixXd::Identity(12, 12)};
    CHECK_THROWS_AS(a + b, DimensionMismatch);
    CHECK_THROWS_AS(a * b, DimensionMismatch);
}
