#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "slicereg/algebra.hpp"
#include "slicereg/contour.hpp"
#include "slicereg/element.hpp"
#include "slicereg/errors.hpp"
#include "slicereg/json_io.hpp"
#include "slicereg/matrix_operator.hpp"
#include "slicereg/module_space.hpp"
#include "slicereg/report.hpp"
#include "slicereg/resolvent.hpp"
#include "slicereg/rng.hpp"
#include "slicereg/sampling.hpp"
#include "slicereg/semigroup.hpp"
#include "slicereg/stem.hpp"

namespace py = pybind11;

namespace {

using slicereg::AlgebraPtr;
using slicereg::CliffordAlgebra;
using slicereg::ContourSpec;
using slicereg::Element;
using slicereg::MatrixOperator;
using slicereg::ModuleSpace;
using slicereg::ModuleVector;
using slicereg::Rng;

using ElementStem = slicereg::Stem<Element>;
using ElementStemPtr = std::shared_ptr<ElementStem>;
using ElementFn = std::function<Element(const Element&)>;

// The C++ API passes shared_ptr-to-const handles around; the bound classes
// hold the mutable pointer type, so returns are unconsted at the boundary.
std::shared_ptr<CliffordAlgebra> share(const AlgebraPtr& p) {
    return std::const_pointer_cast<CliffordAlgebra>(p);
}

ElementStemPtr share(const slicereg::StemPtr<Element>& p) {
    return std::const_pointer_cast<ElementStem>(p);
}

void check_blade(const Element& e, unsigned blade) {
    if (blade >= static_cast<unsigned>(e.dim())) {
        throw slicereg::DimensionMismatch("blade index out of range");
    }
}

void check_component(const ModuleSpace& space, int u) {
    if (u < 0 || u >= space.components) {
        throw slicereg::DimensionMismatch("component index out of range");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string element_str(const Element& e) {
    std::string out;
    for (unsigned b = 0; b < static_cast<unsigned>(e.dim()); ++b) {
        const double c = e.coeff(b);
        if (c == 0.0) continue;
        std::string term = format_double(std::abs(c));
        if (b != 0) {
            const std::string blade = "e" + e.algebra()->blade_name(b);
            term = (term == "1") ? blade : term + " " + blade;
        }
        if (out.empty()) {
            out = (c < 0.0 ? "-" : "") + term;
        } else {
            out += (c < 0.0 ? " - " : " + ") + term;
        }
    }
    return out.empty() ? "0" : out;
}

slicereg::Json parse_json(const std::string& text) {
    try {
        return slicereg::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw slicereg::ParseError(std::string("invalid json: ") + e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_slicereg, m) {
    m.doc() = "Slice regular operator calculus over quaternions and Clifford algebras";
    m.attr("__version__") = "0.1.0";
    m.attr("MEMBERSHIP_TOL") = slicereg::kMembershipTol;
    m.attr("MAX_GENERATORS") = slicereg::kMaxGenerators;

    // Exceptions. The base translator is registered first so the more
    // specific ones, registered later, get the first chance to match.
    auto& base = py::register_exception<slicereg::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<slicereg::SignatureMismatch>(m, "SignatureMismatch", base.ptr());
    py::register_exception<slicereg::DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<slicereg::ConeMembershipError>(m, "ConeMembershipError", base.ptr());
    py::register_exception<slicereg::SingularDelta>(m, "SingularDelta", base.ptr());
    py::register_exception<slicereg::SingularSystem>(m, "SingularSystem", base.ptr());
    py::register_exception<slicereg::QuadratureError>(m, "QuadratureError", base.ptr());
    py::register_exception<slicereg::NotRightLinear>(m, "NotRightLinear", base.ptr());
    py::register_exception<slicereg::ParseError>(m, "ParseError", base.ptr());

    py::class_<CliffordAlgebra, std::shared_ptr<CliffordAlgebra>>(m, "Algebra",
            "Real Clifford algebra with n anticommuting generators squaring to -1; "
            "basis blades are indexed by bitmasks over the generators")
        .def(py::init([](int n) { return share(CliffordAlgebra::create(n)); }), py::arg("n"))
        .def_property_readonly("generators", &CliffordAlgebra::generators)
        .def_property_readonly("dim", &CliffordAlgebra::dim)
        .def("product_sign", &CliffordAlgebra::product_sign, py::arg("a"), py::arg("b"))
        .def("conj_sign", &CliffordAlgebra::conj_sign, py::arg("a"))
        .def("blade_square", &CliffordAlgebra::blade_square, py::arg("a"))
        .def("grade", &CliffordAlgebra::grade, py::arg("a"))
        .def("blade_name", &CliffordAlgebra::blade_name, py::arg("a"))
        .def("blade_from_name", &CliffordAlgebra::blade_from_name, py::arg("name"))
        .def("__eq__",
             [](const CliffordAlgebra& a, const CliffordAlgebra& b) {
                 return a.generators() == b.generators();
             },
             py::is_operator())
        .def("__repr__", [](const CliffordAlgebra& a) {
            return "Algebra(" + std::to_string(a.generators()) + ")";
        });

    m.def("algebra", [](int n) { return share(CliffordAlgebra::create(n)); }, py::arg("n"),
          "Shared algebra instance with n generators");

    py::class_<Element>(m, "Element",
            "One element of a Clifford algebra: a real coefficient per basis blade")
        .def_static("zero", &Element::zero, py::arg("algebra"))
        .def_static("scalar", &Element::scalar, py::arg("algebra"), py::arg("value"))
        .def_static("basis", &Element::basis, py::arg("algebra"), py::arg("blade"))
        .def_static("from_coeffs", &Element::from_coeffs, py::arg("algebra"), py::arg("coeffs"))
        .def_static("from_coeff_vector", &Element::from_coeff_vector, py::arg("algebra"),
                    py::arg("v"))
        .def_property_readonly("algebra", [](const Element& e) { return share(e.algebra()); })
        .def_property_readonly("dim", &Element::dim)
        .def_property_readonly("coeffs", [](const Element& e) { return e.coeffs(); })
        .def("coeff",
             [](const Element& e, unsigned blade) {
                 check_blade(e, blade);
                 return e.coeff(blade);
             },
             py::arg("blade"))
        .def("coeff",
             [](const Element& e, const std::string& name) {
                 return e.coeff(e.algebra()->blade_from_name(name));
             },
             py::arg("name"))
        .def("set_coeff",
             [](Element& e, unsigned blade, double value) {
                 check_blade(e, blade);
                 e.set_coeff(blade, value);
             },
             py::arg("blade"), py::arg("value"))
        .def("set_coeff",
             [](Element& e, const std::string& name, double value) {
                 e.set_coeff(e.algebra()->blade_from_name(name), value);
             },
             py::arg("name"), py::arg("value"))
        .def("conj", &Element::conj)
        .def("real_part", &Element::real_part)
        .def("imag_part", &Element::imag_part)
        .def("scalar_coeff", &Element::scalar_coeff)
        .def("is_scalar", &Element::is_scalar, py::arg("tol") = slicereg::kMembershipTol)
        .def("is_zero", &Element::is_zero, py::arg("tol") = 0.0)
        .def("euclid_norm", &Element::euclid_norm)
        .def("max_abs_coeff", &Element::max_abs_coeff)
        .def("clifford_norm", &Element::clifford_norm)
        .def("coeff_vector", &Element::coeff_vector)
        .def("left_matrix", &Element::left_matrix)
        .def("right_matrix", &Element::right_matrix)
        .def("__add__", [](const Element& a, const Element& b) { return a + b; })
        .def("__add__", [](const Element& a, double s) {
            return a + Element::scalar(a.algebra(), s);
        })
        .def("__radd__", [](const Element& a, double s) {
            return Element::scalar(a.algebra(), s) + a;
        })
        .def("__sub__", [](const Element& a, const Element& b) { return a - b; })
        .def("__sub__", [](const Element& a, double s) {
            return a - Element::scalar(a.algebra(), s);
        })
        .def("__rsub__", [](const Element& a, double s) {
            return Element::scalar(a.algebra(), s) - a;
        })
        .def("__neg__", [](const Element& a) { return -a; })
        .def("__mul__", [](const Element& a, const Element& b) { return a * b; })
        .def("__mul__", [](const Element& a, double s) { return a * s; })
        .def("__rmul__", [](const Element& a, double s) { return a * s; })
        .def("__truediv__", [](const Element& a, double s) { return a * (1.0 / s); })
        .def("__str__", &element_str)
        .def("__repr__", [](const Element& e) {
            return "Element(n=" + std::to_string(e.algebra()->generators()) + ": " +
                   element_str(e) + ")";
        });

    m.def("element",
          [](const std::shared_ptr<CliffordAlgebra>& algebra,
             const std::map<std::string, double>& coeffs) {
              Element out = Element::zero(algebra);
              for (const auto& [name, value] : coeffs) {
                  out.set_coeff(algebra->blade_from_name(name), value);
              }
              return out;
          },
          py::arg("algebra"), py::arg("coeffs"),
          "Element from a map of blade names ('' scalar, '1', '12', ...) to coefficients");

    m.def("commutator", &slicereg::commutator, py::arg("a"), py::arg("b"));
    m.def("dot", &slicereg::dot, py::arg("a"), py::arg("b"),
          "Euclidean inner product of the coefficient vectors");
    m.def("in_quadratic_cone", &slicereg::in_quadratic_cone, py::arg("q"),
          py::arg("tol") = slicereg::kMembershipTol);
    m.def("in_imaginary_sphere", &slicereg::in_imaginary_sphere, py::arg("q"),
          py::arg("tol") = slicereg::kMembershipTol);
    m.def("cone_decompose",
          [](const Element& q, double tol) {
              const slicereg::ConeParts parts = slicereg::cone_decompose(q, tol);
              return std::make_tuple(parts.re, parts.s, parts.axis);
          },
          py::arg("q"), py::arg("tol") = slicereg::kMembershipTol,
          "Splits a cone element into (re, s, axis); the axis is None for real q");
    m.def("cone_inverse", &slicereg::cone_inverse, py::arg("q"),
          py::arg("tol") = slicereg::kMembershipTol);
    m.def("cone_arg", &slicereg::cone_arg, py::arg("q"),
          py::arg("tol") = slicereg::kMembershipTol);
    m.def("cone_exp", &slicereg::cone_exp, py::arg("q"),
          py::arg("tol") = slicereg::kMembershipTol);
    m.def("slice_point", &slicereg::slice_point, py::arg("axis"), py::arg("z"),
          "re(z) + im(z) * axis for an axis on the imaginary sphere");
    m.def("sample_imaginary_sphere", &slicereg::sample_imaginary_sphere, py::arg("algebra"),
          py::arg("seed"), py::arg("count"));

    py::class_<ModuleSpace>(m, "ModuleSpace",
            "The free module A^m over a Clifford algebra, with the max component norm")
        .def(py::init([](const std::shared_ptr<CliffordAlgebra>& algebra, int components) {
                 if (components < 1) {
                     throw slicereg::DimensionMismatch("module space needs at least one component");
                 }
                 return ModuleSpace{algebra, components};
             }),
             py::arg("algebra"), py::arg("components"))
        .def_property_readonly("algebra",
                               [](const ModuleSpace& s) { return share(s.algebra); })
        .def_property_readonly("components",
                               [](const ModuleSpace& s) { return s.components; })
        .def_property_readonly("blade_dim", &ModuleSpace::blade_dim)
        .def_property_readonly("real_dim", &ModuleSpace::real_dim)
        .def("__eq__",
             [](const ModuleSpace& a, const ModuleSpace& b) { return slicereg::same_space(a, b); },
             py::is_operator())
        .def("__repr__", [](const ModuleSpace& s) {
            return "ModuleSpace(n=" + std::to_string(s.algebra->generators()) +
                   ", m=" + std::to_string(s.components) + ")";
        });

    py::class_<ModuleVector>(m, "ModuleVector")
        .def(py::init<ModuleSpace, std::vector<Element>>(), py::arg("space"), py::arg("parts"))
        .def_static("zero", &ModuleVector::zero, py::arg("space"))
        .def_static("basis",
                    [](const ModuleSpace& space, int component, unsigned blade) {
                        check_component(space, component);
                        return ModuleVector::basis(space, component, blade);
                    },
                    py::arg("space"), py::arg("component"), py::arg("blade") = 0u)
        .def_static("from_flat", &ModuleVector::from_flat, py::arg("space"), py::arg("flat"))
        .def_property_readonly("space", &ModuleVector::space)
        .def_property_readonly("components",
                               [](const ModuleVector& x) { return x.components(); })
        .def_property_readonly("parts",
                               [](const ModuleVector& x) {
                                   std::vector<Element> out;
                                   out.reserve(static_cast<std::size_t>(x.components()));
                                   for (int u = 0; u < x.components(); ++u) out.push_back(x.part(u));
                                   return out;
                               })
        .def("part",
             [](const ModuleVector& x, int u) {
                 check_component(x.space(), u);
                 return x.part(u);
             },
             py::arg("u"))
        .def("set_part",
             [](ModuleVector& x, int u, const Element& value) {
                 check_component(x.space(), u);
                 slicereg::require_same_algebra(x.part(u), value);
                 x.part(u) = value;
             },
             py::arg("u"), py::arg("value"))
        .def("left_scaled", &ModuleVector::left_scaled, py::arg("q"))
        .def("right_scaled", &ModuleVector::right_scaled, py::arg("q"))
        .def("norm", &ModuleVector::norm)
        .def("euclid_norm", &ModuleVector::euclid_norm)
        .def("flat", &ModuleVector::flat)
        .def("__add__", [](const ModuleVector& a, const ModuleVector& b) { return a + b; })
        .def("__sub__", [](const ModuleVector& a, const ModuleVector& b) { return a - b; })
        .def("__mul__", [](const ModuleVector& a, double s) { return a * s; })
        .def("__rmul__", [](const ModuleVector& a, double s) { return a * s; })
        .def("__repr__", [](const ModuleVector& x) {
            return "ModuleVector(n=" + std::to_string(x.space().algebra->generators()) +
                   ", m=" + std::to_string(x.components()) + ")";
        });

    m.def("left_action_matrix", &slicereg::left_action_matrix, py::arg("space"), py::arg("q"));
    m.def("right_action_matrix", &slicereg::right_action_matrix, py::arg("space"), py::arg("q"));

    py::class_<MatrixOperator>(m, "MatrixOperator",
            "Right-linear operator on A^m given by a matrix of left-multiplying entries")
        .def_static("zero", &MatrixOperator::zero, py::arg("space"))
        .def_static("identity", &MatrixOperator::identity, py::arg("space"))
        .def_static("from_entries", &MatrixOperator::from_entries, py::arg("space"),
                    py::arg("rows"))
        .def_static("from_embedding", &MatrixOperator::from_embedding, py::arg("space"),
                    py::arg("emb"), py::arg("tol") = 1e-9)
        .def_property_readonly("space", &MatrixOperator::space)
        .def_property_readonly("components",
                               [](const MatrixOperator& a) { return a.components(); })
        .def("entry",
             [](const MatrixOperator& a, int u, int v) {
                 check_component(a.space(), u);
                 check_component(a.space(), v);
                 return a.entry(u, v);
             },
             py::arg("u"), py::arg("v"))
        .def("set_entry",
             [](MatrixOperator& a, int u, int v, const Element& value) {
                 check_component(a.space(), u);
                 check_component(a.space(), v);
                 a.set_entry(u, v, value);
             },
             py::arg("u"), py::arg("v"), py::arg("value"))
        .def("apply", &MatrixOperator::apply, py::arg("x"))
        .def("__call__", &MatrixOperator::apply, py::arg("x"))
        .def("scalar_left", &MatrixOperator::scalar_left, py::arg("q"))
        .def("scalar_right", &MatrixOperator::scalar_right, py::arg("q"))
        .def("minus_real", &MatrixOperator::minus_real, py::arg("omega"))
        .def("embedding", &MatrixOperator::embedding)
        .def("__add__", [](const MatrixOperator& a, const MatrixOperator& b) { return a + b; })
        .def("__sub__", [](const MatrixOperator& a, const MatrixOperator& b) { return a - b; })
        .def("__mul__", [](const MatrixOperator& a, const MatrixOperator& b) { return a * b; })
        .def("__mul__", [](const MatrixOperator& a, double s) { return a * s; })
        .def("__rmul__", [](const MatrixOperator& a, double s) { return a * s; })
        .def("__repr__", [](const MatrixOperator& a) {
            return "MatrixOperator(n=" + std::to_string(a.space().algebra->generators()) +
                   ", m=" + std::to_string(a.components()) + ")";
        });

    py::class_<slicereg::NormBracket>(m, "NormBracket",
            "Certified bracket [lower, upper] around the module operator norm")
        .def_readonly("lower", &slicereg::NormBracket::lower)
        .def_readonly("upper", &slicereg::NormBracket::upper)
        .def("mid", &slicereg::NormBracket::mid)
        .def("width", &slicereg::NormBracket::width)
        .def("__repr__", [](const slicereg::NormBracket& b) {
            return "NormBracket(" + format_double(b.lower) + ", " + format_double(b.upper) + ")";
        });

    m.def("op_norm", &slicereg::op_norm, py::arg("a"), py::arg("seed") = 1,
          py::arg("samples") = 48);
    m.def("spectral_norm", &slicereg::spectral_norm, py::arg("m"));
    m.def("min_singular", &slicereg::min_singular, py::arg("m"));

    // Resolvent machinery.
    m.def("spherical_delta",
          py::overload_cast<const MatrixOperator&, const Element&>(&slicereg::spherical_delta),
          py::arg("a"), py::arg("q"),
          "Real embedding of the quadratic pencil A^2 - 2 re(q) A + |q|^2 Id");
    m.def("spherical_delta",
          py::overload_cast<const MatrixOperator&, double, double>(&slicereg::spherical_delta),
          py::arg("a"), py::arg("re"), py::arg("norm_sq"));
    m.def("delta_min_singular",
          py::overload_cast<const MatrixOperator&, const Element&>(&slicereg::delta_min_singular),
          py::arg("a"), py::arg("q"));
    m.def("delta_min_singular",
          py::overload_cast<const MatrixOperator&, double, double>(&slicereg::delta_min_singular),
          py::arg("a"), py::arg("re"), py::arg("norm_sq"));
    m.def("pseudo_resolvent",
          py::overload_cast<const MatrixOperator&, const Element&, double>(
              &slicereg::pseudo_resolvent),
          py::arg("a"), py::arg("q"), py::arg("rel_band") = 1e-13);
    m.def("pseudo_resolvent",
          py::overload_cast<const MatrixOperator&, double, double, double>(
              &slicereg::pseudo_resolvent),
          py::arg("a"), py::arg("re"), py::arg("norm_sq"), py::arg("rel_band") = 1e-13);
    m.def("spherical_resolvent", &slicereg::spherical_resolvent, py::arg("a"), py::arg("q"),
          py::arg("rel_band") = 1e-13);
    m.def("complex_resolvent", &slicereg::complex_resolvent, py::arg("a"), py::arg("axis"),
          py::arg("lam"), py::arg("rel_band") = 1e-13,
          "One-slice resolvent on the complex space of the axis");
    m.def("slice_system_min_singular", &slicereg::slice_system_min_singular, py::arg("a"),
          py::arg("axis"), py::arg("lam"));
    m.def("left_shift_min_singular", &slicereg::left_shift_min_singular, py::arg("a"),
          py::arg("q"));
    m.def("spherical_spectrum",
          [](const MatrixOperator& a, double cluster_tol) {
              std::vector<std::pair<double, double>> out;
              for (const slicereg::SpectrumPoint& p : slicereg::spherical_spectrum(a, cluster_tol)) {
                  out.emplace_back(p.re, p.s);
              }
              return out;
          },
          py::arg("a"), py::arg("cluster_tol") = 1e-8,
          "Spectral spheres as (re, s) pairs with s >= 0");
    m.def("vertex_shift_residual", &slicereg::vertex_shift_residual, py::arg("a"),
          py::arg("omega"), py::arg("q"));
    m.def("embedded_norm_upper", &slicereg::embedded_norm_upper, py::arg("space"), py::arg("emb"));

    py::class_<slicereg::RightEigenPair>(m, "RightEigenPair")
        .def_readonly("lam", &slicereg::RightEigenPair::lambda)
        .def_readonly("x", &slicereg::RightEigenPair::x)
        .def_readonly("residual", &slicereg::RightEigenPair::residual);
    m.def("right_eigenpair", &slicereg::right_eigenpair, py::arg("a"), py::arg("re"),
          py::arg("s"), py::arg("axis"));

    py::class_<slicereg::ResolventFactorization>(m, "ResolventFactorization")
        .def_readonly("q_regular", &slicereg::ResolventFactorization::q_regular)
        .def_readonly("lambda_regular", &slicereg::ResolventFactorization::lambda_regular)
        .def_readonly("conj_regular", &slicereg::ResolventFactorization::conj_regular)
        .def_readonly("membership_equivalent",
                      &slicereg::ResolventFactorization::membership_equivalent)
        .def_readonly("residual", &slicereg::ResolventFactorization::residual)
        .def("__repr__", [](const slicereg::ResolventFactorization& f) {
            return std::string("ResolventFactorization(membership=") +
                   (f.membership_equivalent ? "True" : "False") +
                   ", residual=" + format_double(f.residual) + ")";
        });
    m.def("verify_resolvent_factorization", &slicereg::verify_resolvent_factorization,
          py::arg("a"), py::arg("axis"), py::arg("lam"), py::arg("band") = 1e-6,
          "Factors the pseudo-resolvent through the one-slice resolvents at lam and conj(lam)");

    py::class_<slicereg::SectorProbeRow>(m, "SectorProbeRow")
        .def_readonly("re", &slicereg::SectorProbeRow::re)
        .def_readonly("s", &slicereg::SectorProbeRow::s)
        .def_readonly("min_singular", &slicereg::SectorProbeRow::min_singular)
        .def_readonly("resolvent_norm", &slicereg::SectorProbeRow::resolvent_norm)
        .def_readonly("k_product", &slicereg::SectorProbeRow::k_product)
        .def_readonly("regular", &slicereg::SectorProbeRow::regular);
    py::class_<slicereg::SectorProbe>(m, "SectorProbe")
        .def_readonly("sectorial", &slicereg::SectorProbe::sectorial)
        .def_readonly("spectrum_in_sector", &slicereg::SectorProbe::spectrum_in_sector)
        .def_readonly("k_estimate", &slicereg::SectorProbe::k_estimate)
        .def_readonly("largest_pass_angle", &slicereg::SectorProbe::largest_pass_angle)
        .def_readonly("rows", &slicereg::SectorProbe::rows);
    py::class_<slicereg::SectorProbeOptions>(m, "SectorProbeOptions")
        .def(py::init<>())
        .def_readwrite("slack", &slicereg::SectorProbeOptions::slack)
        .def_readwrite("radius_min", &slicereg::SectorProbeOptions::radius_min)
        .def_readwrite("radius_max", &slicereg::SectorProbeOptions::radius_max)
        .def_readwrite("radius_count", &slicereg::SectorProbeOptions::radius_count)
        .def_readwrite("axis_count", &slicereg::SectorProbeOptions::axis_count)
        .def_readwrite("seed", &slicereg::SectorProbeOptions::seed)
        .def_readwrite("singular_band", &slicereg::SectorProbeOptions::singular_band);
    m.def("sectorial_probe", &slicereg::sectorial_probe, py::arg("a"), py::arg("omega"),
          py::arg("delta"), py::arg("opts") = slicereg::SectorProbeOptions{},
          "Ray probe of spherical sectoriality with vertex omega and angle pi/2 + delta");

    // Reports.
    py::class_<slicereg::CheckRecord>(m, "CheckRecord")
        .def_readonly("check_id", &slicereg::CheckRecord::check_id)
        .def_readonly("anchor", &slicereg::CheckRecord::anchor)
        .def_readonly("operands", &slicereg::CheckRecord::operands)
        .def_readonly("residual", &slicereg::CheckRecord::residual)
        .def_readonly("tol", &slicereg::CheckRecord::tol)
        .def_readonly("passed", &slicereg::CheckRecord::pass)
        .def_readonly("wall_ms", &slicereg::CheckRecord::wall_ms)
        .def("__repr__", [](const slicereg::CheckRecord& c) {
            return "CheckRecord(" + c.check_id + (c.pass ? ": pass, " : ": FAIL, ") +
                   "residual=" + format_double(c.residual) + ", tol=" + format_double(c.tol) + ")";
        });
    py::class_<slicereg::SemigroupReport>(m, "Report")
        .def_property_readonly("checks",
                               [](const slicereg::SemigroupReport& r) { return r.checks; })
        .def("all_pass", &slicereg::SemigroupReport::all_pass)
        .def("worst_residual", &slicereg::SemigroupReport::worst_residual)
        .def("find",
             [](const slicereg::SemigroupReport& r,
                const std::string& check_id) -> std::optional<slicereg::CheckRecord> {
                 const slicereg::CheckRecord* c = r.find(check_id);
                 if (!c) return std::nullopt;
                 return *c;
             },
             py::arg("check_id"))
        .def("__len__", [](const slicereg::SemigroupReport& r) { return r.checks.size(); })
        .def("__repr__", [](const slicereg::SemigroupReport& r) {
            return "Report(" + std::to_string(r.checks.size()) + " checks, " +
                   (r.all_pass() ? "all pass" : "has failures") + ")";
        });

    // Quadrature and contour controls.
    py::class_<slicereg::QuadratureOptions>(m, "QuadratureOptions")
        .def(py::init<>())
        .def_readwrite("abs_tol", &slicereg::QuadratureOptions::abs_tol)
        .def_readwrite("min_panels", &slicereg::QuadratureOptions::min_panels)
        .def_readwrite("max_doublings", &slicereg::QuadratureOptions::max_doublings)
        .def_readwrite("first_block", &slicereg::QuadratureOptions::first_block)
        .def_readwrite("growth", &slicereg::QuadratureOptions::growth)
        .def_readwrite("tail_tol", &slicereg::QuadratureOptions::tail_tol)
        .def_readwrite("max_blocks", &slicereg::QuadratureOptions::max_blocks);

    py::class_<ContourSpec>(m, "ContourSpec",
            "Sector boundary path in the slice of the axis: two rays and an arc")
        .def(py::init([](const Element& axis, double radius, double opening, double vertex,
                         double ray_length, int min_panels, int max_doublings, int max_blocks,
                         double tol) {
                 return ContourSpec{axis,       radius,        opening,    vertex, ray_length,
                                    min_panels, max_doublings, max_blocks, tol};
             }),
             py::arg("axis"), py::arg("radius") = 1.0,
             py::arg("opening") = 1.7278759594743864, py::arg("vertex") = 0.0,
             py::arg("ray_length") = 0.0, py::arg("min_panels") = 2,
             py::arg("max_doublings") = 12, py::arg("max_blocks") = 48, py::arg("tol") = 1e-9)
        .def_readwrite("axis", &ContourSpec::axis)
        .def_readwrite("radius", &ContourSpec::radius)
        .def_readwrite("opening", &ContourSpec::opening)
        .def_readwrite("vertex", &ContourSpec::vertex)
        .def_readwrite("ray_length", &ContourSpec::ray_length)
        .def_readwrite("min_panels", &ContourSpec::min_panels)
        .def_readwrite("max_doublings", &ContourSpec::max_doublings)
        .def_readwrite("max_blocks", &ContourSpec::max_blocks)
        .def_readwrite("tol", &ContourSpec::tol);

    // Semigroups.
    m.def("exp_semigroup", &slicereg::exp_semigroup, py::arg("a"), py::arg("q"),
          py::arg("tol") = 1e-14, py::arg("max_terms") = 600,
          "Exponential series at a cone point, as a real embedding matrix");
    m.def("resolvent_slice_power", &slicereg::resolvent_slice_power, py::arg("a"), py::arg("q"),
          py::arg("k"), py::arg("rel_band") = 1e-13,
          "k-fold slice product of the resolvent stem, induced at q");
    m.def("laplace_transform", &slicereg::laplace_transform, py::arg("a"), py::arg("q"),
          py::arg("k"), py::arg("provider") = py::none(),
          py::arg("opt") = slicereg::QuadratureOptions{},
          "Integral of T(t) t^(k-1) e^(-t q) / (k-1)! over the half line");
    m.def("laplace_norm_bound_check", &slicereg::laplace_norm_bound_check, py::arg("a"),
          py::arg("omega"), py::arg("m_bound"), py::arg("q_samples"), py::arg("k_max"),
          py::arg("t_grid") = std::vector<double>{0.25, 0.5, 1.0, 2.0});
    m.def("yosida_approximant", &slicereg::yosida_approximant, py::arg("a"), py::arg("k"),
          "Bounded approximant k A C_k(A) at a real regular point k > 0");
    m.def("contour_semigroup", &slicereg::contour_semigroup, py::arg("a"), py::arg("spec"),
          py::arg("t"), "Semigroup at real t >= 0 through the sector contour");
    m.def("contour_semigroup_slice", &slicereg::contour_semigroup_slice, py::arg("a"),
          py::arg("spec"), py::arg("p"), py::arg("q"),
          "Contour semigroup with the scalar weight replaced by the shifted slice exponential");
    m.def("noncommutative_exp", &slicereg::noncommutative_exp, py::arg("axis"), py::arg("z"),
          py::arg("p"), py::arg("q"),
          "Shifted exponential with p kept left of the cone powers of q");
    m.def("semigroup_law_check", &slicereg::semigroup_law_check, py::arg("a"), py::arg("p"),
          py::arg("q"), py::arg("tol"),
          "T(p+q) against the slice product for commuting cone points, with the pointwise defect");
    m.def("generator_estimate", &slicereg::generator_estimate, py::arg("space"),
          py::arg("provider"), py::arg("x"), py::arg("h_grid"),
          "Richardson extrapolation of (T(h) x - x) / h along the h grid");
    m.def("growth_bound_check", &slicereg::growth_bound_check, py::arg("a"),
          py::arg("delta_prime"), py::arg("omega"), py::arg("radii"), py::arg("axis_count") = 2,
          py::arg("seed") = 7);
    m.def("converse_sectoriality_check", &slicereg::converse_sectoriality_check, py::arg("a"),
          py::arg("omega"), py::arg("radii"), py::arg("eta_prime") = 0.3,
          py::arg("axis_count") = 2, py::arg("seed") = 5);

    // Element-valued stems.
    py::class_<ElementStem, ElementStemPtr>(m, "ElementStem",
            "Holomorphic stem (F1, F2) inducing a slice function on the quadratic cone")
        .def("eval",
             [](const ElementStem& s, std::complex<double> z) {
                 const slicereg::StemPair<Element> p = s.eval(z);
                 return std::make_pair(p.f1, p.f2);
             },
             py::arg("z"), "Stem pair (F1, F2) at the slice coordinate z")
        .def("induce",
             [](const ElementStem& s, const Element& q) { return slicereg::induce(s, q); },
             py::arg("q"), "Value of the induced slice function at a cone point")
        .def("__call__",
             [](const ElementStem& s, const Element& q) { return slicereg::induce(s, q); },
             py::arg("q"))
        .def("cr_residual",
             [](const ElementStem& s, std::complex<double> z, double h) {
                 return slicereg::cr_residual(s, z, h);
             },
             py::arg("z"), py::arg("h") = 1e-5,
             "Centered-difference Cauchy-Riemann defect of the stem pair at z");

    m.def("constant_stem",
          [](const Element& value) { return share(slicereg::constant_stem<Element>(value)); },
          py::arg("value"));
    m.def("power_series_stem",
          [](std::vector<Element> coeffs) {
              return share(slicereg::power_series_stem<Element>(std::move(coeffs)));
          },
          py::arg("coeffs"), "Series with left coefficients: q -> sum_k c_k q^k");
    m.def("product_stem",
          [](const ElementStemPtr& lhs, const ElementStemPtr& rhs) {
              return share(slicereg::product_stem<Element>(lhs, rhs));
          },
          py::arg("lhs"), py::arg("rhs"), "Slice product of two stems");
    m.def("exp_stem",
          [](const Element& x, const Element& p, double tol, int max_terms) {
              return share(slicereg::exp_stem<Element>(x, p, tol, max_terms));
          },
          py::arg("x"), py::arg("p"), py::arg("tol") = 1e-14, py::arg("max_terms") = 400,
          "Exponential with left coefficient x and shift p: q -> sum_k x^k (p + q)^k / k!");
    m.def("representation_combine",
          [](const Element& at_j, const Element& at_conj, const Element& j, const Element& k) {
              return slicereg::representation_combine<Element>(at_j, at_conj, j, k);
          },
          py::arg("at_j"), py::arg("at_conj"), py::arg("j"), py::arg("k"),
          "Recovers the value on the k slice from the two values on the j slice");

    py::class_<slicereg::SliceSampleReport>(m, "SliceSampleReport")
        .def_readonly("right_slice", &slicereg::SliceSampleReport::right_slice)
        .def_readonly("worst_defect", &slicereg::SliceSampleReport::worst_defect)
        .def_readonly("worst_point", &slicereg::SliceSampleReport::worst_point)
        .def_readonly("worst_defect_value", &slicereg::SliceSampleReport::worst_defect_value)
        .def("__repr__", [](const slicereg::SliceSampleReport& r) {
            return std::string("SliceSampleReport(right_slice=") +
                   (r.right_slice ? "True" : "False") +
                   ", worst_defect=" + format_double(r.worst_defect) + ")";
        });

    m.def("is_right_slice",
          [](const ElementFn& f, const std::shared_ptr<CliffordAlgebra>& algebra,
             std::uint64_t seed, int axis_count, int point_count, double h, double tol) {
              return slicereg::is_right_slice(f, algebra, seed, axis_count, point_count, h, tol);
          },
          py::arg("f"), py::arg("algebra"), py::arg("seed") = 11, py::arg("axis_count") = 4,
          py::arg("point_count") = 6, py::arg("h") = 1e-5, py::arg("tol") = 1e-6,
          "Sampled verdict on whether a raw function is a right slice function");
    m.def("slice_cr_defect", &slicereg::slice_cr_defect, py::arg("f"), py::arg("axis"),
          py::arg("u"), py::arg("v"), py::arg("h") = 1e-5);
    m.def("slice_representation_defect", &slicereg::slice_representation_defect, py::arg("f"),
          py::arg("j"), py::arg("k"), py::arg("u"), py::arg("v"));
    m.def("exp_defect_limit", &slicereg::exp_defect_limit, py::arg("x"), py::arg("p"),
          py::arg("q"),
          "Limit of the scaled shift defect of the exponential stem; "
          "x^2 (pq - qp) for slice exponentials");

    // Sampling.
    py::class_<Rng>(m, "Rng", "Deterministic random source with a pinned sequence")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next_u64", &Rng::next_u64)
        .def("uniform", py::overload_cast<>(&Rng::uniform))
        .def("uniform", py::overload_cast<double, double>(&Rng::uniform), py::arg("lo"),
             py::arg("hi"))
        .def("uniform_int", &Rng::uniform_int, py::arg("lo"), py::arg("hi"))
        .def("normal", &Rng::normal);

    m.def("random_element", &slicereg::random_element, py::arg("algebra"), py::arg("rng"),
          py::arg("scale") = 1.0);
    m.def("random_axis", &slicereg::random_axis, py::arg("algebra"), py::arg("rng"));
    m.def("random_cone_element", &slicereg::random_cone_element, py::arg("algebra"),
          py::arg("rng"), py::arg("re_lo"), py::arg("re_hi"), py::arg("s_lo"), py::arg("s_hi"));
    m.def("random_vector", &slicereg::random_vector, py::arg("space"), py::arg("rng"),
          py::arg("scale") = 1.0);
    m.def("random_operator", &slicereg::random_operator, py::arg("space"), py::arg("rng"),
          py::arg("scale") = 1.0);
    m.def("random_sectorial_operator", &slicereg::random_sectorial_operator, py::arg("space"),
          py::arg("rng"), py::arg("delta"), py::arg("margin") = 0.1, py::arg("scale") = 1.0);

    // JSON bridge.
    m.def("double_repr", &slicereg::double_repr, py::arg("v"),
          "Shortest decimal string that parses back to the same binary64");
    m.def("element_to_json",
          [](const Element& e) { return slicereg::element_to_json(e).dump(); }, py::arg("e"));
    m.def("element_from_json",
          [](const std::string& text) { return slicereg::element_from_json(parse_json(text)); },
          py::arg("text"));
    m.def("operator_to_json",
          [](const MatrixOperator& a) { return slicereg::operator_to_json(a).dump(); },
          py::arg("a"));
    m.def("operator_from_json",
          [](const std::string& text) { return slicereg::operator_from_json(parse_json(text)); },
          py::arg("text"));
    m.def("stem_to_json",
          [](const std::vector<Element>& coeffs) { return slicereg::stem_to_json(coeffs).dump(); },
          py::arg("coeffs"));
    m.def("stem_from_json",
          [](const std::string& text) { return share(slicereg::stem_from_json(parse_json(text))); },
          py::arg("text"));
    m.def("report_to_json",
          [](const slicereg::SemigroupReport& r) { return slicereg::report_to_json(r).dump(2); },
          py::arg("report"));
    m.def("report_to_csv", &slicereg::report_to_csv, py::arg("report"));
}
