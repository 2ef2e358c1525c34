#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "slicereg/contour.hpp"
#include "slicereg/errors.hpp"
#include "slicereg/json_io.hpp"
#include "slicereg/matrix_exp.hpp"
#include "slicereg/resolvent.hpp"
#include "slicereg/rng.hpp"
#include "slicereg/sampling.hpp"
#include "slicereg/semigroup.hpp"

namespace {

using namespace slicereg;

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct TaskContext {
    int n = 2;
    int m = 2;
    std::uint64_t seed = 7;
    double tol = 1e-8;
    std::string out_dir = ".";
    std::optional<MatrixOperator> op;
    Json params = Json::object();
    SemigroupReport report;
};

std::string num_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string cone_label(const Element& q) {
    const ConeParts parts = cone_decompose(q);
    return "(" + num_label(parts.re) + "," + num_label(parts.s) + ")";
}

void record(TaskContext& ctx, std::string check_id, std::string anchor, std::string operands,
            double residual, double tol, bool pass, double wall_ms) {
    ctx.report.checks.push_back({std::move(check_id), std::move(anchor), std::move(operands),
                                 residual, tol, pass, wall_ms});
}

double ms_between(std::chrono::steady_clock::time_point a,
                  std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

Element unit_generator(const AlgebraPtr& alg, int k) {
    return Element::basis(alg, 1u << k);
}

ModuleSpace context_space(const TaskContext& ctx) {
    if (ctx.op) return ctx.op->space();
    return ModuleSpace{CliffordAlgebra::create(ctx.n), ctx.m};
}

const Json* task_params(const TaskContext& ctx, const std::string& task) {
    if (ctx.params.contains(task) && ctx.params[task].is_object()) return &ctx.params[task];
    return nullptr;
}

double param_double(const TaskContext& ctx, const std::string& task, const std::string& key,
                    double fallback) {
    const Json* p = task_params(ctx, task);
    if (!p || !p->contains(key)) return fallback;
    if (!(*p)[key].is_number()) throw ParseError("param " + task + "." + key + " must be a number");
    return (*p)[key].get<double>();
}

std::vector<double> param_list(const TaskContext& ctx, const std::string& task,
                               const std::string& key, std::vector<double> fallback) {
    const Json* p = task_params(ctx, task);
    if (!p || !p->contains(key)) return fallback;
    const Json& arr = (*p)[key];
    if (!arr.is_array() || arr.empty()) {
        throw ParseError("param " + task + "." + key + " must be a nonempty array");
    }
    std::vector<double> out;
    for (const Json& v : arr) {
        if (!v.is_number()) throw ParseError("param " + task + "." + key + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::optional<Element> param_element(const TaskContext& ctx, const std::string& task,
                                     const std::string& key, const AlgebraPtr& alg) {
    const Json* p = task_params(ctx, task);
    if (!p || !p->contains(key)) return std::nullopt;
    Element e = element_from_json((*p)[key]);
    if (e.algebra()->generators() != alg->generators()) {
        throw ParseError("param " + task + "." + key + " lives in a different algebra");
    }
    return e;
}

MatrixOperator general_fixture(const TaskContext& ctx) {
    if (ctx.op) return *ctx.op;
    Rng rng(ctx.seed * 8191 + 11);
    return random_operator(context_space(ctx), rng, 0.8);
}

MatrixOperator sectorial_fixture(const TaskContext& ctx) {
    if (ctx.op) return *ctx.op;
    Rng rng(ctx.seed * 8191 + 23);
    return random_sectorial_operator(context_space(ctx), rng, 0.5, 0.1, 0.5);
}

MatrixOperator small_sectorial_fixture(const TaskContext& ctx) {
    if (ctx.op) return *ctx.op;
    Rng rng(ctx.seed * 8191 + 37);
    return random_sectorial_operator(context_space(ctx), rng, 0.4, 0.001, 0.004);
}

MatrixOperator diagonal_decaying_fixture(const TaskContext& ctx) {
    if (ctx.op) return *ctx.op;
    const ModuleSpace space = context_space(ctx);
    Rng rng(ctx.seed * 8191 + 53);
    MatrixOperator a = MatrixOperator::zero(space);
    for (int u = 0; u < space.components; ++u) {
        a.set_entry(u, u, random_cone_element(space.algebra, rng, -1.2, -0.4, 0.0, 0.6));
    }
    return a;
}

std::string csv_row4(double a, double b, double c, double d) {
    return double_repr(a) + "," + double_repr(b) + "," + double_repr(c) + "," + double_repr(d) +
           "\n";
}

// ---------------------------------------------------------------------------
// Tasks. Each appends check records and may write a per-task artifact.
// ---------------------------------------------------------------------------

void task_remark58(TaskContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    const auto alg = CliffordAlgebra::create(2);
    const ModuleSpace space{alg, 2};
    const Element i = unit_generator(alg, 0);
    const Element j = unit_generator(alg, 1);
    const Element zero = Element::zero(alg);
    const MatrixOperator a = MatrixOperator::from_entries(space, {{zero, i}, {j, zero}});

    std::vector<SpectrumPoint> pts = spherical_spectrum(a);
    std::sort(pts.begin(), pts.end(), [](const SpectrumPoint& x, const SpectrumPoint& y) {
        return x.re < y.re || (x.re == y.re && x.s < y.s);
    });
    const double r2 = 0.7071067811865476;
    double worst = kInf;
    if (pts.size() == 2) {
        worst = std::max(std::abs(pts[0].re + r2), std::abs(pts[0].s - r2));
        worst = std::max(worst, std::abs(pts[1].re - r2));
        worst = std::max(worst, std::abs(pts[1].s - r2));
    }
    const auto mid = std::chrono::steady_clock::now();
    record(ctx, "remark58.spectrum", "two-circle-spectrum", "builtin operator", worst, 1e-10,
           worst <= 1e-10, ms_between(start, mid));

    const double inv_r2 = 1.0 / std::sqrt(2.0);
    const Element mu = (i + j) * inv_r2;
    const Element lambda = Element::scalar(alg, inv_r2) + i * inv_r2;

    const double delta_mu = delta_min_singular(a, mu);
    record(ctx, "remark58.delta-regular", "pencil-regularity", "mu=" + cone_label(mu), delta_mu,
           1e-3, delta_mu > 1e-3, 0.0);
    const double shift_mu = left_shift_min_singular(a, mu);
    record(ctx, "remark58.shift-singular", "left-shift-singularity", "mu=" + cone_label(mu),
           shift_mu, 1e-10, shift_mu < 1e-10, 0.0);
    const double delta_lambda = delta_min_singular(a, lambda);
    record(ctx, "remark58.delta-singular", "pencil-regularity", "lambda=" + cone_label(lambda),
           delta_lambda, 1e-10, delta_lambda < 1e-10, 0.0);
    const double shift_lambda = left_shift_min_singular(a, lambda);
    record(ctx, "remark58.shift-regular", "left-shift-singularity",
           "lambda=" + cone_label(lambda), shift_lambda, 1e-3, shift_lambda > 1e-3, 0.0);

    std::string csv = "r,s,min_singular_value,resolvent_norm\n";
    for (const SpectrumPoint& pt : pts) {
        csv += csv_row4(pt.re, pt.s, delta_min_singular(a, pt.re, pt.re * pt.re + pt.s * pt.s),
                        kInf);
    }
    write_file_atomic(ctx.out_dir + "/remark58.csv", csv);
}

void task_spectrum(TaskContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    const MatrixOperator a = general_fixture(ctx);
    const ModuleSpace& space = a.space();
    std::vector<SpectrumPoint> pts = spherical_spectrum(a);
    std::sort(pts.begin(), pts.end(), [](const SpectrumPoint& x, const SpectrumPoint& y) {
        return x.re < y.re || (x.re == y.re && x.s < y.s);
    });
    std::string csv = "r,s,min_singular_value,resolvent_norm\n";
    double worst = 0.0;
    for (const SpectrumPoint& pt : pts) {
        const double min_sing = delta_min_singular(a, pt.re, pt.re * pt.re + pt.s * pt.s);
        worst = std::max(worst, min_sing);
        double norm = kInf;
        try {
            const Element q = Element::scalar(space.algebra, pt.re) +
                              unit_generator(space.algebra, 0) * pt.s;
            norm = embedded_norm_upper(space, spherical_resolvent(a, q));
        } catch (const SingularDelta&) {
            norm = kInf;
        }
        csv += csv_row4(pt.re, pt.s, min_sing, norm);
    }
    write_file_atomic(ctx.out_dir + "/spectrum.csv", csv);
    const auto end = std::chrono::steady_clock::now();
    record(ctx, "spectrum.pencil-kernel", "spectrum-emission",
           "points=" + std::to_string(pts.size()), worst, 1e-6, worst <= 1e-6,
           ms_between(start, end));
}

void task_resolvent(TaskContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    const MatrixOperator a = general_fixture(ctx);
    const ModuleSpace& space = a.space();
    const AlgebraPtr alg = space.algebra;
    double radius = 0.0;
    for (const SpectrumPoint& pt : spherical_spectrum(a)) {
        radius = std::max(radius, std::hypot(pt.re, pt.s));
    }
    const Element axis = unit_generator(alg, 0);

    std::complex<double> lambda(radius + 1.0, 0.5);
    if (const auto q_param = param_element(ctx, "resolvent", "q", alg)) {
        const ConeParts parts = cone_decompose(*q_param);
        lambda = {parts.re, parts.s};
    }
    const ResolventFactorization fact = verify_resolvent_factorization(a, axis, lambda);
    const auto mid = std::chrono::steady_clock::now();
    const std::string operands =
        "lambda=(" + num_label(lambda.real()) + "," + num_label(lambda.imag()) + ")";
    record(ctx, "resolvent.factorization", "resolvent-factorization", operands,
           fact.residual >= 0.0 ? fact.residual : kInf, 1e-9,
           fact.residual >= 0.0 && fact.residual <= 1e-9, ms_between(start, mid));
    record(ctx, "resolvent.membership", "resolvent-set-membership", operands,
           fact.membership_equivalent ? 0.0 : 1.0, 0.5, fact.membership_equivalent, 0.0);

    const Element q = Element::scalar(alg, lambda.real()) + axis * lambda.imag();
    const Eigen::MatrixXd res = spherical_resolvent(a, q);
    Json artifact;
    artifact["point"] = element_to_json(q);
    artifact["resolvent"] = operator_to_json(MatrixOperator::from_embedding(space, res));
    write_file_atomic(ctx.out_dir + "/resolvent.json", artifact.dump(2) + "\n");
}

void task_contour(TaskContext& ctx) {
    const MatrixOperator a = sectorial_fixture(ctx);
    const ModuleSpace& space = a.space();
    const AlgebraPtr alg = space.algebra;
    ContourSpec spec{unit_generator(alg, 0)};
    spec.tol = ctx.tol;
    spec.radius = param_double(ctx, "contour", "radius", 1.0);
    spec.opening = param_double(ctx, "contour", "opening", 0.55 * kPi);

    const std::vector<double> t_grid =
        param_list(ctx, "contour", "t", {0.1, 0.5, 1.0, 2.0});
    for (std::size_t idx = 0; idx < t_grid.size(); ++idx) {
        const double t = t_grid[idx];
        const auto start = std::chrono::steady_clock::now();
        const Eigen::MatrixXd via_contour = contour_semigroup(a, spec, t);
        const Eigen::MatrixXd via_series = exp_semigroup(a, Element::scalar(alg, t));
        const double rel =
            (via_contour - via_series).norm() / std::max(1.0, via_series.norm());
        const auto end = std::chrono::steady_clock::now();
        record(ctx, "contour.exp-t" + std::to_string(idx), "sector-contour-representation",
               "t=" + num_label(t), rel, 10.0 * spec.tol, rel <= 10.0 * spec.tol,
               ms_between(start, end));
    }

    if (alg->generators() >= 2) {
        const auto start = std::chrono::steady_clock::now();
        const double t = t_grid[t_grid.size() / 2];
        const Eigen::MatrixXd base = contour_semigroup(a, spec, t);
        ContourSpec moved{unit_generator(alg, 1)};
        moved.tol = ctx.tol;
        moved.radius = 2.0 * spec.radius;
        moved.opening = 0.6 * kPi;
        const Eigen::MatrixXd other = contour_semigroup(a, moved, t);
        const double gap = (other - base).norm() / std::max(1.0, base.norm());
        const auto end = std::chrono::steady_clock::now();
        record(ctx, "contour.invariance", "contour-parameter-invariance", "t=" + num_label(t),
               gap, 2.0 * spec.tol, gap <= 2.0 * spec.tol, ms_between(start, end));
    }
}

void task_laplace(TaskContext& ctx) {
    const MatrixOperator a = diagonal_decaying_fixture(ctx);
    const ModuleSpace& space = a.space();
    const AlgebraPtr alg = space.algebra;
    double bound = -kInf;
    for (const SpectrumPoint& pt : spherical_spectrum(a)) bound = std::max(bound, pt.re);
    const double omega = param_double(ctx, "laplace", "omega", bound + 0.02);
    const int k_max = static_cast<int>(param_double(ctx, "laplace", "k_max", 2.0));
    const int sample_count = static_cast<int>(param_double(ctx, "laplace", "samples", 3.0));

    Rng rng(ctx.seed * 8191 + 71);
    std::vector<Element> samples;
    for (int i = 0; i < sample_count; ++i) {
        samples.push_back(
            random_cone_element(alg, rng, omega + 0.4, omega + 1.2, 0.0, 0.5));
    }

    for (std::size_t qi = 0; qi < samples.size(); ++qi) {
        for (int k = 1; k <= k_max; ++k) {
            const auto start = std::chrono::steady_clock::now();
            const Eigen::MatrixXd via_integral = laplace_transform(a, samples[qi], k);
            const Eigen::MatrixXd via_stems = resolvent_slice_power(a, samples[qi], k);
            const double rel =
                (via_integral - via_stems).norm() / std::max(1e-30, via_stems.norm());
            const auto end = std::chrono::steady_clock::now();
            record(ctx,
                   "laplace.match-q" + std::to_string(qi) + "-k" + std::to_string(k),
                   "laplace-resolvent-power", "q=" + cone_label(samples[qi]), rel, 1e-6,
                   rel <= 1e-6, ms_between(start, end));
        }
    }

    const std::vector<double> t_grid = {0.25, 0.5, 1.0, 2.0};
    double m_bound = 0.0;
    for (const double t : t_grid) {
        const double norm =
            embedded_norm_upper(space, exp_semigroup(a, Element::scalar(alg, t)));
        m_bound = std::max(m_bound, norm * std::exp(-omega * t));
    }
    m_bound *= 1.0 + 1e-9;
    const SemigroupReport bound_report =
        laplace_norm_bound_check(a, omega, m_bound, samples, k_max, t_grid);
    for (const CheckRecord& c : bound_report.checks) ctx.report.checks.push_back(c);
}

void task_law(TaskContext& ctx) {
    const MatrixOperator a = general_fixture(ctx);
    const AlgebraPtr alg = a.space().algebra;
    const Element axis = unit_generator(alg, 0);
    Element p = Element::scalar(alg, 0.3) + axis * 0.2;
    Element q = Element::scalar(alg, 0.1) + axis * 0.5;
    if (const auto pp = param_element(ctx, "law", "p", alg)) p = *pp;
    if (const auto qq = param_element(ctx, "law", "q", alg)) q = *qq;
    const SemigroupReport law = semigroup_law_check(a, p, q, ctx.tol);
    for (const CheckRecord& c : law.checks) ctx.report.checks.push_back(c);
}

void task_probe(TaskContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    const MatrixOperator a = sectorial_fixture(ctx);
    const double omega = param_double(ctx, "probe", "omega", 0.0);
    const double delta = param_double(ctx, "probe", "delta", 0.45);
    SectorProbeOptions opts;
    opts.seed = ctx.seed;
    const SectorProbe probe = sectorial_probe(a, omega, delta, opts);
    const auto end = std::chrono::steady_clock::now();
    const std::string operands =
        "omega=" + num_label(omega) + " delta=" + num_label(delta);
    record(ctx, "probe.sectorial", "sector-probe", operands, probe.k_estimate, kInf,
           probe.sectorial, ms_between(start, end));
    record(ctx, "probe.spectrum-sector", "sector-probe", operands,
           probe.largest_pass_angle, kInf, probe.spectrum_in_sector, 0.0);

    std::vector<SectorProbeRow> rows = probe.rows;
    std::sort(rows.begin(), rows.end(), [](const SectorProbeRow& x, const SectorProbeRow& y) {
        return x.re < y.re || (x.re == y.re && x.s < y.s);
    });
    std::string csv = "r,s,min_singular_value,resolvent_norm\n";
    for (const SectorProbeRow& row : rows) {
        csv += csv_row4(row.re, row.s, row.min_singular, row.resolvent_norm);
    }
    write_file_atomic(ctx.out_dir + "/probe.csv", csv);
}

void task_yosida(TaskContext& ctx) {
    const MatrixOperator a = small_sectorial_fixture(ctx);
    const std::vector<double> ks = param_list(ctx, "yosida", "k", {4.0, 16.0, 64.0, 256.0});
    const double t_max = param_double(ctx, "yosida", "t_max", 2.0);
    const Eigen::MatrixXd emb = a.embedding();

    std::vector<double> errs;
    for (std::size_t idx = 0; idx < ks.size(); ++idx) {
        const auto start = std::chrono::steady_clock::now();
        const Eigen::MatrixXd yk = yosida_approximant(a, ks[idx]).embedding();
        double worst = 0.0;
        for (int step = 1; step <= 8; ++step) {
            const double t = t_max * step / 8.0;
            worst = std::max(
                worst, (real_matrix_exp(t * yk) - real_matrix_exp(t * emb)).norm());
        }
        errs.push_back(worst);
        const auto end = std::chrono::steady_clock::now();
        const bool last = idx + 1 == ks.size();
        record(ctx, "yosida.k" + std::to_string(static_cast<long long>(ks[idx])),
               "yosida-convergence", "k=" + num_label(ks[idx]), worst,
               last ? 1e-5 : kInf, !last || worst < 1e-5, ms_between(start, end));
    }
    double worst_ratio = 0.0;
    for (std::size_t i = 1; i < errs.size(); ++i) {
        worst_ratio = std::max(worst_ratio, errs[i] / std::max(errs[i - 1], 1e-300));
    }
    record(ctx, "yosida.monotone", "yosida-convergence", "k grid", worst_ratio, 1.0,
           worst_ratio <= 1.0, 0.0);
}

// Writes one CSV row per grid point (re, s): the certified resolvent norm and
// the product |q - omega| * norm, rows ordered by (re, s). Points where the
// pencil is singular carry the "singular" flag instead of finite columns.
std::size_t emit_sector_scan(const MatrixOperator& a, double omega,
                             const std::vector<double>& re_grid,
                             const std::vector<double>& s_grid, const std::string& out_path) {
    const ModuleSpace& space = a.space();
    const AlgebraPtr alg = space.algebra;
    const Element axis = unit_generator(alg, 0);

    struct ScanRow {
        double re;
        double s;
        double norm;
        double k_product;
        bool singular;
    };
    std::vector<ScanRow> rows;
    for (const double re : re_grid) {
        for (const double s : s_grid) {
            const Element q = Element::scalar(alg, re) + axis * s;
            const double dist = std::hypot(re - omega, s);
            ScanRow row{re, s, kInf, kInf, false};
            try {
                row.norm = embedded_norm_upper(space, spherical_resolvent(a, q, 1e-10));
                row.k_product = dist * row.norm;
            } catch (const SingularDelta&) {
                row.singular = true;
            }
            rows.push_back(row);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ScanRow& x, const ScanRow& y) {
        return x.re < y.re || (x.re == y.re && x.s < y.s);
    });

    std::string csv = "re,s,resolvent_norm,k_product,flag\n";
    for (const ScanRow& row : rows) {
        csv += double_repr(row.re) + "," + double_repr(row.s) + "," + double_repr(row.norm) +
               "," + double_repr(row.k_product) + "," + (row.singular ? "singular" : "ok") +
               "\n";
    }
    write_file_atomic(out_path, csv);
    return rows.size();
}

void task_scan(TaskContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    const MatrixOperator a =
        ctx.op ? *ctx.op : MatrixOperator::identity(context_space(ctx)) * -1.0;
    double bound = -kInf;
    for (const SpectrumPoint& pt : spherical_spectrum(a)) bound = std::max(bound, pt.re);
    const double omega = param_double(ctx, "scan", "omega", bound);

    const std::vector<double> re_spec =
        param_list(ctx, "scan", "re", {omega + 0.25, omega + 2.0, 8.0});
    const std::vector<double> s_spec = param_list(ctx, "scan", "s", {0.0, 1.5, 7.0});
    if (re_spec.size() != 3 || s_spec.size() != 3) {
        throw ParseError("scan grid specs must be [lo, hi, count]");
    }
    const auto grid = [](const std::vector<double>& spec) {
        const int count = std::max(1, static_cast<int>(spec[2]));
        std::vector<double> out;
        for (int i = 0; i < count; ++i) {
            out.push_back(count == 1 ? spec[0]
                                     : spec[0] + (spec[1] - spec[0]) * i / (count - 1));
        }
        return out;
    };

    const std::size_t rows =
        emit_sector_scan(a, omega, grid(re_spec), grid(s_spec), ctx.out_dir + "/scan.csv");
    const auto end = std::chrono::steady_clock::now();
    record(ctx, "scan.rows", "scan-emission", "omega=" + num_label(omega),
           static_cast<double>(rows), kInf, rows > 0, ms_between(start, end));
}

// ---------------------------------------------------------------------------
// Job configuration and the runner.
// ---------------------------------------------------------------------------

using TaskFn = void (*)(TaskContext&);

const std::map<std::string, TaskFn>& registry() {
    static const std::map<std::string, TaskFn> tasks = {
        {"remark58", task_remark58}, {"spectrum", task_spectrum},
        {"resolvent", task_resolvent}, {"contour", task_contour},
        {"laplace", task_laplace},   {"law", task_law},
        {"probe", task_probe},       {"yosida", task_yosida},
        {"scan", task_scan},
    };
    return tasks;
}

std::string normalize_task(std::string name) {
    if (name == "semigroup") return "contour";
    return name;
}

struct JobConfig {
    TaskContext ctx;
    std::vector<std::string> tasks;
    bool tasks_given = false;
};

JobConfig load_config(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw ParseError("cannot open config file " + path);
    Json j;
    try {
        stream >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed config JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config root must be an object");

    static const std::vector<std::string> known = {
        "n", "m", "operator", "operator_file", "tasks", "seed", "tol", "out", "params"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ParseError("unknown config key \"" + key + "\"");
        }
    }

    JobConfig config;
    TaskContext& ctx = config.ctx;
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw ParseError("config n must be an integer");
        ctx.n = j["n"].get<int>();
        if (ctx.n < 1 || ctx.n > 9) throw ParseError("config n must lie in [1, 9]");
    }
    if (j.contains("m")) {
        if (!j["m"].is_number_integer()) throw ParseError("config m must be an integer");
        ctx.m = j["m"].get<int>();
        if (ctx.m < 1) throw ParseError("config m must be positive");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw ParseError("config seed must be an integer");
        }
        ctx.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tol")) {
        if (!j["tol"].is_number() || !(j["tol"].get<double>() > 0.0)) {
            throw ParseError("config tol must be a positive number");
        }
        ctx.tol = j["tol"].get<double>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw ParseError("config out must be a string");
        ctx.out_dir = j["out"].get<std::string>();
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ParseError("config params must be an object");
        ctx.params = j["params"];
    }

    if (j.contains("operator") && j.contains("operator_file")) {
        throw ParseError("config gives both an inline operator and an operator file");
    }
    if (j.contains("operator")) {
        ctx.op = operator_from_json(j["operator"]);
    } else if (j.contains("operator_file")) {
        if (!j["operator_file"].is_string()) {
            throw ParseError("config operator_file must be a string");
        }
        std::ifstream op_stream(j["operator_file"].get<std::string>());
        if (!op_stream) {
            throw ParseError("cannot open operator file " +
                             j["operator_file"].get<std::string>());
        }
        Json op_json;
        try {
            op_stream >> op_json;
        } catch (const std::exception& e) {
            throw ParseError(std::string("malformed operator JSON: ") + e.what());
        }
        ctx.op = operator_from_json(op_json);
    }
    if (ctx.op) {
        const int op_n = ctx.op->space().algebra->generators();
        const int op_m = ctx.op->components();
        if (j.contains("n") && ctx.n != op_n) {
            throw ParseError("config n does not match the operator");
        }
        if (j.contains("m") && ctx.m != op_m) {
            throw ParseError("config m does not match the operator");
        }
        ctx.n = op_n;
        ctx.m = op_m;
    }
    if (ctx.n < 1) throw ParseError("the command line needs at least one generator");

    if (j.contains("tasks")) {
        if (!j["tasks"].is_array()) throw ParseError("config tasks must be an array");
        config.tasks_given = true;
        for (const Json& t : j["tasks"]) {
            if (!t.is_string()) throw ParseError("config task names must be strings");
            config.tasks.push_back(normalize_task(t.get<std::string>()));
        }
        if (config.tasks.empty()) throw ParseError("config task list is empty");
    }
    return config;
}

int run_job(TaskContext& ctx, const std::vector<std::string>& tasks) {
    for (const std::string& task : tasks) {
        if (registry().find(task) == registry().end()) {
            throw ParseError("unknown task \"" + task + "\"");
        }
    }
    std::vector<std::string> ordered;
    for (const std::string& task : tasks) {
        if (std::find(ordered.begin(), ordered.end(), task) == ordered.end()) {
            ordered.push_back(task);
        }
    }
    for (const std::string& task : ordered) {
        try {
            registry().at(task)(ctx);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            record(ctx, task + ".error", "task-execution", e.what(), kInf, 0.0, false, 0.0);
        }
    }
    write_file_atomic(ctx.out_dir + "/report.json", report_to_json(ctx.report).dump(2) + "\n");
    write_file_atomic(ctx.out_dir + "/report.csv", report_to_csv(ctx.report));

    std::size_t failed = 0;
    for (const CheckRecord& c : ctx.report.checks) {
        if (!c.pass) ++failed;
    }
    std::cout << "checks: " << ctx.report.checks.size() << "  failed: " << failed
              << "  report: " << ctx.out_dir << "/report.csv\n";
    return ctx.report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("SLICEREG_THREADS")) {
        const int count = std::atoi(threads);
        if (count > 0) Eigen::setNbThreads(count);
    }

    CLI::App app{"slice regular operator calculus toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    double tol = 0.0;
    app.add_option("--config", config_path, "job configuration JSON file");
    app.add_option("--seed", seed, "random fixture seed");
    app.add_option("--tol", tol, "check tolerance");
    app.add_option("--out", out_dir, "output directory for artifacts");

    static const std::vector<std::pair<std::string, std::string>> verbs = {
        {"spectrum", "spherical spectrum of an operator, emitted as CSV"},
        {"resolvent", "resolvent factorization check and resolvent JSON"},
        {"semigroup", "sector contour representation against the series"},
        {"laplace", "Laplace integral against resolvent slice powers"},
        {"law", "noncommutative semigroup law on a common slice"},
        {"probe", "sector regularity probe, emitted as CSV"},
        {"suite", "all bundled checks, or the config task list"},
        {"scan", "resolvent norm scan over a cone grid, emitted as CSV"},
    };
    for (const auto& [name, help] : verbs) {
        app.add_subcommand(name, help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        JobConfig config;
        if (!config_path.empty()) config = load_config(config_path);
        if (app.count("--seed") > 0) config.ctx.seed = seed;
        if (app.count("--tol") > 0) {
            if (!(tol > 0.0)) throw ParseError("--tol must be positive");
            config.ctx.tol = tol;
        }
        if (app.count("--out") > 0) config.ctx.out_dir = out_dir;

        const std::string verb = app.get_subcommands().front()->get_name();
        std::vector<std::string> tasks;
        if (verb == "suite") {
            if (config.tasks_given) {
                tasks = config.tasks;
            } else {
                tasks = {"remark58", "spectrum", "resolvent", "contour", "laplace",
                         "law",      "probe",    "yosida",    "scan"};
            }
        } else {
            tasks = {normalize_task(verb)};
        }
        return run_job(config.ctx, tasks);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
