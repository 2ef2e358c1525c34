#include "slicereg/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

std::string blade_key(unsigned blade) {
    std::string key;
    for (int bit = 0; bit < 9; ++bit) {
        if (blade & (1u << bit)) key.push_back(static_cast<char>('1' + bit));
    }
    return key;
}

unsigned blade_from_key(const std::string& key, int n) {
    unsigned blade = 0;
    char prev = 0;
    for (const char c : key) {
        if (c < '1' || c > '9') throw ParseError("blade key must use digits 1-9");
        if (c <= prev) throw ParseError("blade key digits must be strictly ascending");
        const int bit = c - '1';
        if (bit >= n) throw ParseError("blade key names a generator beyond n");
        blade |= 1u << bit;
        prev = c;
    }
    return blade;
}

int generator_count(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw ParseError("element needs an integer generator count \"n\"");
    }
    const int n = j["n"].get<int>();
    if (n < 0 || n > 9) throw ParseError("generator count must lie in [0, 9]");
    return n;
}

const Json& entry_rows(const Json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
        throw ParseError("operator needs an \"entries\" array");
    }
    return j["entries"];
}

}  // namespace

std::string double_repr(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json element_to_json(const Element& e) {
    const int n = e.algebra()->generators();
    if (n > 9) throw Error("element serialization supports at most 9 generators");
    Json coeff = Json::object();
    const auto& values = e.coeffs();
    for (unsigned blade = 0; blade < values.size(); ++blade) {
        if (values[blade] != 0.0) coeff[blade_key(blade)] = values[blade];
    }
    Json out;
    out["n"] = n;
    out["coeff"] = std::move(coeff);
    return out;
}

Element element_from_json(const Json& j) {
    const int n = generator_count(j);
    const auto algebra = CliffordAlgebra::create(n);
    std::vector<double> coeffs(static_cast<std::size_t>(algebra->dim()), 0.0);
    if (j.contains("coeff")) {
        const Json& map = j["coeff"];
        if (!map.is_object()) throw ParseError("element \"coeff\" must be an object");
        for (const auto& [key, value] : map.items()) {
            if (!value.is_number()) throw ParseError("blade coefficient must be a number");
            coeffs[blade_from_key(key, n)] = value.get<double>();
        }
    }
    return Element::from_coeffs(algebra, std::move(coeffs));
}

Json operator_to_json(const MatrixOperator& a) {
    Json rows = Json::array();
    const int m = a.components();
    for (int u = 0; u < m; ++u) {
        Json row = Json::array();
        for (int v = 0; v < m; ++v) row.push_back(element_to_json(a.entry(u, v)));
        rows.push_back(std::move(row));
    }
    Json out;
    out["n"] = a.space().algebra->generators();
    out["m"] = m;
    out["entries"] = std::move(rows);
    return out;
}

MatrixOperator operator_from_json(const Json& j) {
    const int n = generator_count(j);
    if (!j.contains("m") || !j["m"].is_number_integer()) {
        throw ParseError("operator needs an integer component count \"m\"");
    }
    const int m = j["m"].get<int>();
    if (m < 1) throw ParseError("operator component count must be positive");
    const Json& rows = entry_rows(j);
    if (static_cast<int>(rows.size()) != m) {
        throw ParseError("operator entry rows do not match \"m\"");
    }
    const auto algebra = CliffordAlgebra::create(n);
    const ModuleSpace space{algebra, m};
    std::vector<std::vector<Element>> entries;
    entries.reserve(static_cast<std::size_t>(m));
    for (const Json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != m) {
            throw ParseError("operator entry rows must be length-m arrays");
        }
        std::vector<Element> out_row;
        out_row.reserve(static_cast<std::size_t>(m));
        for (const Json& cell : row) {
            Element e = element_from_json(cell);
            if (e.algebra()->generators() != n) {
                throw ParseError("operator entry generator count differs from header");
            }
            out_row.push_back(std::move(e));
        }
        entries.push_back(std::move(out_row));
    }
    return MatrixOperator::from_entries(space, entries);
}

Json stem_to_json(const std::vector<Element>& coeffs) {
    if (coeffs.empty()) throw Error("power series stem needs at least one coefficient");
    Json list = Json::array();
    for (const Element& c : coeffs) list.push_back(element_to_json(c));
    Json out;
    out["form"] = "power_series";
    out["n"] = coeffs.front().algebra()->generators();
    out["coeffs"] = std::move(list);
    return out;
}

StemPtr<Element> stem_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("form") || j["form"] != "power_series") {
        throw ParseError("stem form must be \"power_series\"");
    }
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
        throw ParseError("power series stem needs a nonempty \"coeffs\" array");
    }
    std::vector<Element> coeffs;
    for (const Json& cell : j["coeffs"]) coeffs.push_back(element_from_json(cell));
    return power_series_stem(std::move(coeffs));
}

namespace {

std::vector<const CheckRecord*> sorted_checks(const SemigroupReport& report) {
    std::vector<const CheckRecord*> out;
    out.reserve(report.checks.size());
    for (const CheckRecord& c : report.checks) out.push_back(&c);
    std::stable_sort(out.begin(), out.end(), [](const CheckRecord* a, const CheckRecord* b) {
        return a->check_id < b->check_id;
    });
    return out;
}

}  // namespace

namespace {

// JSON has no literal for infinities or NaN, so non-finite measurements are
// carried as their shortest text form instead of a silent null.
Json json_number(double v) {
    if (std::isfinite(v)) return v;
    return double_repr(v);
}

}  // namespace

Json report_to_json(const SemigroupReport& report) {
    Json checks = Json::array();
    for (const CheckRecord* c : sorted_checks(report)) {
        Json row;
        row["check_id"] = c->check_id;
        row["anchor"] = c->anchor;
        row["operands"] = c->operands;
        row["residual"] = json_number(c->residual);
        row["tol"] = json_number(c->tol);
        row["pass"] = c->pass;
        row["wall_ms"] = c->wall_ms;
        checks.push_back(std::move(row));
    }
    Json out;
    out["all_pass"] = report.all_pass();
    out["checks"] = std::move(checks);
    return out;
}

std::string report_to_csv(const SemigroupReport& report) {
    std::string out = "check_id,residual,tol,pass\n";
    for (const CheckRecord* c : sorted_checks(report)) {
        out += c->check_id;
        out += ',';
        out += double_repr(c->residual);
        out += ',';
        out += double_repr(c->tol);
        out += ',';
        out += c->pass ? '1' : '0';
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream) throw Error("cannot open " + tmp.string() + " for writing");
        stream.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!stream.flush()) throw Error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
}

}  // namespace slicereg
