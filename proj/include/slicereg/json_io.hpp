#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "slicereg/element.hpp"
#include "slicereg/matrix_operator.hpp"
#include "slicereg/report.hpp"
#include "slicereg/stem.hpp"

namespace slicereg {

using Json = nlohmann::ordered_json;

// Shortest decimal string that parses back to exactly the same binary64.
std::string double_repr(double v);

// Elements carry their generator count and a sparse blade map keyed by
// ascending generator digits: "" scalar, "1", "12", "123".
Json element_to_json(const Element& e);
Element element_from_json(const Json& j);

// {"n": int, "m": int, "entries": [[element, ...], ...]} row major.
Json operator_to_json(const MatrixOperator& a);
MatrixOperator operator_from_json(const Json& j);

// Tagged stem form {"form": "power_series", "n": int, "coeffs": [...]}.
Json stem_to_json(const std::vector<Element>& coeffs);
StemPtr<Element> stem_from_json(const Json& j);

// Checks sorted by check_id; wall time appears in the JSON form only.
Json report_to_json(const SemigroupReport& report);
std::string report_to_csv(const SemigroupReport& report);

// Writes through a temporary in the same directory and renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace slicereg
