#pragma once

#include "qgt/analysis.hpp"
#include "qgt/surface.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgt {

using json = nlohmann::ordered_json;

// "Q", "GF:5" or "GF(5)".
FieldDescriptor field_from_string(const std::string& s);

json quiver_to_json(const Quiver& q, const std::vector<std::vector<int>>* f_cycles = nullptr);
/* Accepts {"vertices":[...], "arrows":[{"id","src","tgt"}...]} with an
 * optional "f" list of arrow-name cycles, reported through f_out. */
Quiver quiver_from_json(const json& j, std::optional<std::vector<std::vector<int>>>* f_out = nullptr);

json surface_to_json(const Surface& s);
Surface surface_from_json(const json& j);

json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json algebra_report_json(const FiniteDimAlgebra& A);
json resolution_to_json(const FiniteDimAlgebra& A, const Resolution& r);
json gqt_report_to_json(const FiniteDimAlgebra& A, const GqtReport& r);

// Canonical dump: two-space indent plus trailing newline.
std::string json_dump(const json& j);

json load_json_file(const std::string& path); // IoError on open/parse failure
void save_json_file(const std::string& path, const json& j);
void save_text_file(const std::string& path, const std::string& text);

} // namespace qgt
