#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qkit/builders.hpp"
#include "qkit/completion.hpp"

namespace qkit {

using json = nlohmann::json;

// All readers throw error(bad_input) with a human-readable message on
// malformed documents; all writers produce documents the matching reader
// accepts verbatim (round-trip identity on the canonical dump).

json quantaloid_to_json(const Quantaloid& q);
Quantaloid quantaloid_from_json(const json& doc);

// `inline_base` embeds the quantaloid document; otherwise the given
// reference string is stored and the reader resolves it against its
// base directory.
json category_to_json(const QCategory& a, bool inline_base = true,
                      const std::string& base_ref = "");
QCategory category_from_json(const json& doc,
                             const std::filesystem::path& base_dir);

json finite_category_to_json(const FiniteCategory& c);
FiniteCategory finite_category_from_json(const json& doc);

json site_to_json(const Site& s);
Site site_from_json(const json& doc);

// The completed category plus how each object arose: its presheaf columns,
// the Yoneda image of each source object and (for the symmetric variant)
// the embedding indices.
json completion_to_json(const Completion& c, const std::string& variant);

json validation_report_to_json(const ValidationReport& report);
json bilaterality_report_to_json(const Quantaloid& q,
                                 const BilateralityReport& report);
json l_comparison_to_json(const LComparison& cmp);

// "quantaloid", "category", "finite-category" or "site".
std::string detect_kind(const json& doc);

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& doc);
// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& doc);

}  // namespace qkit
