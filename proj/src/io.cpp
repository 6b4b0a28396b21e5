#include "qkit/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qkit/error.hpp"

namespace qkit {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(errc::bad_input, what); }

std::string hom_key(const std::string& src, const std::string& dst) {
  return src + "->" + dst;
}

std::pair<std::string, std::string> split_hom_key(const std::string& key) {
  auto at = key.find("->");
  if (at == std::string::npos || key.find("->", at + 2) != std::string::npos)
    bad("hom key '" + key + "' must look like 'X->Y'");
  return {key.substr(0, at), key.substr(at + 2)};
}

void check_object_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.find("->") != std::string::npos)
      bad("object name '" + name + "' may not contain '->'");
    if (!seen.insert(name).second) bad("duplicate object name '" + name + "'");
  }
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T as(const json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    bad(std::string("malformed field '") + what + "'");
  }
}

json lattice_to_json(const FiniteLattice& lat,
                     const std::vector<std::string>& names) {
  json covers = json::array();
  for (auto [a, b] : lat.cover_pairs()) covers.push_back({a, b});
  return {{"elements", names}, {"leq", covers}};
}

std::vector<int> matrix_from_json(const json& rows, int nrows, int ncols,
                                  const char* what) {
  auto table = as<std::vector<std::vector<int>>>(rows, what);
  if (static_cast<int>(table.size()) != nrows)
    bad(std::string(what) + ": expected " + std::to_string(nrows) + " rows");
  std::vector<int> flat;
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != ncols)
      bad(std::string(what) + ": expected " + std::to_string(ncols) +
          " columns");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

json matrix_to_json(const std::vector<int>& flat, int nrows, int ncols) {
  json rows = json::array();
  for (int r = 0; r < nrows; ++r) {
    json row = json::array();
    for (int c = 0; c < ncols; ++c) row.push_back(flat[r * ncols + c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json quantaloid_to_json(const Quantaloid& q) {
  const auto& d = q.data();
  const int n = q.object_count();
  check_object_names(d.objects);
  json homs = json::object();
  json involution = json::object();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      std::string key = hom_key(d.objects[s], d.objects[t]);
      homs[key] = lattice_to_json(q.hom(s, t), d.elem_names[s * n + t]);
      if (d.has_involution) involution[key] = d.involution[s * n + t];
    }
  json compose = json::object();
  for (int s = 0; s < n; ++s)
    for (int m = 0; m < n; ++m)
      for (int t = 0; t < n; ++t)
        compose[hom_key(d.objects[s], d.objects[m]) + "->" + d.objects[t]] =
            matrix_to_json(d.compose[(s * n + m) * n + t], q.hom(m, t).size(),
                           q.hom(s, m).size());
  json identity = json::object();
  for (int x = 0; x < n; ++x) identity[d.objects[x]] = d.identities[x];
  json doc = {{"kind", "quantaloid"},
              {"objects", d.objects},
              {"homs", homs},
              {"compose", compose},
              {"identity", identity}};
  if (d.has_involution) doc["involution"] = involution;
  return doc;
}

Quantaloid quantaloid_from_json(const json& doc) {
  Quantaloid::Data d;
  d.objects = as<std::vector<std::string>>(field(doc, "objects"), "objects");
  check_object_names(d.objects);
  const int n = static_cast<int>(d.objects.size());
  auto index = [&](const std::string& name) {
    for (int i = 0; i < n; ++i)
      if (d.objects[i] == name) return i;
    bad("unknown object '" + name + "'");
  };
  d.homs.resize(static_cast<size_t>(n) * n,
                FiniteLattice::from_order(1, {}));
  d.elem_names.resize(static_cast<size_t>(n) * n);
  std::vector<bool> seen(static_cast<size_t>(n) * n, false);
  for (const auto& [key, value] : field(doc, "homs").items()) {
    auto [sname, tname] = split_hom_key(key);
    int s = index(sname), t = index(tname);
    auto names =
        as<std::vector<std::string>>(field(value, "elements"), "elements");
    if (names.empty()) bad("hom '" + key + "' needs at least one element");
    auto pairs =
        as<std::vector<std::pair<int, int>>>(field(value, "leq"), "leq");
    for (auto [a, b] : pairs)
      if (a < 0 || b < 0 || a >= static_cast<int>(names.size()) ||
          b >= static_cast<int>(names.size()))
        bad("hom '" + key + "': leq index out of range");
    d.homs[s * n + t] =
        FiniteLattice::from_order(static_cast<int>(names.size()), pairs);
    d.elem_names[s * n + t] = std::move(names);
    seen[s * n + t] = true;
  }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (!seen[s * n + t])
        bad("missing hom '" + hom_key(d.objects[s], d.objects[t]) + "'");

  d.compose.resize(static_cast<size_t>(n) * n * n);
  std::vector<bool> seen_c(d.compose.size(), false);
  for (const auto& [key, value] : field(doc, "compose").items()) {
    auto first = key.find("->");
    auto second = key.find("->", first == std::string::npos ? 0 : first + 2);
    if (first == std::string::npos || second == std::string::npos)
      bad("compose key '" + key + "' must look like 'X->Y->Z'");
    int s = index(key.substr(0, first));
    int m = index(key.substr(first + 2, second - first - 2));
    int t = index(key.substr(second + 2));
    d.compose[(s * n + m) * n + t] =
        matrix_from_json(value, d.homs[m * n + t].size(),
                         d.homs[s * n + m].size(), key.c_str());
    seen_c[(s * n + m) * n + t] = true;
  }
  for (size_t i = 0; i < seen_c.size(); ++i)
    if (!seen_c[i]) bad("missing a compose table");

  d.identities.resize(n);
  for (const auto& [key, value] : field(doc, "identity").items())
    d.identities[index(key)] = as<int>(value, "identity");

  if (auto it = doc.find("involution"); it != doc.end()) {
    d.has_involution = true;
    d.involution.resize(static_cast<size_t>(n) * n);
    for (const auto& [key, value] : it->items()) {
      auto [sname, tname] = split_hom_key(key);
      d.involution[index(sname) * n + index(tname)] =
          as<std::vector<int>>(value, "involution");
    }
  }
  return Quantaloid(std::move(d));
}

json category_to_json(const QCategory& a, bool inline_base,
                      const std::string& base_ref) {
  json objects = json::array();
  for (int i = 0; i < a.size(); ++i)
    objects.push_back(
        {{"name", a.name(i)}, {"type", a.base().object_name(a.type(i))}});
  json doc = {{"kind", "category"},
              {"objects", objects},
              {"hom", matrix_to_json(a.hom_matrix(), a.size(), a.size())}};
  doc["quantaloid"] = inline_base ? quantaloid_to_json(a.base())
                                  : json(base_ref);
  return doc;
}

QCategory category_from_json(const json& doc,
                             const std::filesystem::path& base_dir) {
  const json& ref = field(doc, "quantaloid");
  std::shared_ptr<const Quantaloid> base;
  if (ref.is_string())
    base = std::make_shared<const Quantaloid>(
        quantaloid_from_json(load_json(base_dir / ref.get<std::string>())));
  else
    base = std::make_shared<const Quantaloid>(quantaloid_from_json(ref));

  std::vector<std::string> names;
  std::vector<int> types;
  for (const auto& entry : field(doc, "objects")) {
    names.push_back(as<std::string>(field(entry, "name"), "objects.name"));
    std::string type = as<std::string>(field(entry, "type"), "objects.type");
    int t = base->object_index(type);
    if (t < 0) bad("unknown type '" + type + "'");
    types.push_back(t);
  }
  const int n = static_cast<int>(names.size());
  std::vector<int> hom = matrix_from_json(field(doc, "hom"), n, n, "hom");
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (hom[y * n + x] < 0 ||
          hom[y * n + x] >= base->hom(types[x], types[y]).size())
        bad("hom entry out of range at (" + std::to_string(y) + "," +
            std::to_string(x) + ")");
  return QCategory(std::move(base), std::move(names), std::move(types),
                   std::move(hom));
}

json finite_category_to_json(const FiniteCategory& c) {
  check_object_names(c.objects);
  json morphisms = json::array();
  for (const auto& m : c.morphisms)
    morphisms.push_back({{"name", m.name},
                         {"dom", c.objects[m.dom]},
                         {"cod", c.objects[m.cod]}});
  const int m = static_cast<int>(c.morphisms.size());
  json doc = {{"kind", "finite-category"},
              {"objects", c.objects},
              {"morphisms", morphisms},
              {"compose", matrix_to_json(c.compose, m, m)},
              {"identity", c.identity}};
  if (!c.inverse.empty()) doc["inverse"] = c.inverse;
  return doc;
}

FiniteCategory finite_category_from_json(const json& doc) {
  FiniteCategory c;
  c.objects = as<std::vector<std::string>>(field(doc, "objects"), "objects");
  check_object_names(c.objects);
  auto index = [&](const std::string& name) {
    for (size_t i = 0; i < c.objects.size(); ++i)
      if (c.objects[i] == name) return static_cast<int>(i);
    bad("unknown object '" + name + "'");
  };
  for (const auto& entry : field(doc, "morphisms"))
    c.morphisms.push_back(
        {as<std::string>(field(entry, "name"), "morphisms.name"),
         index(as<std::string>(field(entry, "dom"), "morphisms.dom")),
         index(as<std::string>(field(entry, "cod"), "morphisms.cod"))});
  const int m = static_cast<int>(c.morphisms.size());
  c.compose = matrix_from_json(field(doc, "compose"), m, m, "compose");
  c.identity = as<std::vector<int>>(field(doc, "identity"), "identity");
  if (auto it = doc.find("inverse"); it != doc.end())
    c.inverse = as<std::vector<int>>(*it, "inverse");
  for (int v : c.compose)
    if (v < -1 || v >= m) bad("compose entry out of range");
  ValidationReport report = c.validate();
  if (!report.ok()) bad("finite category laws violated:\n" + report.to_string());
  return c;
}

json site_to_json(const Site& s) {
  json doc = finite_category_to_json(s.category);
  doc["kind"] = "site";
  json topology = json::object();
  for (size_t x = 0; x < s.covering.size(); ++x)
    topology[s.category.objects[x]] = s.covering[x];
  doc["topology"] = topology;
  return doc;
}

Site site_from_json(const json& doc) {
  Site s{finite_category_from_json(doc), {}};
  s.covering.resize(s.category.objects.size());
  for (const auto& [key, value] : field(doc, "topology").items()) {
    int x = -1;
    for (size_t i = 0; i < s.category.objects.size(); ++i)
      if (s.category.objects[i] == key) x = static_cast<int>(i);
    if (x < 0) bad("topology names unknown object '" + key + "'");
    s.covering[x] = as<std::vector<std::vector<int>>>(value, "topology");
    for (auto& sieve : s.covering[x]) std::sort(sieve.begin(), sieve.end());
  }
  return s;
}

json completion_to_json(const Completion& c, const std::string& variant) {
  json doc = category_to_json(c.category);
  json columns = json::array();
  for (const auto& phi : c.presheaves) columns.push_back(phi.matrix());
  doc["provenance"] = {{"variant", variant},
                       {"presheaves", columns},
                       {"yoneda", c.yoneda},
                       {"embedding", c.embedding}};
  return doc;
}

json validation_report_to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"law", v.law}, {"detail", v.detail}});
  return {{"ok", report.ok()}, {"violations", violations}};
}

json bilaterality_report_to_json(const Quantaloid& q,
                                 const BilateralityReport& report) {
  json doc = {{"holds", report.holds},
              {"variant", report.covering_only ? "strong" : "pairwise"}};
  if (report.witness) {
    json pairs = json::array();
    for (const auto& p : report.witness->pairs) {
      auto one = [&](MorphismRef f) {
        return json{{"src", q.object_name(f.src)},
                    {"dst", q.object_name(f.dst)},
                    {"elem", f.elem},
                    {"name", q.elem_name(f.src, f.dst, f.elem)}};
      };
      pairs.push_back({{"f", one(p.f)}, {"g", one(p.g)}});
    }
    doc["witness"] = {{"object", q.object_name(report.witness->object)},
                      {"pairs", pairs}};
  }
  return doc;
}

json l_comparison_to_json(const LComparison& cmp) {
  return {{"isomorphism", cmp.isomorphism()},
          {"injective", cmp.injective},
          {"surjective", cmp.surjective},
          {"hom_equality", cmp.hom_equality},
          {"reconstruction_identity", cmp.reconstruction_identity},
          {"object_map", cmp.object_map},
          {"unmatched_codomain", cmp.unmatched_codomain},
          {"domain_objects", cmp.domain.size()},
          {"codomain_objects", cmp.codomain.size()}};
}

std::string detect_kind(const json& doc) {
  if (auto it = doc.find("kind"); it != doc.end()) {
    std::string kind = as<std::string>(*it, "kind");
    if (kind != "quantaloid" && kind != "category" &&
        kind != "finite-category" && kind != "site")
      bad("unknown kind '" + kind + "'");
    return kind;
  }
  if (doc.contains("topology")) return "site";
  if (doc.contains("morphisms")) return "finite-category";
  if (doc.contains("hom")) return "category";
  if (doc.contains("homs")) return "quantaloid";
  bad("cannot detect the document kind");
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad("cannot parse '" + path.string() + "': " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) bad("cannot open '" + path.string() + "' for writing");
  out << canonical_dump(doc);
  if (!out) bad("write to '" + path.string() + "' failed");
}

std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace qkit
