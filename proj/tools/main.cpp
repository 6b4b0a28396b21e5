#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkit/builders.hpp"
#include "qkit/completion.hpp"
#include "qkit/error.hpp"
#include "qkit/io.hpp"

namespace {

using namespace qkit;

// Exit codes: 0 = success / property holds / counterexample produced,
// 1 = property fails / no counterexample, 2 = usage or input error.

struct Output {
  std::string path;  // empty: stdout
  void emit(const json& doc) const {
    if (path.empty())
      std::cout << canonical_dump(doc);
    else
      save_json(path, doc);
  }
};

std::filesystem::path parent_dir(const std::string& file) {
  auto dir = std::filesystem::path(file).parent_path();
  return dir.empty() ? std::filesystem::path(".") : dir;
}

Quantaloid load_quantaloid(const std::string& file) {
  json doc = load_json(file);
  std::string kind = detect_kind(doc);
  if (kind != "quantaloid")
    fail(errc::bad_input, "'" + file + "' holds a " + kind +
                              ", expected a quantaloid");
  return quantaloid_from_json(doc);
}

QCategory load_category(const std::string& file) {
  json doc = load_json(file);
  std::string kind = detect_kind(doc);
  if (kind != "category")
    fail(errc::bad_input,
         "'" + file + "' holds a " + kind + ", expected a category");
  return category_from_json(doc, parent_dir(file));
}

class Stopwatch {
 public:
  ~Stopwatch() {
    auto elapsed = std::chrono::steady_clock::now() - start_;
    std::cerr << "elapsed: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
                     .count()
              << " ms\n";
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string describe_witness(const Quantaloid& q,
                             const BilateralityWitness& w) {
  std::ostringstream out;
  out << "witness family over object " << q.object_name(w.object) << ":\n";
  for (const auto& p : w.pairs)
    out << "  f = " << q.show(p.f) << ",  g = " << q.show(p.g) << "\n";
  return out.str();
}

int run_validate(const std::string& file, bool as_json) {
  json doc = load_json(file);
  std::string kind = detect_kind(doc);
  ValidationReport report;
  std::string extra;
  if (kind == "quantaloid") {
    Quantaloid q = quantaloid_from_json(doc);
    report = validate_quantaloid(q);
    extra = q.has_involution() ? "involutive quantaloid"
                               : "quantaloid (no involution)";
  } else if (kind == "category") {
    auto dir = parent_dir(file);
    const json& ref = doc.at("quantaloid");
    Quantaloid base = ref.is_string()
                          ? load_quantaloid((dir / ref.get<std::string>()).string())
                          : quantaloid_from_json(ref);
    ValidationReport base_report = validate_quantaloid(base);
    if (!base_report.ok()) {
      report = base_report;
    } else {
      json copy = doc;
      copy["quantaloid"] = quantaloid_to_json(base);
      QCategory a = category_from_json(copy, dir);
      report = validate_category(a.base(), a.types(), a.hom_matrix());
      extra = "category over a valid quantaloid";
    }
  } else if (kind == "finite-category") {
    report = finite_category_from_json(doc).validate();
    extra = "finite category";
  } else {  // site
    report = validate_topology(site_from_json(doc));
    extra = "site";
  }
  if (as_json) {
    json out = validation_report_to_json(report);
    out["kind"] = kind;
    std::cout << canonical_dump(out);
  } else if (report.ok()) {
    std::cout << "OK: " << (extra.empty() ? kind : extra) << ", all laws hold\n";
  } else {
    std::cout << report.to_string();
  }
  return report.ok() ? 0 : 1;
}

int run_check(const std::string& what, const std::string& file, int max_pairs,
              bool as_json) {
  Quantaloid q = load_quantaloid(file);
  BilateralityOptions opts;
  opts.max_pairs = max_pairs;
  if (what == "bilateral" || what == "strong") {
    BilateralityReport report = what == "strong"
                                    ? check_strong_cauchy_bilateral(q, opts)
                                    : check_cauchy_bilateral(q, opts);
    if (as_json) {
      std::cout << canonical_dump(bilaterality_report_to_json(q, report));
    } else if (report.holds) {
      std::cout << "holds: every "
                << (report.covering_only ? "covering" : "admissible")
                << " family satisfies the symmetric covering conclusion\n";
    } else {
      std::cout << "fails: " << describe_witness(q, *report.witness);
    }
    return report.holds ? 0 : 1;
  }
  if (what == "modular") {
    auto bad = modularity_counterexample(q);
    if (as_json) {
      json out = {{"holds", !bad.has_value()}};
      if (bad)
        out["witness"] = {{"f", q.show(bad->f)},
                          {"g", q.show(bad->g)},
                          {"h", q.show(bad->h)}};
      std::cout << canonical_dump(out);
    } else if (bad) {
      std::cout << "fails: g o f /\\ h <= g o (f /\\ g^o o h) breaks at\n"
                << "  f = " << q.show(bad->f) << "\n"
                << "  g = " << q.show(bad->g) << "\n"
                << "  h = " << q.show(bad->h) << "\n";
    } else {
      std::cout << "holds: the modular law is satisfied\n";
    }
    return bad ? 1 : 0;
  }
  bool holds = false;
  std::string description;
  if (what == "localic") {
    holds = is_locally_localic(q);
    description = "every hom lattice is distributive";
  } else if (what == "integral") {
    holds = is_integral(q);
    description = "every identity is the top of its hom";
  } else if (what == "involution") {
    holds = q.has_involution();
    description = "an involution is present";
  } else {
    fail(errc::bad_input, "unknown property '" + what + "'");
  }
  if (as_json)
    std::cout << canonical_dump(json{{"holds", holds}});
  else
    std::cout << (holds ? "holds: " : "fails: ") << description << "\n";
  return holds ? 0 : 1;
}

int run_complete(const std::string& variant, const std::string& file,
                 long long max_presheaves, const Output& out) {
  QCategory a = load_category(file);
  CompletionOptions opts;
  opts.max_presheaves = max_presheaves;
  if (variant == "symmetrise") {
    out.emit(category_to_json(symmetrise(a)));
    return 0;
  }
  Completion c = variant == "symmetric" ? symmetric_completion(a, opts)
                                        : cauchy_completion(a, opts);
  out.emit(completion_to_json(c, variant));
  std::cerr << "objects: " << c.category.size() << "\n";
  return 0;
}

int run_compare(const std::string& file, long long max_presheaves,
                bool as_json) {
  QCategory a = load_category(file);
  CompletionOptions opts;
  opts.max_presheaves = max_presheaves;
  LComparison cmp = compare_completions(a, opts);
  if (as_json) {
    std::cout << canonical_dump(l_comparison_to_json(cmp));
  } else {
    std::cout << "comparison functor on " << cmp.domain.size()
              << " objects into " << cmp.codomain.size() << " objects\n"
              << "  injective:               "
              << (cmp.injective ? "yes" : "no") << "\n"
              << "  surjective:              "
              << (cmp.surjective ? "yes" : "no") << "\n"
              << "  fully faithful:          "
              << (cmp.hom_equality ? "yes" : "no") << "\n"
              << "  reconstruction identity: "
              << (cmp.reconstruction_identity ? "yes" : "no") << "\n"
              << (cmp.isomorphism() ? "isomorphism\n" : "not an isomorphism\n");
  }
  return cmp.isomorphism() ? 0 : 1;
}

int run_counterexample(const std::string& file, int max_pairs,
                       const Output& out) {
  auto q = std::make_shared<const Quantaloid>(load_quantaloid(file));
  BilateralityOptions opts;
  opts.max_pairs = max_pairs;
  BilateralityReport report = check_cauchy_bilateral(*q, opts);
  if (report.holds) {
    std::cout << "no counterexample: the quantaloid is Cauchy-bilateral\n";
    return 1;
  }
  FamilyCategory fc = witness_category(q, *report.witness);
  std::cout << "fails: " << describe_witness(*q, *report.witness)
            << "built a category on " << fc.category.size()
            << " objects whose hom(j,i) is f_j o g_i, joined with the "
               "identity on the diagonal,\n"
               "and a presheaf with columns f_i that is a left adjoint whose "
               "symmetrisation is not.\n";
  json doc = category_to_json(fc.category);
  doc["presheaf"] = fc.presheaf.matrix();
  out.emit(doc);
  return 0;
}

std::vector<std::pair<int, int>> parse_edges(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  if (text.empty()) return edges;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos)
      fail(errc::bad_input, "edge '" + item + "' must look like 'a-b'");
    edges.emplace_back(std::stoi(item.substr(0, dash)),
                       std::stoi(item.substr(dash + 1)));
  }
  return edges;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculator for involutive quantaloids and the "
               "categories they enrich"};
  app.require_subcommand(1);

  std::string file, out_path, what, variant, kind;
  bool as_json = false;
  int max_pairs = 24;
  long long max_presheaves = 20000;

  auto* validate = app.add_subcommand("validate", "check every law of a "
                                                  "stored structure");
  validate->add_option("file", file)->required();
  validate->add_flag("--json", as_json, "machine-readable report");

  auto* gen = app.add_subcommand("gen", "generate a standard example");
  std::string gen_kind, category_file, site_file, input_file, sizes_text,
      edges_text;
  int cap = 3, order = 2, chain = 0, points = 2, cyclic = 0;
  bool diamond = false, canonical = false;
  gen->add_option("kind", gen_kind,
                  "interval | group | locale | pentagon | free-cat | rel | "
                  "crible | site-quotient | path-metric | split-idempotents")
      ->required();
  gen->add_option("-o,--out", out_path, "output file (default: stdout)");
  gen->add_option("--cap", cap, "saturation cap (interval, path-metric)");
  gen->add_option("--order", order, "cyclic group order (group)");
  gen->add_option("--chain", chain, "chain locale on this many elements");
  gen->add_flag("--diamond", diamond, "four-element diamond locale");
  gen->add_option("--cyclic", cyclic, "one-object cyclic site (free-cat)");
  gen->add_option("--category", category_file,
                  "finite-category file (free-cat, crible)");
  gen->add_flag("--canonical-involution", canonical,
                "inverse-image involution (free-cat on a groupoid)");
  gen->add_option("--sizes", sizes_text, "comma-separated set sizes (rel)");
  gen->add_option("--site", site_file, "site file (site-quotient)");
  gen->add_option("--points", points, "point count (path-metric)");
  gen->add_option("--edges", edges_text,
                  "directed edges 'a-b,c-d' (path-metric)");
  gen->add_option("--input", input_file, "quantaloid file (split-idempotents)");

  auto* check = app.add_subcommand("check", "decide a property of a "
                                            "quantaloid");
  check->add_option("what", what,
                    "bilateral | strong | modular | localic | integral | "
                    "involution")
      ->required();
  check->add_option("file", file)->required();
  check->add_option("--max-pairs", max_pairs,
                    "candidate-pool cap for the pairwise search");
  check->add_flag("--json", as_json, "machine-readable report");

  auto* complete = app.add_subcommand("complete", "build a completion of a "
                                                  "category");
  complete->add_option("variant", variant, "cauchy | symmetric | symmetrise")
      ->required();
  complete->add_option("file", file)->required();
  complete->add_option("-o,--out", out_path, "output file (default: stdout)");
  complete->add_option("--max-presheaves", max_presheaves,
                       "presheaf enumeration budget");

  auto* compare = app.add_subcommand(
      "compare-l", "compare the two symmetric completions of a category");
  compare->add_option("file", file)->required();
  compare->add_option("--max-presheaves", max_presheaves,
                      "presheaf enumeration budget");
  compare->add_flag("--json", as_json, "machine-readable report");

  auto* counter = app.add_subcommand(
      "counterexample",
      "extract a witness category from a bilaterality failure");
  counter->add_option("file", file)->required();
  counter->add_option("--max-pairs", max_pairs,
                      "candidate-pool cap for the pairwise search");
  counter->add_option("-o,--out", out_path, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    Stopwatch timer;
    Output out{out_path};
    if (validate->parsed()) return run_validate(file, as_json);
    if (check->parsed()) return run_check(what, file, max_pairs, as_json);
    if (complete->parsed())
      return run_complete(variant, file, max_presheaves, out);
    if (compare->parsed()) return run_compare(file, max_presheaves, as_json);
    if (counter->parsed()) return run_counterexample(file, max_pairs, out);

    // gen
    if (gen_kind == "interval") {
      out.emit(quantaloid_to_json(interval_quantale(cap)));
      std::cerr << "element " << cap << " is the saturation cap "
                << "(= infinity for every longer composite)\n";
    } else if (gen_kind == "group") {
      out.emit(quantaloid_to_json(group_quantale(cyclic_group_category(order))));
    } else if (gen_kind == "locale") {
      if (diamond)
        out.emit(quantaloid_to_json(
            locale_quantale(diamond_lattice(), {"bot", "l", "r", "top"})));
      else if (chain > 0)
        out.emit(quantaloid_to_json(locale_quantale(chain_lattice(chain))));
      else
        fail(errc::bad_input, "locale needs --chain N or --diamond");
    } else if (gen_kind == "pentagon") {
      out.emit(quantaloid_to_json(pentagon_quantale()));
    } else if (gen_kind == "free-cat") {
      if (category_file.empty() && cyclic <= 0)
        fail(errc::bad_input, "free-cat needs --category or --cyclic");
      FiniteCategory c = cyclic > 0
                             ? cyclic_group_category(cyclic)
                             : finite_category_from_json(load_json(category_file));
      out.emit(quantaloid_to_json(free_quantaloid(c, canonical)));
    } else if (gen_kind == "rel") {
      std::vector<int> sizes;
      std::istringstream in(sizes_text);
      std::string item;
      while (std::getline(in, item, ',')) sizes.push_back(std::stoi(item));
      out.emit(quantaloid_to_json(rel_quantaloid(sizes)));
    } else if (gen_kind == "crible") {
      out.emit(quantaloid_to_json(
          crible_quantaloid(finite_category_from_json(load_json(category_file)))));
    } else if (gen_kind == "site-quotient") {
      out.emit(quantaloid_to_json(
          quotient_quantaloid(site_from_json(load_json(site_file)))));
    } else if (gen_kind == "path-metric") {
      out.emit(category_to_json(
          path_metric_category(points, parse_edges(edges_text), cap)));
    } else if (gen_kind == "split-idempotents") {
      out.emit(quantaloid_to_json(split_idempotents(load_quantaloid(input_file))));
    } else {
      fail(errc::bad_input, "unknown generator '" + gen_kind + "'");
    }
    return 0;
  } catch (const error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.message()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
