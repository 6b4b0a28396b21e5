// End-to-end tests driving the command line binary.
// Usage: cli_tests <path-to-qkit> <path-to-data-dir>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string g_bin;
fs::path g_data;
fs::path g_scratch;
int g_failures = 0;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  fs::path out_file = g_scratch / "stdout.txt";
  std::string cmd = "\"" + g_bin + "\" " + args + " > " + out_file.string() +
                    " 2> " + (g_scratch / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  Result r;
  r.code = rc == -1 ? -1 : (WIFEXITED(rc) ? WEXITSTATUS(rc) : -2);
  std::ostringstream text;
  text << std::ifstream(out_file).rdbuf();
  r.out = text.str();
  return r;
}

void expect(bool ok, const std::string& name, const std::string& detail = "") {
  if (ok) {
    std::cout << "ok - " << name << "\n";
  } else {
    ++g_failures;
    std::cout << "not ok - " << name
              << (detail.empty() ? "" : " [" + detail + "]") << "\n";
  }
}

void expect_exit(const Result& r, int code, const std::string& name) {
  expect(r.code == code, name, "exit " + std::to_string(r.code) +
                               ", expected " + std::to_string(code));
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string path(const std::string& name) {
  return (g_scratch / name).string();
}

json parse(const std::string& file) {
  std::ifstream in(file);
  return json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_tests <qkit-binary> <data-dir>\n";
    return 2;
  }
  g_bin = argv[1];
  g_data = argv[2];
  g_scratch = fs::temp_directory_path() / "qkit_cli_tests";
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  // --- generation and validation ----------------------------------------
  expect_exit(run("gen pentagon -o " + path("pent.json")), 0, "gen pentagon");
  Result r = run("validate " + path("pent.json"));
  expect_exit(r, 0, "validate pentagon");
  expect(contains(r.out, "OK: involutive quantaloid"),
         "validate reports an involutive quantaloid", r.out);

  expect_exit(run("gen group --order 3 -o " + path("z3.json")), 0,
              "gen group of order 3");
  expect_exit(run("validate " + path("z3.json")), 0, "validate group");

  expect_exit(run("gen interval --cap 3 -o " + path("i3.json")), 0,
              "gen interval");
  expect_exit(run("gen locale --diamond -o " + path("diamond.json")), 0,
              "gen diamond locale");
  expect_exit(run("validate " + path("diamond.json")), 0,
              "validate diamond locale");
  expect_exit(run("gen locale --chain 3 -o " + path("chain.json")), 0,
              "gen chain locale");
  expect_exit(run("gen rel --sizes 1,2 -o " + path("rel.json")), 0,
              "gen rel 1,2");
  expect_exit(run("validate " + path("rel.json")), 0, "validate rel");
  expect_exit(run("gen rel --sizes 3,3"), 2, "gen rel 3,3 is too large");

  r = run("gen free-cat --category " + (g_data / "z2cat.json").string() +
          " --canonical-involution -o " + path("free_z2.json"));
  expect_exit(r, 0, "gen free quantaloid over a finite category");
  expect_exit(run("validate " + path("free_z2.json")), 0,
              "validate free quantaloid");
  expect_exit(run("gen free-cat --cyclic 4 -o " + path("free_c4.json")), 0,
              "gen free quantaloid over a cyclic group");
  expect_exit(run("validate " + path("free_c4.json")), 0,
              "validate cyclic free quantaloid");
  expect_exit(run("gen free-cat"), 2, "gen free-cat needs a source");

  r = run("gen path-metric --points 4 --edges 0-1,1-2,2-3,3-0 --cap 3 -o " +
          path("ring.json"));
  expect_exit(r, 0, "gen path metric");
  r = run("validate " + path("ring.json"));
  expect_exit(r, 0, "validate path metric");
  expect(contains(r.out, "category over a valid quantaloid"),
         "path metric is a category document", r.out);

  expect_exit(run("gen split-idempotents --input " + path("z3.json") +
                  " -o " + path("split.json")),
              0, "gen split idempotents");
  expect_exit(run("validate " + path("split.json")), 0,
              "validate split idempotents");

  // --- data fixtures ------------------------------------------------------
  r = run("validate " + (g_data / "z2cat.json").string());
  expect_exit(r, 0, "validate finite category fixture");
  expect(contains(r.out, "finite category"), "fixture kind is reported",
         r.out);
  expect_exit(run("validate " + (g_data / "poset_site.json").string()), 0,
              "validate site fixture");
  r = run("validate " + (g_data / "broken_unit.json").string());
  expect_exit(r, 1, "broken quantaloid fails validation");
  expect(contains(r.out, "unit"), "violated law is named", r.out);
  expect_exit(run("validate " + path("nowhere.json")), 2,
              "missing file is an error");
  expect_exit(run("check nonsense " + path("z3.json")), 2,
              "unknown property is an error");

  // --- property checks ----------------------------------------------------
  r = run("check bilateral " + path("z3.json"));
  expect_exit(r, 1, "group of order 3 is not bilateral");
  expect(contains(r.out, "{g1}") && contains(r.out, "{g2}"),
         "witness pair is printed", r.out);
  r = run("check bilateral " + path("z3.json") + " --json");
  expect_exit(r, 1, "bilateral --json exit code");
  {
    json doc = json::parse(r.out);
    expect(doc["holds"] == false && doc["variant"] == "pairwise" &&
               doc["witness"]["pairs"].size() == 1,
           "bilateral --json structure", r.out);
  }
  expect_exit(run("check bilateral " + path("pent.json")), 0,
              "pentagon is bilateral");
  expect_exit(run("check strong " + path("pent.json")), 1,
              "pentagon is not strongly bilateral");
  expect_exit(run("check strong " + path("i3.json")), 0,
              "interval is strongly bilateral");
  expect_exit(run("check bilateral " + path("z3.json") + " --max-pairs 0"), 2,
              "exhausted search budget is an error");
  expect_exit(run("check modular " + path("i3.json")), 1,
              "interval is not modular");
  expect_exit(run("check modular " + path("free_z2.json")), 0,
              "free quantaloid is modular");
  expect_exit(run("check integral " + path("i3.json")), 0,
              "interval is integral");
  expect_exit(run("check integral " + path("z3.json")), 1,
              "group quantale is not integral");
  expect_exit(run("check localic " + path("z3.json")), 0,
              "group quantale is locally localic");
  expect_exit(run("check localic " + path("pent.json")), 1,
              "pentagon is not locally localic");
  expect_exit(run("check involution " + path("pent.json")), 0,
              "pentagon carries an involution");

  // --- completions over the one-point category ----------------------------
  {
    json bw = {{"kind", "category"},
               {"quantaloid", "z3.json"},
               {"objects", {{{"name", "x"}, {"type", "*"}}}},
               {"hom", {{1}}}};
    std::ofstream(path("bw.json")) << bw.dump(2) << "\n";
  }
  expect_exit(run("validate " + path("bw.json")), 0,
              "validate category referencing a quantaloid file");
  r = run("complete cauchy " + path("bw.json") + " -o " + path("cc.json"));
  expect_exit(r, 0, "complete cauchy");
  {
    json doc = parse(path("cc.json"));
    expect(doc["objects"].size() == 3 &&
               doc["provenance"]["variant"] == "cauchy" &&
               doc["provenance"]["presheaves"].size() == 3 &&
               doc["provenance"]["yoneda"] == json::array({0}),
           "cauchy completion document");
  }
  expect_exit(run("validate " + path("cc.json")), 0,
              "completion output validates");
  expect_exit(run("complete symmetrise " + path("bw.json") + " -o " +
                  path("sym.json")),
              0, "symmetrise");
  expect_exit(run("validate " + path("sym.json")), 0,
              "symmetrisation validates");
  expect_exit(run("complete symmetric " + path("sym.json") + " -o " +
                  path("sc.json")),
              0, "symmetric completion of a symmetric category");
  expect_exit(run("complete symmetric " + path("cc.json")), 2,
              "symmetric completion rejects asymmetric input");
  expect_exit(run("complete cauchy " + path("bw.json") +
                  " --max-presheaves 2"),
              2, "presheaf budget is enforced");

  r = run("compare-l " + path("bw.json"));
  expect_exit(r, 1, "comparison functor is not an isomorphism");
  expect(contains(r.out, "not an isomorphism"), "comparison verdict", r.out);
  r = run("compare-l " + path("bw.json") + " --json");
  {
    json doc = json::parse(r.out);
    expect(doc["injective"] == true && doc["surjective"] == false &&
               doc["hom_equality"] == true &&
               doc["reconstruction_identity"] == true &&
               doc["unmatched_codomain"] == json::array({1, 2}),
           "comparison --json structure", r.out);
  }
  r = run("compare-l " + path("ring.json"));
  expect_exit(r, 0, "path metric comparison is an isomorphism");

  // --- counterexample construction ----------------------------------------
  r = run("counterexample " + path("z3.json") + " -o " + path("family.json"));
  expect_exit(r, 0, "counterexample over the group quantale");
  expect(contains(r.out, "witness family") && contains(r.out, "left adjoint"),
         "counterexample narration", r.out);
  {
    json doc = parse(path("family.json"));
    expect(doc.contains("presheaf") && doc["objects"].size() == 1 &&
               doc["hom"] == json::array({{1}}) &&
               doc["presheaf"] == json::array({2}),
           "counterexample document");
  }
  r = run("counterexample " + path("pent.json"));
  expect_exit(r, 1, "no counterexample on a bilateral quantaloid");
  expect(contains(r.out, "no counterexample"), "bilateral narration", r.out);

  // --- sites, cribles, quotients -------------------------------------------
  r = run("gen crible --category " + (g_data / "z2cat.json").string() +
          " -o " + path("crible.json"));
  expect_exit(r, 0, "gen crible quantaloid");
  expect_exit(run("validate " + path("crible.json")), 0,
              "validate crible quantaloid");
  expect_exit(run("check involution " + path("crible.json")), 0,
              "crible quantaloid carries an involution");

  r = run("gen site-quotient --site " + (g_data / "poset_site.json").string() +
          " -o " + path("quotient.json"));
  expect_exit(r, 0, "gen site quotient");
  expect_exit(run("validate " + path("quotient.json")), 0,
              "validate site quotient");
  expect_exit(run("check strong " + path("quotient.json")), 0,
              "site quotient is strongly bilateral");
  expect_exit(run("check integral " + path("quotient.json")), 0,
              "site quotient is integral");

  // --- json validation reports ---------------------------------------------
  r = run("validate " + path("pent.json") + " --json");
  {
    json doc = json::parse(r.out);
    expect(doc["ok"] == true && doc["kind"] == "quantaloid",
           "validate --json structure", r.out);
  }
  r = run("validate " + (g_data / "broken_unit.json").string() + " --json");
  {
    json doc = json::parse(r.out);
    expect(doc["ok"] == false && !doc["violations"].empty(),
           "validate --json violations", r.out);
  }

  std::cout << (g_failures == 0 ? "all command line tests passed\n"
                                : std::to_string(g_failures) +
                                      " command line tests failed\n");
  return g_failures == 0 ? 0 : 1;
}
