#include "qkit/quantaloid.hpp"

#include <algorithm>

#include "qkit/error.hpp"

namespace qkit {

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    out += v.law;
    out += ": ";
    out += v.detail;
    out += '\n';
  }
  return out;
}

Quantaloid::Quantaloid(Data data) : data_(std::move(data)) { check_shapes(); }

void Quantaloid::check_shapes() const {
  const int n = object_count();
  if (n == 0) fail(errc::bad_input, "quantaloid needs at least one object");
  if (static_cast<int>(data_.homs.size()) != n * n)
    fail(errc::bad_input, "expected one hom lattice per ordered object pair");
  if (static_cast<int>(data_.elem_names.size()) != n * n)
    fail(errc::bad_input, "expected one element-name list per hom");
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      const auto& names = data_.elem_names[s * n + d];
      if (static_cast<int>(names.size()) != hom(s, d).size())
        fail(errc::bad_input, "element names of hom(" + data_.objects[s] +
                                  "," + data_.objects[d] +
                                  ") do not match lattice size");
    }
  if (static_cast<int>(data_.compose.size()) != n * n * n)
    fail(errc::bad_input, "expected one composition table per object triple");
  for (int s = 0; s < n; ++s)
    for (int m = 0; m < n; ++m)
      for (int d = 0; d < n; ++d) {
        const auto& tab = data_.compose[(s * n + m) * n + d];
        int rows = hom(m, d).size(), cols = hom(s, m).size();
        if (static_cast<int>(tab.size()) != rows * cols)
          fail(errc::bad_input,
               "composition table " + data_.objects[s] + "->" +
                   data_.objects[m] + "->" + data_.objects[d] +
                   " has wrong shape");
        for (int v : tab)
          if (v < 0 || v >= hom(s, d).size())
            fail(errc::bad_input, "composition table entry out of range");
      }
  if (static_cast<int>(data_.identities.size()) != n)
    fail(errc::bad_input, "expected one identity per object");
  for (int x = 0; x < n; ++x)
    if (data_.identities[x] < 0 || data_.identities[x] >= hom(x, x).size())
      fail(errc::bad_input, "identity of " + data_.objects[x] +
                                " out of range");
  if (data_.has_involution) {
    if (static_cast<int>(data_.involution.size()) != n * n)
      fail(errc::bad_input, "expected one involution table per hom");
    for (int s = 0; s < n; ++s)
      for (int d = 0; d < n; ++d) {
        const auto& tab = data_.involution[s * n + d];
        if (static_cast<int>(tab.size()) != hom(s, d).size())
          fail(errc::bad_input, "involution table of hom(" + data_.objects[s] +
                                    "," + data_.objects[d] + ") wrong size");
        for (int v : tab)
          if (v < 0 || v >= hom(d, s).size())
            fail(errc::bad_input, "involution table entry out of range");
      }
  }
}

int Quantaloid::object_index(const std::string& name) const {
  for (int i = 0; i < object_count(); ++i)
    if (data_.objects[i] == name) return i;
  return -1;
}

std::string Quantaloid::show(MorphismRef f) const {
  return elem_name(f.src, f.dst, f.elem) + " : " + object_name(f.src) +
         " -> " + object_name(f.dst);
}

MorphismRef Quantaloid::compose(MorphismRef g, MorphismRef f) const {
  if (f.dst != g.src)
    fail(errc::type_mismatch,
         "cannot compose " + show(g) + " after " + show(f));
  const int n = object_count();
  const auto& tab = data_.compose[(f.src * n + f.dst) * n + g.dst];
  return {f.src, g.dst, tab[g.elem * hom(f.src, f.dst).size() + f.elem]};
}

MorphismRef Quantaloid::involute(MorphismRef f) const {
  if (!data_.has_involution)
    fail(errc::no_involution, "quantaloid has no involution");
  const int n = object_count();
  return {f.dst, f.src, data_.involution[f.src * n + f.dst][f.elem]};
}

bool Quantaloid::leq(MorphismRef a, MorphismRef b) const {
  if (a.src != b.src || a.dst != b.dst)
    fail(errc::type_mismatch, "cannot order " + show(a) + " and " + show(b));
  return hom(a.src, a.dst).leq(a.elem, b.elem);
}

MorphismRef Quantaloid::join(MorphismRef a, MorphismRef b) const {
  if (a.src != b.src || a.dst != b.dst)
    fail(errc::type_mismatch, "cannot join " + show(a) + " and " + show(b));
  return {a.src, a.dst, hom(a.src, a.dst).join(a.elem, b.elem)};
}

MorphismRef Quantaloid::meet(MorphismRef a, MorphismRef b) const {
  if (a.src != b.src || a.dst != b.dst)
    fail(errc::type_mismatch, "cannot meet " + show(a) + " and " + show(b));
  return {a.src, a.dst, hom(a.src, a.dst).meet(a.elem, b.elem)};
}

namespace {

std::string triple_detail(const Quantaloid& q, MorphismRef a, MorphismRef b,
                          MorphismRef c) {
  return "(" + q.show(a) + ", " + q.show(b) + ", " + q.show(c) + ")";
}

}  // namespace

ValidationReport validate_quantaloid(const Quantaloid& q) {
  ValidationReport report;
  const int n = q.object_count();
  auto add = [&](const std::string& law, const std::string& detail) {
    report.violations.push_back({law, detail});
  };

  // Associativity: h o (g o f) == (h o g) o f.
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int fe = 0; fe < q.hom(w, x).size(); ++fe)
            for (int ge = 0; ge < q.hom(x, y).size(); ++ge)
              for (int he = 0; he < q.hom(y, z).size(); ++he) {
                MorphismRef f{w, x, fe}, g{x, y, ge}, h{y, z, he};
                if (q.compose(h, q.compose(g, f)) !=
                    q.compose(q.compose(h, g), f))
                  add("associativity", triple_detail(q, h, g, f));
              }

  // Unit laws.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int fe = 0; fe < q.hom(x, y).size(); ++fe) {
        MorphismRef f{x, y, fe};
        if (q.compose(f, q.identity(x)) != f)
          add("right unit", q.show(f));
        if (q.compose(q.identity(y), f) != f)
          add("left unit", q.show(f));
      }

  // Join preservation in each argument, including empty joins.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        for (int ge = 0; ge < q.hom(y, z).size(); ++ge) {
          MorphismRef g{y, z, ge};
          if (q.compose(g, q.bottom(x, y)) != q.bottom(x, z))
            add("composition preserves bottom (right argument)", q.show(g));
          for (int ae = 0; ae < q.hom(x, y).size(); ++ae)
            for (int be = ae + 1; be < q.hom(x, y).size(); ++be) {
              MorphismRef a{x, y, ae}, b{x, y, be};
              if (q.compose(g, q.join(a, b)) !=
                  q.join(q.compose(g, a), q.compose(g, b)))
                add("composition preserves joins (right argument)",
                    triple_detail(q, g, a, b));
            }
        }
        for (int fe = 0; fe < q.hom(x, y).size(); ++fe) {
          MorphismRef f{x, y, fe};
          if (q.compose(q.bottom(y, z), f) != q.bottom(x, z))
            add("composition preserves bottom (left argument)", q.show(f));
          for (int ae = 0; ae < q.hom(y, z).size(); ++ae)
            for (int be = ae + 1; be < q.hom(y, z).size(); ++be) {
              MorphismRef a{y, z, ae}, b{y, z, be};
              if (q.compose(q.join(a, b), f) !=
                  q.join(q.compose(a, f), q.compose(b, f)))
                add("composition preserves joins (left argument)",
                    triple_detail(q, f, a, b));
            }
        }
      }

  if (q.has_involution()) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int ae = 0; ae < q.hom(x, y).size(); ++ae) {
          MorphismRef a{x, y, ae};
          if (q.involute(q.involute(a)) != a)
            add("involution is involutive", q.show(a));
          for (int be = 0; be < q.hom(x, y).size(); ++be) {
            MorphismRef b{x, y, be};
            if (q.leq(a, b) && !q.leq(q.involute(a), q.involute(b)))
              add("involution preserves order",
                  q.show(a) + " <= " + q.show(b));
          }
          for (int z = 0; z < n; ++z)
            for (int ge = 0; ge < q.hom(y, z).size(); ++ge) {
              MorphismRef g{y, z, ge};
              if (q.involute(q.compose(g, a)) !=
                  q.compose(q.involute(a), q.involute(g)))
                add("involution reverses composition",
                    "(" + q.show(g) + ", " + q.show(a) + ")");
            }
        }
  }

  return report;
}

MorphismRef right_residual(const Quantaloid& q, MorphismRef g, MorphismRef h) {
  if (g.dst != h.dst)
    fail(errc::type_mismatch, "right residual needs common codomain, got " +
                                  q.show(g) + " and " + q.show(h));
  const int x = h.src, y = g.src;
  MorphismRef acc = q.bottom(x, y);
  for (int k = 0; k < q.hom(x, y).size(); ++k) {
    MorphismRef cand{x, y, k};
    if (q.leq(q.compose(g, cand), h)) acc = q.join(acc, cand);
  }
  return acc;
}

MorphismRef left_residual(const Quantaloid& q, MorphismRef f, MorphismRef h) {
  if (f.src != h.src)
    fail(errc::type_mismatch, "left residual needs common domain, got " +
                                  q.show(f) + " and " + q.show(h));
  const int y = f.dst, z = h.dst;
  MorphismRef acc = q.bottom(y, z);
  for (int k = 0; k < q.hom(y, z).size(); ++k) {
    MorphismRef cand{y, z, k};
    if (q.leq(q.compose(cand, f), h)) acc = q.join(acc, cand);
  }
  return acc;
}

bool is_left_adjoint(const Quantaloid& q, MorphismRef f, MorphismRef g) {
  if (f.src != g.dst || f.dst != g.src)
    fail(errc::type_mismatch, "adjunction needs opposite types, got " +
                                  q.show(f) + " and " + q.show(g));
  return q.leq(q.identity(f.src), q.compose(g, f)) &&
         q.leq(q.compose(f, g), q.identity(f.dst));
}

MorphismRef right_adjoint_candidate(const Quantaloid& q, MorphismRef f) {
  return right_residual(q, f, q.identity(f.dst));
}

bool is_symmetric_left_adjoint(const Quantaloid& q, MorphismRef f) {
  return is_left_adjoint(q, f, q.involute(f));
}

namespace {

// One candidate pair (f : X -> Y, g : Y -> X) with its premise contribution
// u = g o f and conclusion contribution c = (g /\ f^o) o (g^o /\ f); both
// live in hom(X,X).
struct Candidate {
  MorphismRef f, g;
  int u = 0;
  int c = 0;
};

// Pairs with u = bottom are dropped: their conclusion term is below
// g o f = bottom as well, so they contribute to neither side of the
// condition and no minimal witness contains them.
std::vector<Candidate> candidate_pool(const Quantaloid& q, int x,
                                      bool pairwise_filter) {
  std::vector<Candidate> pool;
  const auto& hxx = q.hom(x, x);
  for (int y = 0; y < q.object_count(); ++y)
    for (int fe = 0; fe < q.hom(x, y).size(); ++fe)
      for (int ge = 0; ge < q.hom(y, x).size(); ++ge) {
        MorphismRef f{x, y, fe}, g{y, x, ge};
        MorphismRef u = q.compose(g, f);
        if (u.elem == hxx.bottom()) continue;
        if (pairwise_filter &&
            (!q.leq(q.compose(f, u), f) || !q.leq(q.compose(u, g), g)))
          continue;  // the j = k premise instances already fail
        MorphismRef c = q.compose(q.meet(g, q.involute(f)),
                                  q.meet(q.involute(g), f));
        pool.push_back({f, g, u.elem, c.elem});
      }
  return pool;
}

bool compatible(const Quantaloid& q, const Candidate& p, const Candidate& r) {
  // Premise instances (1) and (2) for the unordered pair {p, r}.
  return q.leq(q.compose(r.f, q.compose(p.g, p.f)), r.f) &&
         q.leq(q.compose(q.compose(p.g, p.f), r.g), r.g) &&
         q.leq(q.compose(p.f, q.compose(r.g, r.f)), p.f) &&
         q.leq(q.compose(q.compose(r.g, r.f), p.g), p.g);
}

// Is there an element C of hom(x,x) with 1_x not<= C such that the pairs of
// `members` whose conclusion term lies below C jointly cover 1_x? Such a C
// certifies a violating family (take exactly those pairs: their conclusion
// join is <= C), and conversely the conclusion join of any violating family
// is such a C, so scanning all lattice elements decides exactly.
bool scan_violates(const Quantaloid& q, int x,
                   const std::vector<Candidate>& pool,
                   const std::vector<int>& members) {
  const auto& hxx = q.hom(x, x);
  const int one = q.identity(x).elem;
  for (int c = 0; c < hxx.size(); ++c) {
    if (hxx.leq(one, c)) continue;
    int u = hxx.bottom();
    for (int i : members)
      if (hxx.leq(pool[i].c, c)) u = hxx.join(u, pool[i].u);
    if (hxx.leq(one, u)) return true;
  }
  return false;
}

// All maximal cliques of the compatibility graph, via Bron-Kerbosch without
// pivoting (pools are tiny and the order is deterministic).
void maximal_cliques(const std::vector<std::vector<bool>>& adj,
                     std::vector<int>& r, std::vector<int> p,
                     std::vector<int> xset,
                     std::vector<std::vector<int>>& out) {
  if (p.empty() && xset.empty()) {
    out.push_back(r);
    return;
  }
  while (!p.empty()) {
    int v = p.front();
    r.push_back(v);
    std::vector<int> p2, x2;
    for (int w : p)
      if (adj[v][w]) p2.push_back(w);
    for (int w : xset)
      if (adj[v][w]) x2.push_back(w);
    maximal_cliques(adj, r, std::move(p2), std::move(x2), out);
    r.pop_back();
    p.erase(p.begin());
    xset.push_back(v);
  }
}

// Smallest violating family (fewest pairs, then lexicographically first in
// pool order). Only called when a violation is known to exist, so the
// iterative deepening terminates. Minimal covers have strictly increasing
// premise joins along their canonical order (dropping a pair that adds
// nothing to the join of the earlier ones keeps the family covering), which
// bounds the depth by the longest strictly increasing chain.
struct WitnessSearch {
  const Quantaloid& q;
  int x;
  const std::vector<Candidate>& pool;
  const std::vector<std::vector<bool>>* adj;  // null for the strong variant
  int one = 0, bot = 0;
  std::vector<int> chosen;

  std::optional<std::vector<int>> extend(int from, int u_join, int c_join,
                                         int remaining) {
    const auto& hxx = q.hom(x, x);
    if (remaining == 0) {
      if (hxx.leq(one, u_join) && !hxx.leq(one, c_join)) return chosen;
      return std::nullopt;
    }
    if (hxx.leq(one, u_join)) return std::nullopt;  // already covering: any
                                                    // extension is redundant
    for (int i = from; i + remaining <= static_cast<int>(pool.size()); ++i) {
      int u2 = hxx.join(u_join, pool[i].u);
      if (u2 == u_join) continue;  // pair adds nothing, never in a minimal cover
      if (adj) {
        bool ok = true;
        for (int j : chosen)
          if (!(*adj)[j][i]) { ok = false; break; }
        if (!ok) continue;
      }
      chosen.push_back(i);
      auto found = extend(i + 1, u2, hxx.join(c_join, pool[i].c),
                          remaining - 1);
      chosen.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  std::vector<int> run() {
    const auto& hxx = q.hom(x, x);
    one = q.identity(x).elem;
    bot = hxx.bottom();
    for (int size = 1; size <= static_cast<int>(pool.size()); ++size) {
      chosen.clear();
      if (auto found = extend(0, bot, bot, size)) return *found;
    }
    fail(errc::bad_input, "witness search found no violating family");
  }
};

BilateralityWitness make_witness(int x, const std::vector<Candidate>& pool,
                                 const std::vector<int>& idx) {
  BilateralityWitness w;
  w.object = x;
  for (int i : idx) w.pairs.push_back({pool[i].f, pool[i].g});
  return w;
}

}  // namespace

BilateralityReport check_cauchy_bilateral(const Quantaloid& q,
                                          const BilateralityOptions& opts) {
  if (!q.has_involution())
    fail(errc::no_involution, "Cauchy-bilaterality needs an involution");
  BilateralityReport report;
  report.covering_only = false;
  for (int x = 0; x < q.object_count(); ++x) {
    auto pool = candidate_pool(q, x, /*pairwise_filter=*/true);
    if (static_cast<int>(pool.size()) > opts.max_pairs)
      fail(errc::search_cap_exceeded,
           "object " + q.object_name(x) + " has " +
               std::to_string(pool.size()) +
               " candidate pairs (cap " + std::to_string(opts.max_pairs) +
               "); raise --max-pairs");
    const int m = static_cast<int>(pool.size());
    std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        adj[i][j] = adj[j][i] = compatible(q, pool[i], pool[j]);
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    std::vector<std::vector<int>> cliques;
    std::vector<int> r;
    maximal_cliques(adj, r, all, {}, cliques);
    bool violated = false;
    for (const auto& clique : cliques)
      if (scan_violates(q, x, pool, clique)) { violated = true; break; }
    if (violated) {
      WitnessSearch search{q, x, pool, &adj, 0, 0, {}};
      report.holds = false;
      report.witness = make_witness(x, pool, search.run());
      return report;
    }
  }
  return report;
}

BilateralityReport check_strong_cauchy_bilateral(
    const Quantaloid& q, const BilateralityOptions&) {
  if (!q.has_involution())
    fail(errc::no_involution, "Cauchy-bilaterality needs an involution");
  BilateralityReport report;
  report.covering_only = true;
  for (int x = 0; x < q.object_count(); ++x) {
    auto pool = candidate_pool(q, x, /*pairwise_filter=*/false);
    std::vector<int> all(pool.size());
    for (size_t i = 0; i < pool.size(); ++i) all[i] = static_cast<int>(i);
    if (scan_violates(q, x, pool, all)) {
      WitnessSearch search{q, x, pool, nullptr, 0, 0, {}};
      report.holds = false;
      report.witness = make_witness(x, pool, search.run());
      return report;
    }
  }
  return report;
}

bool witness_premise_holds(const Quantaloid& q, const BilateralityWitness& w,
                           bool covering_only) {
  const int x = w.object;
  MorphismRef cover = q.bottom(x, x);
  for (const auto& p : w.pairs) cover = q.join(cover, q.compose(p.g, p.f));
  if (!q.leq(q.identity(x), cover)) return false;
  if (covering_only) return true;
  for (const auto& pj : w.pairs)
    for (const auto& pk : w.pairs) {
      MorphismRef round = q.compose(pj.g, pj.f);
      if (!q.leq(q.compose(pk.f, round), pk.f)) return false;
      if (!q.leq(q.compose(round, pk.g), pk.g)) return false;
    }
  return true;
}

bool witness_conclusion_holds(const Quantaloid& q,
                              const BilateralityWitness& w) {
  const int x = w.object;
  MorphismRef acc = q.bottom(x, x);
  for (const auto& p : w.pairs)
    acc = q.join(acc, q.compose(q.meet(p.g, q.involute(p.f)),
                                q.meet(q.involute(p.g), p.f)));
  return q.leq(q.identity(x), acc);
}

std::optional<ModularityWitness> modularity_counterexample(
    const Quantaloid& q) {
  if (!q.has_involution())
    fail(errc::no_involution, "modular law needs an involution");
  const int n = q.object_count();
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        for (int fe = 0; fe < q.hom(z, y).size(); ++fe)
          for (int ge = 0; ge < q.hom(y, x).size(); ++ge)
            for (int he = 0; he < q.hom(z, x).size(); ++he) {
              MorphismRef f{z, y, fe}, g{y, x, ge}, h{z, x, he};
              MorphismRef lhs = q.meet(q.compose(g, f), h);
              MorphismRef rhs = q.compose(
                  g, q.meet(f, q.compose(q.involute(g), h)));
              if (!q.leq(lhs, rhs)) return ModularityWitness{f, g, h};
            }
  return std::nullopt;
}

bool is_locally_localic(const Quantaloid& q) {
  const int n = q.object_count();
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      if (!is_distributive(q.hom(s, d))) return false;
  return true;
}

bool is_integral(const Quantaloid& q) {
  for (int x = 0; x < q.object_count(); ++x)
    if (q.identity(x).elem != q.hom(x, x).top()) return false;
  return true;
}

Quantaloid split_idempotents(const Quantaloid& q) {
  const int n = q.object_count();
  struct Idem { int obj; int elem; };
  std::vector<Idem> objs;
  for (int x = 0; x < n; ++x)
    for (int e = 0; e < q.hom(x, x).size(); ++e) {
      MorphismRef m{x, x, e};
      if (q.compose(m, m) != m) continue;
      if (q.has_involution() && q.involute(m) != m) continue;
      objs.push_back({x, e});
    }
  const int k = static_cast<int>(objs.size());
  if (k == 0) fail(errc::bad_input, "no idempotents to split");

  // hom((X,e),(Y,d)) = { g : X -> Y | d o g = g = g o e }, with the induced
  // order. Join-closed and containing bottom, hence a complete lattice.
  std::vector<std::vector<int>> carriers(static_cast<size_t>(k) * k);
  auto member = [&](int s, int d, int ge) {
    MorphismRef g{objs[s].obj, objs[d].obj, ge};
    MorphismRef e{objs[s].obj, objs[s].obj, objs[s].elem};
    MorphismRef dd{objs[d].obj, objs[d].obj, objs[d].elem};
    return q.compose(dd, g) == g && q.compose(g, e) == g;
  };
  for (int s = 0; s < k; ++s)
    for (int d = 0; d < k; ++d)
      for (int ge = 0; ge < q.hom(objs[s].obj, objs[d].obj).size(); ++ge)
        if (member(s, d, ge)) carriers[s * k + d].push_back(ge);

  Quantaloid::Data out;
  for (const auto& o : objs)
    out.objects.push_back(q.object_name(o.obj) + "@" +
                          q.elem_name(o.obj, o.obj, o.elem));
  out.homs.resize(static_cast<size_t>(k) * k);
  out.elem_names.resize(static_cast<size_t>(k) * k);
  auto local_index = [&](int s, int d, int ge) {
    const auto& carrier = carriers[s * k + d];
    return static_cast<int>(
        std::lower_bound(carrier.begin(), carrier.end(), ge) -
        carrier.begin());
  };
  for (int s = 0; s < k; ++s)
    for (int d = 0; d < k; ++d) {
      const auto& carrier = carriers[s * k + d];
      std::vector<std::pair<int, int>> pairs;
      for (size_t a = 0; a < carrier.size(); ++a)
        for (size_t b = 0; b < carrier.size(); ++b)
          if (q.hom(objs[s].obj, objs[d].obj).leq(carrier[a], carrier[b]))
            pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
      out.homs[s * k + d] =
          FiniteLattice::from_order(static_cast<int>(carrier.size()), pairs);
      for (int ge : carrier)
        out.elem_names[s * k + d].push_back(
            q.elem_name(objs[s].obj, objs[d].obj, ge));
    }
  out.compose.resize(static_cast<size_t>(k) * k * k);
  for (int s = 0; s < k; ++s)
    for (int m = 0; m < k; ++m)
      for (int d = 0; d < k; ++d) {
        auto& tab = out.compose[(s * k + m) * k + d];
        const auto& cf = carriers[s * k + m];
        const auto& cg = carriers[m * k + d];
        tab.resize(cf.size() * cg.size());
        for (size_t ge = 0; ge < cg.size(); ++ge)
          for (size_t fe = 0; fe < cf.size(); ++fe) {
            MorphismRef comp = q.compose({objs[m].obj, objs[d].obj, cg[ge]},
                                         {objs[s].obj, objs[m].obj, cf[fe]});
            tab[ge * cf.size() + fe] = local_index(s, d, comp.elem);
          }
      }
  for (int s = 0; s < k; ++s)
    out.identities.push_back(local_index(s, s, objs[s].elem));
  if (q.has_involution()) {
    out.has_involution = true;
    out.involution.resize(static_cast<size_t>(k) * k);
    for (int s = 0; s < k; ++s)
      for (int d = 0; d < k; ++d) {
        auto& tab = out.involution[s * k + d];
        for (int ge : carriers[s * k + d]) {
          MorphismRef inv =
              q.involute({objs[s].obj, objs[d].obj, ge});
          tab.push_back(local_index(d, s, inv.elem));
        }
      }
  }
  return Quantaloid(std::move(out));
}

}  // namespace qkit
