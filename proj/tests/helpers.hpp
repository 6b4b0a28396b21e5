#pragma once

// Shared fixtures and brute-force reference implementations. Everything here
// is deliberately naive: the reference code answers the same questions as the
// library by direct enumeration so the two can be compared on small inputs.

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "qkit/builders.hpp"
#include "qkit/completion.hpp"

namespace qkit::testing {

inline std::shared_ptr<const Quantaloid> shared(Quantaloid q) {
  return std::make_shared<const Quantaloid>(std::move(q));
}

// ---- Brute-force bilaterality ---------------------------------------------

struct NaiveOptions {
  bool covering_only = false;
  // The reference enumerates every subset of the candidate pairs, so pools
  // above ~16 are rejected rather than silently slow.
  int max_pool = 16;
};

// Candidate pairs (f : X -> Y, g : Y -> X) over every Y. Pairs with
// g o f = bottom never affect premises or conclusion (dropping them keeps
// the covering join and shrinks the conclusion join by a bottom term), and
// for the pairwise variant any member of an admissible family must be
// compatible with itself, so such pairs are skipped too.
inline std::vector<WitnessPair> naive_pool(const Quantaloid& q, int x,
                                           bool covering_only) {
  std::vector<WitnessPair> pool;
  for (int y = 0; y < q.object_count(); ++y)
    for (int fe = 0; fe < q.hom(x, y).size(); ++fe)
      for (int ge = 0; ge < q.hom(y, x).size(); ++ge) {
        MorphismRef f{x, y, fe}, g{y, x, ge};
        MorphismRef u = q.compose(g, f);
        if (u.elem == q.hom(x, x).bottom()) continue;
        if (!covering_only) {
          if (!q.leq(q.compose(f, u), f)) continue;
          if (!q.leq(q.compose(u, g), g)) continue;
        }
        pool.push_back({f, g});
      }
  return pool;
}

inline bool naive_family_admissible(const Quantaloid& q,
                                    const std::vector<WitnessPair>& family,
                                    int x, bool covering_only) {
  if (!covering_only)
    for (const auto& [fj, gj] : family)
      for (const auto& [fk, gk] : family) {
        if (!q.leq(q.compose(fk, q.compose(gj, fj)), fk)) return false;
        if (!q.leq(q.compose(q.compose(gj, fj), gk), gk)) return false;
      }
  MorphismRef covered = q.bottom(x, x);
  for (const auto& [f, g] : family) covered = q.join(covered, q.compose(g, f));
  return q.leq(q.identity(x), covered);
}

inline bool naive_family_conclusion(const Quantaloid& q,
                                    const std::vector<WitnessPair>& family,
                                    int x) {
  MorphismRef acc = q.bottom(x, x);
  for (const auto& [f, g] : family) {
    MorphismRef left = q.meet(g, q.involute(f));
    MorphismRef right = q.meet(q.involute(g), f);
    acc = q.join(acc, q.compose(left, right));
  }
  return q.leq(q.identity(x), acc);
}

// True when every admissible family over every object satisfies the
// conclusion; throws when some pool is too large to enumerate.
inline bool naive_bilateral(const Quantaloid& q, NaiveOptions opts = {}) {
  for (int x = 0; x < q.object_count(); ++x) {
    auto pool = naive_pool(q, x, opts.covering_only);
    if (static_cast<int>(pool.size()) > opts.max_pool)
      throw std::runtime_error("naive pool too large: " +
                               std::to_string(pool.size()));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pool.size());
         ++mask) {
      std::vector<WitnessPair> family;
      for (size_t i = 0; i < pool.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) family.push_back(pool[i]);
      if (naive_family_admissible(q, family, x, opts.covering_only) &&
          !naive_family_conclusion(q, family, x))
        return false;
    }
  }
  return true;
}

// ---- Seeded random categories and distributors ----------------------------

// std::mt19937 with modulo keeps the draw sequence identical across
// platforms (the distribution helpers in <random> are not portable).
inline int draw(std::mt19937& rng, int bound) {
  return static_cast<int>(rng() % static_cast<unsigned>(bound));
}

// A random category over `base`: random types and hom entries, forced above
// the identities on the diagonal and then saturated under composition.
inline QCategory random_category(std::shared_ptr<const Quantaloid> base,
                                 std::mt19937& rng, int max_objects = 2) {
  const Quantaloid& q = *base;
  int n = 1 + draw(rng, max_objects);
  std::vector<int> types, hom(static_cast<size_t>(n) * n);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    types.push_back(draw(rng, q.object_count()));
    names.push_back("a" + std::to_string(i));
  }
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      hom[y * n + x] = draw(rng, q.hom(types[x], types[y]).size());
  for (int x = 0; x < n; ++x)
    hom[x * n + x] = q.hom(types[x], types[x])
                         .join(hom[x * n + x], q.identity(types[x]).elem);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int z = 0; z < n; ++z)
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
          MorphismRef zy{types[y], types[z], hom[z * n + y]};
          MorphismRef yx{types[x], types[y], hom[y * n + x]};
          MorphismRef zx{types[x], types[z], hom[z * n + x]};
          int joined = q.join(zx, q.compose(zy, yx)).elem;
          if (joined != hom[z * n + x]) {
            hom[z * n + x] = joined;
            grew = true;
          }
        }
  }
  return QCategory(std::move(base), std::move(names), std::move(types),
                   std::move(hom));
}

// A random distributor a -||-> b: random entries saturated under both
// actions (so the result satisfies the distributor laws by construction).
inline Distributor random_distributor(const QCategory& a, const QCategory& b,
                                      std::mt19937& rng) {
  const Quantaloid& q = a.base();
  std::vector<int> m(static_cast<size_t>(b.size()) * a.size());
  for (int bo = 0; bo < b.size(); ++bo)
    for (int ao = 0; ao < a.size(); ++ao)
      m[bo * a.size() + ao] = draw(rng, q.hom(a.type(ao), b.type(bo)).size());
  bool grew = true;
  while (grew) {
    grew = false;
    for (int bo = 0; bo < b.size(); ++bo)
      for (int ao = 0; ao < a.size(); ++ao) {
        MorphismRef cur{a.type(ao), b.type(bo), m[bo * a.size() + ao]};
        MorphismRef acc = cur;
        for (int b2 = 0; b2 < b.size(); ++b2)
          acc = q.join(acc, q.compose(b.hom(bo, b2),
                                      {a.type(ao), b.type(b2),
                                       m[b2 * a.size() + ao]}));
        for (int a2 = 0; a2 < a.size(); ++a2)
          acc = q.join(acc, q.compose({a.type(a2), b.type(bo),
                                       m[bo * a.size() + a2]},
                                      a.hom(a2, ao)));
        if (acc.elem != cur.elem) {
          m[bo * a.size() + ao] = acc.elem;
          grew = true;
        }
      }
  }
  return Distributor(a, b, std::move(m));
}

}  // namespace qkit::testing
