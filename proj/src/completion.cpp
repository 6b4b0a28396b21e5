#include "qkit/completion.hpp"

#include <algorithm>

#include "qkit/error.hpp"

namespace qkit {

namespace {

std::string completion_object_name(int index) {
  return "p" + std::to_string(index);
}

}  // namespace

std::vector<Distributor> enumerate_presheaves(const QCategory& a, int x,
                                              const CompletionOptions& opts) {
  const Quantaloid& q = a.base();
  const int n = a.size();
  long long total = 1;
  for (int o = 0; o < n; ++o) {
    total *= q.hom(x, a.type(o)).size();
    if (total > opts.max_presheaves)
      fail(errc::search_cap_exceeded,
           "presheaf enumeration at base object " + q.object_name(x) +
               " over a category with " + std::to_string(n) +
               " objects exceeds " + std::to_string(opts.max_presheaves) +
               " columns; raise --max-presheaves");
  }

  std::vector<Distributor> out;
  std::vector<int> col(n, 0);
  QCategory unit = unit_category(a.base_ptr(), x);
  while (true) {
    bool closed = true;
    for (int o = 0; o < n && closed; ++o)
      for (int o2 = 0; o2 < n && closed; ++o2) {
        MorphismRef phi2{x, a.type(o2), col[o2]};
        if (!q.leq(q.compose(a.hom(o, o2), phi2), {x, a.type(o), col[o]}))
          closed = false;
      }
    if (closed) out.emplace_back(unit, a, col, false);
    // Lexicographic odometer: the last coordinate moves fastest.
    int i = n - 1;
    for (; i >= 0; --i) {
      if (col[i] + 1 < q.hom(x, a.type(i)).size()) {
        ++col[i];
        std::fill(col.begin() + i + 1, col.end(), 0);
        break;
      }
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<Distributor> left_adjoint_presheaves(const QCategory& a,
                                                 const CompletionOptions& opts) {
  std::vector<Distributor> out;
  for (int x = 0; x < a.base().object_count(); ++x)
    for (auto& phi : enumerate_presheaves(a, x, opts))
      if (is_left_adjoint(phi)) out.push_back(std::move(phi));
  return out;
}

namespace {

Completion completion_from_presheaves(const QCategory& a,
                                      std::vector<Distributor> presheaves) {
  const Quantaloid& q = a.base();
  const int k = static_cast<int>(presheaves.size());
  std::vector<Distributor> adjoints;
  adjoints.reserve(k);
  for (const auto& phi : presheaves)
    adjoints.push_back(right_adjoint_candidate(phi));

  std::vector<std::string> names;
  std::vector<int> types;
  for (int i = 0; i < k; ++i) {
    names.push_back(completion_object_name(i));
    types.push_back(presheaf_type(presheaves[i]));
  }
  // hom(psi, phi) is the single entry of psi^* . phi.
  std::vector<int> hom(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      MorphismRef acc = q.bottom(types[j], types[i]);
      for (int o = 0; o < a.size(); ++o)
        acc = q.join(acc, q.compose(adjoints[i].at(0, o),
                                    presheaves[j].at(o, 0)));
      hom[i * k + j] = acc.elem;
    }

  Completion result{QCategory(a.base_ptr(), std::move(names), std::move(types),
                              std::move(hom)),
                    std::move(presheaves),
                    {},
                    {}};
  for (int o = 0; o < a.size(); ++o) {
    std::vector<int> col(a.size());
    for (int y = 0; y < a.size(); ++y) col[y] = a.hom_elem(y, o);
    int found = -1;
    for (int i = 0; i < k && found < 0; ++i)
      if (presheaf_type(result.presheaves[i]) == a.type(o) &&
          result.presheaves[i].matrix() == col)
        found = i;
    if (found < 0)
      fail(errc::bad_input,
           "representable presheaf of object " + a.name(o) +
               " is not among the completion objects");
    result.yoneda.push_back(found);
  }
  return result;
}

}  // namespace

Completion cauchy_completion(const QCategory& a,
                             const CompletionOptions& opts) {
  return completion_from_presheaves(a, left_adjoint_presheaves(a, opts));
}

Completion symmetric_completion(const QCategory& a,
                                const CompletionOptions& opts) {
  if (!is_symmetric(a))
    fail(errc::not_symmetric,
         "the symmetric completion is defined for symmetric categories");
  std::vector<Distributor> all = left_adjoint_presheaves(a, opts);
  std::vector<Distributor> kept;
  std::vector<int> embedding;
  for (int i = 0; i < static_cast<int>(all.size()); ++i)
    if (is_symmetric_left_adjoint(all[i])) {
      kept.push_back(all[i]);
      embedding.push_back(i);
    }
  Completion result = completion_from_presheaves(a, std::move(kept));
  result.embedding = std::move(embedding);
  return result;
}

std::optional<int> representing_object(const QCategory& a,
                                       const Distributor& phi) {
  int x = presheaf_type(phi);
  const auto& col = phi.matrix();
  for (int o = 0; o < a.size(); ++o) {
    if (a.type(o) != x) continue;
    bool match = true;
    for (int y = 0; y < a.size() && match; ++y)
      if (a.hom_elem(y, o) != col[y]) match = false;
    if (match) return o;
  }
  return std::nullopt;
}

bool is_cauchy_complete(const QCategory& a, const CompletionOptions& opts) {
  for (const auto& phi : left_adjoint_presheaves(a, opts))
    if (!representing_object(a, phi)) return false;
  return true;
}

bool is_symmetrically_complete(const QCategory& a,
                               const CompletionOptions& opts) {
  if (!is_symmetric(a))
    fail(errc::not_symmetric,
         "symmetric completeness is defined for symmetric categories");
  for (const auto& phi : left_adjoint_presheaves(a, opts))
    if (is_symmetric_left_adjoint(phi) && !representing_object(a, phi))
      return false;
  return true;
}

Distributor completion_image(const QFunctor& f, const Distributor& phi) {
  return compose_distributors(graph(f), phi);
}

QFunctor induced_completion_functor(const QFunctor& f, const Completion& ca,
                                    const Completion& cb) {
  std::vector<int> map;
  for (const auto& phi : ca.presheaves) {
    Distributor image = completion_image(f, phi);
    int found = -1;
    for (int i = 0; i < static_cast<int>(cb.presheaves.size()); ++i)
      if (presheaf_type(cb.presheaves[i]) == presheaf_type(image) &&
          cb.presheaves[i].matrix() == image.matrix())
        found = i;
    if (found < 0)
      fail(errc::bad_input,
           "image presheaf missing from the codomain completion");
    map.push_back(found);
  }
  return QFunctor(ca.category, cb.category, std::move(map));
}

LComparison compare_completions(const QCategory& a,
                                const CompletionOptions& opts) {
  QFunctor counit = symmetrisation_counit(a);  // S : a_s -> a
  const QCategory& as = counit.src();

  Completion cc = cauchy_completion(a, opts);
  Completion sc = symmetric_completion(as, opts);

  LComparison cmp{sc.category, symmetrise(cc.category), {}, false, false,
                  false, false, {}};

  Distributor up = graph(counit);     // a_s -||-> a
  Distributor down = cograph(counit); // a -||-> a_s

  for (const auto& phi : sc.presheaves) {
    Distributor image = compose_distributors(up, phi);
    int found = -1;
    for (int i = 0; i < static_cast<int>(cc.presheaves.size()); ++i)
      if (presheaf_type(cc.presheaves[i]) == presheaf_type(image) &&
          cc.presheaves[i].matrix() == image.matrix())
        found = i;
    if (found < 0)
      fail(errc::bad_input,
           "comparison image is not a Cauchy-completion object");
    cmp.object_map.push_back(found);
  }

  std::vector<int> map_sorted = cmp.object_map;
  std::sort(map_sorted.begin(), map_sorted.end());
  cmp.injective = std::adjacent_find(map_sorted.begin(), map_sorted.end()) ==
                  map_sorted.end();
  for (int i = 0; i < cmp.codomain.size(); ++i)
    if (!std::binary_search(map_sorted.begin(), map_sorted.end(), i))
      cmp.unmatched_codomain.push_back(i);
  cmp.surjective = cmp.unmatched_codomain.empty();

  cmp.hom_equality = true;
  const int k = cmp.domain.size();
  for (int i = 0; i < k && cmp.hom_equality; ++i)
    for (int j = 0; j < k && cmp.hom_equality; ++j)
      if (cmp.domain.hom_elem(i, j) !=
          cmp.codomain.hom_elem(cmp.object_map[i], cmp.object_map[j]))
        cmp.hom_equality = false;

  // phi = (cograph(S) . L phi) /\ ((L phi)^* . graph(S))^o for each object.
  cmp.reconstruction_identity = true;
  for (int i = 0; i < k; ++i) {
    const Distributor& phi = sc.presheaves[i];
    const Distributor& lphi = cc.presheaves[cmp.object_map[i]];
    Distributor lhs = compose_distributors(down, lphi);
    Distributor rhs = involute_distributor(
        compose_distributors(right_adjoint_candidate(lphi), up));
    if (meet_distributors(lhs, rhs).matrix() != phi.matrix())
      cmp.reconstruction_identity = false;
  }
  return cmp;
}

QFunctor l_functor(const QCategory& a, const CompletionOptions& opts) {
  LComparison cmp = compare_completions(a, opts);
  return QFunctor(cmp.domain, cmp.codomain, cmp.object_map);
}

FamilyCategory witness_category(std::shared_ptr<const Quantaloid> q,
                                const BilateralityWitness& family) {
  const int k = static_cast<int>(family.pairs.size());
  if (k == 0) fail(errc::bad_input, "witness family must be nonempty");
  const int x = family.object;
  for (const auto& p : family.pairs)
    if (p.f.src != x || p.g.dst != x || p.f.dst != p.g.src)
      fail(errc::bad_input, "witness family pairs must span a common object");

  // Premise check: every pairwise instance plus the covering join.
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      const auto& pj = family.pairs[j];
      const auto& pi = family.pairs[i];
      MorphismRef round = q->compose(pj.g, pj.f);
      if (!q->leq(q->compose(pi.f, round), pi.f))
        fail(errc::premise_violated,
             "f_" + std::to_string(i) + " o g_" + std::to_string(j) +
                 " o f_" + std::to_string(j) + " is not <= f_" +
                 std::to_string(i));
      if (!q->leq(q->compose(round, pi.g), pi.g))
        fail(errc::premise_violated,
             "g_" + std::to_string(j) + " o f_" + std::to_string(j) +
                 " o g_" + std::to_string(i) + " is not <= g_" +
                 std::to_string(i));
    }
  MorphismRef cover = q->bottom(x, x);
  for (const auto& p : family.pairs) cover = q->join(cover, q->compose(p.g, p.f));
  if (!q->leq(q->identity(x), cover))
    fail(errc::premise_violated, "the family does not cover 1_" +
                                     q->object_name(x));

  std::vector<std::string> names;
  std::vector<int> types;
  for (int i = 0; i < k; ++i) {
    names.push_back("w" + std::to_string(i));
    types.push_back(family.pairs[i].f.dst);
  }
  std::vector<int> hom(static_cast<size_t>(k) * k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      MorphismRef entry = q->compose(family.pairs[j].f, family.pairs[i].g);
      if (i == j) entry = q->join(entry, q->identity(types[i]));
      hom[j * k + i] = entry.elem;
    }
  QCategory cat(q, std::move(names), std::move(types), std::move(hom));

  std::vector<int> column(k);
  for (int i = 0; i < k; ++i) column[i] = family.pairs[i].f.elem;
  Distributor presheaf = make_presheaf(cat, x, column);
  return FamilyCategory{std::move(cat), std::move(presheaf)};
}

CorollaryCheck verify_corollary_squares(const std::vector<QCategory>& samples,
                                        const BilateralityOptions& bopts,
                                        const CompletionOptions& copts) {
  if (samples.empty())
    fail(errc::bad_input, "corollary verification needs at least one sample");
  const auto& base = samples.front().base_ptr();
  for (const auto& s : samples)
    if (s.base_ptr().get() != base.get())
      fail(errc::bad_input, "all samples must share one base quantaloid");

  BilateralityReport bil = check_cauchy_bilateral(*base, bopts);
  if (!bil.holds)
    fail(errc::not_bilateral,
         "the base quantaloid is not Cauchy-bilateral (witness at object " +
             base->object_name(bil.witness->object) + ")");

  CorollaryCheck check;
  for (int si = 0; si < static_cast<int>(samples.size()); ++si) {
    const QCategory& a = samples[si];
    std::string tag = "sample " + std::to_string(si);
    if (is_symmetric(a)) {
      ++check.symmetric_samples;
      Completion cc = cauchy_completion(a, copts);
      if (!is_symmetric(cc.category))
        check.failures.push_back(
            tag + ": Cauchy completion of a symmetric category is not symmetric");
      Completion sc = symmetric_completion(a, copts);
      if (sc.presheaves.size() != cc.presheaves.size())
        check.failures.push_back(
            tag + ": symmetric and Cauchy completions have different objects");
    }
    if (is_cauchy_complete(a, copts)) {
      ++check.complete_samples;
      if (!is_cauchy_complete(symmetrise(a), copts))
        check.failures.push_back(
            tag + ": symmetrisation of a Cauchy-complete category is not "
                  "Cauchy complete");
    }
  }
  return check;
}

}  // namespace qkit
