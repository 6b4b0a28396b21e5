#include "qkit/builders.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "qkit/error.hpp"

namespace qkit {

std::vector<int> FiniteCategory::hom_list(int dom, int cod) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(morphisms.size()); ++i)
    if (morphisms[i].dom == dom && morphisms[i].cod == cod) out.push_back(i);
  return out;
}

ValidationReport FiniteCategory::validate() const {
  ValidationReport report;
  auto add = [&](const std::string& law, const std::string& detail) {
    report.violations.push_back({law, detail});
  };
  const int m = static_cast<int>(morphisms.size());
  const int n = static_cast<int>(objects.size());
  if (static_cast<int>(identity.size()) != n) {
    add("identities", "expected one identity per object");
    return report;
  }
  if (static_cast<int>(compose.size()) != m * m) {
    add("composition", "table must be |morphisms|^2");
    return report;
  }
  for (int x = 0; x < n; ++x) {
    int id = identity[x];
    if (id < 0 || id >= m || morphisms[id].dom != x || morphisms[id].cod != x)
      add("identities", "identity of " + objects[x] + " is not an endomorphism");
  }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      int c = compose_idx(g, f);
      bool composable = morphisms[f].cod == morphisms[g].dom;
      if (composable) {
        if (c < 0 || c >= m || morphisms[c].dom != morphisms[f].dom ||
            morphisms[c].cod != morphisms[g].cod)
          add("composition", morphisms[g].name + " o " + morphisms[f].name +
                                 " has wrong endpoints");
      } else if (c != -1) {
        add("composition", morphisms[g].name + " o " + morphisms[f].name +
                               " should be undefined");
      }
    }
  if (!report.ok()) return report;
  for (int f = 0; f < m; ++f) {
    if (compose_idx(f, identity[morphisms[f].dom]) != f)
      add("right unit", morphisms[f].name);
    if (compose_idx(identity[morphisms[f].cod], f) != f)
      add("left unit", morphisms[f].name);
  }
  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f) {
        if (morphisms[f].cod != morphisms[g].dom ||
            morphisms[g].cod != morphisms[h].dom)
          continue;
        if (compose_idx(h, compose_idx(g, f)) !=
            compose_idx(compose_idx(h, g), f))
          add("associativity", "(" + morphisms[h].name + ", " +
                                   morphisms[g].name + ", " +
                                   morphisms[f].name + ")");
      }
  if (!inverse.empty()) {
    if (static_cast<int>(inverse.size()) != m)
      add("inverses", "expected one inverse per morphism");
    else
      for (int f = 0; f < m; ++f) {
        int i = inverse[f];
        if (i < 0 || i >= m || morphisms[i].dom != morphisms[f].cod ||
            morphisms[i].cod != morphisms[f].dom ||
            compose_idx(i, f) != identity[morphisms[f].dom] ||
            compose_idx(f, i) != identity[morphisms[f].cod])
          add("inverses", morphisms[f].name);
      }
  }
  return report;
}

FiniteCategory cyclic_group_category(int n) {
  if (n < 1) fail(errc::bad_input, "group order must be positive");
  FiniteCategory c;
  c.objects = {"*"};
  for (int i = 0; i < n; ++i)
    c.morphisms.push_back({"g" + std::to_string(i), 0, 0});
  c.compose.resize(static_cast<size_t>(n) * n);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) c.compose[g * n + f] = (g + f) % n;
  c.identity = {0};
  for (int i = 0; i < n; ++i) c.inverse.push_back((n - i) % n);
  return c;
}

namespace {

void require_valid(const FiniteCategory& c) {
  ValidationReport report = c.validate();
  if (!report.ok())
    fail(errc::bad_input, "finite category laws violated:\n" +
                              report.to_string());
}

std::string subset_name(const std::vector<std::string>& item_names,
                        std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (size_t i = 0; i < item_names.size(); ++i)
    if (mask & (std::uint64_t{1} << i)) {
      if (!first) out += ",";
      out += item_names[i];
      first = false;
    }
  return out + "}";
}

Quantaloid with_trivial_involution(const Quantaloid& q) {
  Quantaloid::Data data = q.data();
  const int n = static_cast<int>(data.objects.size());
  data.has_involution = true;
  data.involution.assign(static_cast<size_t>(n) * n, {});
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      if (s != d && data.homs[s * n + d].size() != data.homs[d * n + s].size())
        fail(errc::bad_input, "trivial involution needs square hom families");
      auto& tab = data.involution[s * n + d];
      tab.resize(data.homs[s * n + d].size());
      for (size_t e = 0; e < tab.size(); ++e) tab[e] = static_cast<int>(e);
    }
  return Quantaloid(std::move(data));
}

}  // namespace

Quantaloid free_quantaloid(const FiniteCategory& c, bool canonical_involution) {
  require_valid(c);
  if (canonical_involution && !c.is_groupoid())
    fail(errc::not_a_groupoid,
         "the canonical involution needs a groupoid (inverses missing)");
  const int n = static_cast<int>(c.objects.size());
  std::vector<std::vector<int>> lists(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      lists[s * n + d] = c.hom_list(s, d);
      if (lists[s * n + d].size() > 8)
        fail(errc::bad_input, "free quantaloid supports at most 8 parallel "
                              "morphisms per hom");
    }
  auto position = [&](int s, int d, int mor) {
    const auto& list = lists[s * n + d];
    return static_cast<int>(std::lower_bound(list.begin(), list.end(), mor) -
                            list.begin());
  };

  Quantaloid::Data data;
  data.objects = c.objects;
  data.homs.resize(static_cast<size_t>(n) * n);
  data.elem_names.resize(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      const auto& list = lists[s * n + d];
      data.homs[s * n + d] =
          powerset_lattice(static_cast<int>(list.size()));
      std::vector<std::string> item_names;
      for (int mor : list) item_names.push_back(c.morphisms[mor].name);
      for (int mask = 0; mask < data.homs[s * n + d].size(); ++mask)
        data.elem_names[s * n + d].push_back(subset_name(item_names, mask));
    }
  data.compose.resize(static_cast<size_t>(n) * n * n);
  for (int s = 0; s < n; ++s)
    for (int m = 0; m < n; ++m)
      for (int d = 0; d < n; ++d) {
        const auto& lf = lists[s * n + m];
        const auto& lg = lists[m * n + d];
        auto& tab = data.compose[(s * n + m) * n + d];
        tab.resize((size_t{1} << lf.size()) << lg.size());
        for (int gm = 0; gm < (1 << lg.size()); ++gm)
          for (int fm = 0; fm < (1 << lf.size()); ++fm) {
            int out = 0;
            for (size_t gi = 0; gi < lg.size(); ++gi)
              if (gm & (1 << gi))
                for (size_t fi = 0; fi < lf.size(); ++fi)
                  if (fm & (1 << fi))
                    out |= 1 << position(
                               s, d, c.compose_idx(lg[gi], lf[fi]));
            tab[gm * (1 << lf.size()) + fm] = out;
          }
      }
  for (int x = 0; x < n; ++x)
    data.identities.push_back(1 << position(x, x, c.identity[x]));
  if (canonical_involution) {
    data.has_involution = true;
    data.involution.resize(static_cast<size_t>(n) * n);
    for (int s = 0; s < n; ++s)
      for (int d = 0; d < n; ++d) {
        const auto& list = lists[s * n + d];
        auto& tab = data.involution[s * n + d];
        tab.resize(size_t{1} << list.size());
        for (int mask = 0; mask < (1 << list.size()); ++mask) {
          int out = 0;
          for (size_t i = 0; i < list.size(); ++i)
            if (mask & (1 << i))
              out |= 1 << position(d, s, c.inverse[list[i]]);
          tab[mask] = out;
        }
      }
  }
  return Quantaloid(std::move(data));
}

Quantaloid group_quantale(const FiniteCategory& g) {
  require_valid(g);
  if (g.objects.size() != 1)
    fail(errc::not_a_groupoid, "a group has exactly one object");
  const int m = static_cast<int>(g.morphisms.size());
  if (!g.is_groupoid())
    fail(errc::not_a_groupoid, "a group needs inverses for every element");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (g.compose_idx(a, b) != g.compose_idx(b, a))
        fail(errc::not_commutative,
             "elements " + g.morphisms[a].name + " and " +
                 g.morphisms[b].name + " do not commute");
  return with_trivial_involution(free_quantaloid(g, false));
}

Quantaloid interval_quantale(int cap) {
  if (cap < 1) fail(errc::bad_input, "interval cap must be at least 1");
  const int n = cap + 1;
  // Reverse numerical order: value v is below value w when v >= w.
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v <= cap; ++v) pairs.emplace_back(v, v - 1);
  Quantaloid::Data data;
  data.objects = {"*"};
  data.homs = {FiniteLattice::from_order(n, pairs)};
  data.elem_names.resize(1);
  for (int v = 0; v < n; ++v)
    data.elem_names[0].push_back(std::to_string(v));
  data.compose.resize(1);
  data.compose[0].resize(static_cast<size_t>(n) * n);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      data.compose[0][g * n + f] = std::min(g + f, cap);
  data.identities = {0};
  data.has_involution = true;
  data.involution.resize(1);
  for (int v = 0; v < n; ++v) data.involution[0].push_back(v);
  return Quantaloid(std::move(data));
}

Quantaloid locale_quantale(const FiniteLattice& l,
                           std::vector<std::string> elem_names) {
  if (auto bad = distributivity_counterexample(l))
    fail(errc::not_distributive,
         "lattice is not distributive at (" + std::to_string((*bad)[0]) +
             "," + std::to_string((*bad)[1]) + "," +
             std::to_string((*bad)[2]) + ")");
  if (elem_names.empty())
    for (int e = 0; e < l.size(); ++e)
      elem_names.push_back("e" + std::to_string(e));
  if (static_cast<int>(elem_names.size()) != l.size())
    fail(errc::bad_input, "need one name per lattice element");
  Quantaloid::Data data;
  data.objects = {"*"};
  data.homs = {l};
  data.elem_names = {std::move(elem_names)};
  data.compose.resize(1);
  data.compose[0].resize(static_cast<size_t>(l.size()) * l.size());
  for (int g = 0; g < l.size(); ++g)
    for (int f = 0; f < l.size(); ++f)
      data.compose[0][g * l.size() + f] = l.meet(g, f);
  data.identities = {l.top()};
  Quantaloid q(std::move(data));
  return with_trivial_involution(q);
}

Quantaloid pentagon_quantale() {
  std::vector<std::pair<int, int>> pairs = {
      {0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  Quantaloid::Data data;
  data.objects = {"*"};
  data.homs = {FiniteLattice::from_order(5, pairs)};
  data.elem_names = {{"0", "b", "1", "a", "top"}};
  data.compose = {{
      0, 0, 0, 0, 0,  // 0 o -
      0, 1, 1, 3, 4,  // b o -
      0, 1, 2, 3, 4,  // 1 o -
      0, 3, 3, 1, 4,  // a o -
      0, 4, 4, 4, 4,  // top o -
  }};
  data.identities = {2};
  Quantaloid q(std::move(data));
  return with_trivial_involution(q);
}

Quantaloid rel_quantaloid(const std::vector<int>& sizes) {
  const int n = static_cast<int>(sizes.size());
  if (n == 0) fail(errc::bad_input, "need at least one set");
  for (int s : sizes)
    if (s < 1) fail(errc::bad_input, "set sizes must be positive");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (sizes[a] * sizes[b] > 8)
        fail(errc::bad_input,
             "relation quantaloid supports |X|*|Y| <= 8 per hom");

  Quantaloid::Data data;
  for (int i = 0; i < n; ++i) data.objects.push_back("X" + std::to_string(i));
  data.homs.resize(static_cast<size_t>(n) * n);
  data.elem_names.resize(static_cast<size_t>(n) * n);
  auto bit = [&](int /*s*/, int d, int i, int j) { return i * sizes[d] + j; };
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      int bits = sizes[s] * sizes[d];
      data.homs[s * n + d] = powerset_lattice(bits);
      std::vector<std::string> item_names;
      for (int i = 0; i < sizes[s]; ++i)
        for (int j = 0; j < sizes[d]; ++j)
          item_names.push_back("(" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
      for (int mask = 0; mask < (1 << bits); ++mask)
        data.elem_names[s * n + d].push_back(subset_name(item_names, mask));
    }
  data.compose.resize(static_cast<size_t>(n) * n * n);
  for (int s = 0; s < n; ++s)
    for (int m = 0; m < n; ++m)
      for (int d = 0; d < n; ++d) {
        auto& tab = data.compose[(s * n + m) * n + d];
        int fb = sizes[s] * sizes[m], gb = sizes[m] * sizes[d];
        tab.resize((size_t{1} << fb) << gb);
        for (int gm = 0; gm < (1 << gb); ++gm)
          for (int fm = 0; fm < (1 << fb); ++fm) {
            int out = 0;
            for (int i = 0; i < sizes[s]; ++i)
              for (int k = 0; k < sizes[d]; ++k) {
                bool hit = false;
                for (int j = 0; j < sizes[m] && !hit; ++j)
                  if ((fm & (1 << bit(s, m, i, j))) &&
                      (gm & (1 << bit(m, d, j, k))))
                    hit = true;
                if (hit) out |= 1 << bit(s, d, i, k);
              }
            tab[gm * (1 << fb) + fm] = out;
          }
      }
  for (int x = 0; x < n; ++x) {
    int mask = 0;
    for (int i = 0; i < sizes[x]; ++i) mask |= 1 << bit(x, x, i, i);
    data.identities.push_back(mask);
  }
  data.has_involution = true;
  data.involution.resize(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      auto& tab = data.involution[s * n + d];
      int bits = sizes[s] * sizes[d];
      tab.resize(size_t{1} << bits);
      for (int mask = 0; mask < (1 << bits); ++mask) {
        int out = 0;
        for (int i = 0; i < sizes[s]; ++i)
          for (int j = 0; j < sizes[d]; ++j)
            if (mask & (1 << bit(s, d, i, j))) out |= 1 << bit(d, s, j, i);
        tab[mask] = out;
      }
    }
  return Quantaloid(std::move(data));
}

QCategory path_metric_category(int points,
                               const std::vector<std::pair<int, int>>& edges,
                               int cap) {
  if (points < 1) fail(errc::bad_input, "need at least one point");
  for (auto [a, b] : edges)
    if (a < 0 || a >= points || b < 0 || b >= points)
      fail(errc::bad_input, "edge endpoint out of range");
  auto base = std::make_shared<const Quantaloid>(interval_quantale(cap));
  // d[x][y]: shortest directed path length from x to y, capped.
  std::vector<std::vector<int>> d(points, std::vector<int>(points, cap));
  for (int s = 0; s < points; ++s) {
    std::deque<int> queue{s};
    d[s][s] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [a, b] : edges)
        if (a == v && d[s][v] + 1 < d[s][b]) {
          d[s][b] = d[s][v] + 1;
          queue.push_back(b);
        }
    }
  }
  std::vector<std::string> names;
  std::vector<int> types(points, 0);
  for (int i = 0; i < points; ++i) names.push_back("p" + std::to_string(i));
  std::vector<int> hom(static_cast<size_t>(points) * points);
  for (int y = 0; y < points; ++y)
    for (int x = 0; x < points; ++x) hom[y * points + x] = d[x][y];
  return QCategory(std::move(base), std::move(names), std::move(types),
                   std::move(hom));
}

// ---- Cribles and topologies ----------------------------------------------

CribleSystem::CribleSystem(FiniteCategory site) : site_(std::move(site)) {
  require_valid(site_);
  n_ = static_cast<int>(site_.objects.size());
  if (site_.morphisms.size() > 64)
    fail(errc::bad_input, "span calculus supports at most 64 morphisms");
  spans_.resize(static_cast<size_t>(n_) * n_);
  const int m = static_cast<int>(site_.morphisms.size());
  for (int src = 0; src < n_; ++src)
    for (int dst = 0; dst < n_; ++dst) {
      auto& list = spans_[src * n_ + dst];
      for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
          if (site_.morphisms[f].dom == site_.morphisms[g].dom &&
              site_.morphisms[f].cod == dst && site_.morphisms[g].cod == src)
            list.emplace_back(f, g);
      if (list.size() > 64)
        fail(errc::bad_input, "span calculus supports at most 64 spans per hom");
    }
  cribles_.resize(static_cast<size_t>(n_) * n_);
  for (int src = 0; src < n_; ++src)
    for (int dst = 0; dst < n_; ++dst) {
      const auto& universe = spans_[src * n_ + dst];
      std::vector<std::uint64_t> principals;
      for (size_t i = 0; i < universe.size(); ++i)
        principals.push_back(close(src, dst, std::uint64_t{1} << i));
      std::set<std::uint64_t> closed{0};
      std::deque<std::uint64_t> queue{0};
      while (!queue.empty()) {
        std::uint64_t cur = queue.front();
        queue.pop_front();
        for (std::uint64_t p : principals) {
          std::uint64_t u = cur | p;
          if (closed.insert(u).second) queue.push_back(u);
        }
      }
      cribles_[src * n_ + dst].assign(closed.begin(), closed.end());
    }
}

std::uint64_t CribleSystem::close(int src, int dst, std::uint64_t set) const {
  const auto& universe = spans_[src * n_ + dst];
  auto index_of = [&](int f, int g) {
    for (size_t i = 0; i < universe.size(); ++i)
      if (universe[i] == std::make_pair(f, g)) return static_cast<int>(i);
    return -1;
  };
  const int m = static_cast<int>(site_.morphisms.size());
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t i = 0; i < universe.size(); ++i) {
      if (!(set & (std::uint64_t{1} << i))) continue;
      auto [f, g] = universe[i];
      for (int h = 0; h < m; ++h) {
        if (site_.morphisms[h].cod != site_.morphisms[f].dom) continue;
        int fi = site_.compose_idx(f, h);
        int gi = site_.compose_idx(g, h);
        int at = index_of(fi, gi);
        if (at >= 0 && !(set & (std::uint64_t{1} << at))) {
          set |= std::uint64_t{1} << at;
          grew = true;
        }
      }
    }
  }
  return set;
}

std::uint64_t CribleSystem::identity_crible(int c) const {
  const auto& universe = spans_[c * n_ + c];
  std::uint64_t out = 0;
  for (size_t i = 0; i < universe.size(); ++i)
    if (universe[i].first == universe[i].second)
      out |= std::uint64_t{1} << i;
  return out;
}

std::uint64_t CribleSystem::compose(int src, int mid, int dst, std::uint64_t r,
                                    std::uint64_t s) const {
  const auto& out_universe = spans_[src * n_ + dst];
  const auto& r_universe = spans_[mid * n_ + dst];
  const auto& s_universe = spans_[src * n_ + mid];
  const int m = static_cast<int>(site_.morphisms.size());
  std::uint64_t out = 0;
  for (size_t i = 0; i < out_universe.size(); ++i) {
    auto [f, g] = out_universe[i];
    bool hit = false;
    for (int h = 0; h < m && !hit; ++h) {
      if (site_.morphisms[h].dom != site_.morphisms[f].dom ||
          site_.morphisms[h].cod != mid)
        continue;
      bool in_r = false, in_s = false;
      for (size_t ri = 0; ri < r_universe.size(); ++ri)
        if (r_universe[ri] == std::make_pair(f, h) &&
            (r & (std::uint64_t{1} << ri)))
          in_r = true;
      for (size_t si = 0; si < s_universe.size(); ++si)
        if (s_universe[si] == std::make_pair(h, g) &&
            (s & (std::uint64_t{1} << si)))
          in_s = true;
      hit = in_r && in_s;
    }
    if (hit) out |= std::uint64_t{1} << i;
  }
  return out;
}

std::uint64_t CribleSystem::involute(int src, int dst, std::uint64_t r) const {
  const auto& universe = spans_[src * n_ + dst];
  const auto& target = spans_[dst * n_ + src];
  std::uint64_t out = 0;
  for (size_t i = 0; i < universe.size(); ++i) {
    if (!(r & (std::uint64_t{1} << i))) continue;
    auto rev = std::make_pair(universe[i].second, universe[i].first);
    for (size_t j = 0; j < target.size(); ++j)
      if (target[j] == rev) out |= std::uint64_t{1} << j;
  }
  return out;
}

std::string CribleSystem::span_name(int src, int dst, int span_index) const {
  const auto& sp = spans_[src * n_ + dst][span_index];
  return "(" + site_.morphisms[sp.first].name + "," +
         site_.morphisms[sp.second].name + ")";
}

std::uint64_t maximal_sieve(const FiniteCategory& c, int obj) {
  std::uint64_t out = 0;
  for (size_t i = 0; i < c.morphisms.size(); ++i)
    if (c.morphisms[i].cod == obj) out |= std::uint64_t{1} << i;
  return out;
}

std::uint64_t sieve_close(const FiniteCategory& c, int obj,
                          std::uint64_t morphisms) {
  const int m = static_cast<int>(c.morphisms.size());
  bool grew = true;
  while (grew) {
    grew = false;
    for (int f = 0; f < m; ++f) {
      if (!(morphisms & (std::uint64_t{1} << f))) continue;
      if (c.morphisms[f].cod != obj)
        fail(errc::bad_input, "sieve contains a morphism with wrong codomain");
      for (int h = 0; h < m; ++h) {
        if (c.morphisms[h].cod != c.morphisms[f].dom) continue;
        int fh = c.compose_idx(f, h);
        if (!(morphisms & (std::uint64_t{1} << fh))) {
          morphisms |= std::uint64_t{1} << fh;
          grew = true;
        }
      }
    }
  }
  return morphisms;
}

std::vector<std::uint64_t> all_sieves(const FiniteCategory& c, int obj) {
  std::vector<std::uint64_t> principals;
  for (size_t i = 0; i < c.morphisms.size(); ++i)
    if (c.morphisms[i].cod == obj)
      principals.push_back(sieve_close(c, obj, std::uint64_t{1} << i));
  std::set<std::uint64_t> closed{0};
  std::deque<std::uint64_t> queue{0};
  while (!queue.empty()) {
    std::uint64_t cur = queue.front();
    queue.pop_front();
    for (std::uint64_t p : principals) {
      std::uint64_t u = cur | p;
      if (closed.insert(u).second) queue.push_back(u);
    }
  }
  return {closed.begin(), closed.end()};
}

std::uint64_t sieve_pullback(const FiniteCategory& c, std::uint64_t sieve,
                             int h) {
  std::uint64_t out = 0;
  const int m = static_cast<int>(c.morphisms.size());
  for (int g = 0; g < m; ++g) {
    if (c.morphisms[g].cod != c.morphisms[h].dom) continue;
    if (sieve & (std::uint64_t{1} << c.compose_idx(h, g)))
      out |= std::uint64_t{1} << g;
  }
  return out;
}

std::vector<std::uint64_t> Site::covering_masks(int obj) const {
  std::vector<std::uint64_t> masks;
  for (const auto& sieve : covering[obj]) {
    std::uint64_t mask = 0;
    for (int id : sieve) mask |= std::uint64_t{1} << id;
    masks.push_back(mask);
  }
  return masks;
}

ValidationReport validate_topology(const Site& site) {
  ValidationReport report;
  auto add = [&](const std::string& law, const std::string& detail) {
    report.violations.push_back({law, detail});
  };
  const FiniteCategory& c = site.category;
  {
    ValidationReport cat = c.validate();
    if (!cat.ok()) return cat;
  }
  const int n = static_cast<int>(c.objects.size());
  if (static_cast<int>(site.covering.size()) != n) {
    add("topology shape", "expected one covering list per object");
    return report;
  }
  std::vector<std::vector<std::uint64_t>> j(n);
  for (int x = 0; x < n; ++x) {
    for (const auto& sieve : site.covering[x]) {
      std::uint64_t mask = 0;
      for (int id : sieve) {
        if (id < 0 || id >= static_cast<int>(c.morphisms.size())) {
          add("topology shape", "morphism id out of range in a sieve on " +
                                    c.objects[x]);
          return report;
        }
        if (c.morphisms[id].cod != x) {
          add("topology shape", "sieve on " + c.objects[x] +
                                    " contains " + c.morphisms[id].name +
                                    " with a different codomain");
          return report;
        }
        mask |= std::uint64_t{1} << id;
      }
      if (sieve_close(c, x, mask) != mask)
        add("sieve closure", "a covering sieve on " + c.objects[x] +
                                 " is not closed under precomposition");
      j[x].push_back(mask);
    }
  }
  if (!report.ok()) return report;
  auto covers = [&](int x, std::uint64_t s) {
    return std::find(j[x].begin(), j[x].end(), s) != j[x].end();
  };
  for (int x = 0; x < n; ++x)
    if (!covers(x, maximal_sieve(c, x)))
      add("maximality", "the maximal sieve on " + c.objects[x] +
                            " is not covering");
  for (int x = 0; x < n; ++x)
    for (std::uint64_t s : j[x])
      for (int h = 0; h < static_cast<int>(c.morphisms.size()); ++h) {
        if (c.morphisms[h].cod != x) continue;
        if (!covers(c.morphisms[h].dom, sieve_pullback(c, s, h)))
          add("stability", "pullback of a covering sieve on " + c.objects[x] +
                               " along " + c.morphisms[h].name +
                               " is not covering");
      }
  for (int x = 0; x < n; ++x)
    for (std::uint64_t s : all_sieves(c, x)) {
      if (covers(x, s)) continue;
      for (std::uint64_t t : j[x]) {
        bool locally = true;
        for (int m = 0; m < static_cast<int>(c.morphisms.size()) && locally;
             ++m)
          if ((t & (std::uint64_t{1} << m)) &&
              !covers(c.morphisms[m].dom, sieve_pullback(c, s, m)))
            locally = false;
        if (locally)
          add("transitivity", "a sieve on " + c.objects[x] +
                                  " covers locally over a covering sieve but "
                                  "is not covering");
      }
    }
  return report;
}

Nucleus::Nucleus(std::shared_ptr<const CribleSystem> spans, Site site)
    : spans_(std::move(spans)), site_(std::move(site)) {
  ValidationReport report = validate_topology(site_);
  if (!report.ok())
    fail(errc::topology_axiom_violated, report.to_string());
}

std::uint64_t Nucleus::apply(int src, int dst, std::uint64_t crible) const {
  const FiniteCategory& c = spans_->site();
  const auto& universe = spans_->spans(src, dst);
  std::uint64_t out = 0;
  for (size_t i = 0; i < universe.size(); ++i) {
    auto [f, g] = universe[i];
    int dom = c.morphisms[f].dom;
    bool witnessed = false;
    for (std::uint64_t sieve : site_.covering_masks(dom)) {
      bool all = true;
      for (int s = 0; s < static_cast<int>(c.morphisms.size()) && all; ++s) {
        if (!(sieve & (std::uint64_t{1} << s))) continue;
        int fs = c.compose_idx(f, s);
        int gs = c.compose_idx(g, s);
        bool found = false;
        for (size_t k = 0; k < universe.size() && !found; ++k)
          if (universe[k] == std::make_pair(fs, gs) &&
              (crible & (std::uint64_t{1} << k)))
            found = true;
        if (!found) all = false;
      }
      if (all) {
        witnessed = true;
        break;
      }
    }
    if (witnessed) out |= std::uint64_t{1} << i;
  }
  return out;
}

namespace {

Quantaloid crible_like_quantaloid(
    const CribleSystem& cs,
    const std::vector<std::vector<std::uint64_t>>& elements,
    const std::function<std::uint64_t(int, int, std::uint64_t)>& normalize) {
  const FiniteCategory& c = cs.site();
  const int n = static_cast<int>(c.objects.size());
  auto index_of = [&](int src, int dst, std::uint64_t mask) {
    const auto& list = elements[src * n + dst];
    auto it = std::lower_bound(list.begin(), list.end(), mask);
    if (it == list.end() || *it != mask)
      fail(errc::bad_input, "crible arithmetic left the element set");
    return static_cast<int>(it - list.begin());
  };

  Quantaloid::Data data;
  data.objects = c.objects;
  data.homs.resize(static_cast<size_t>(n) * n);
  data.elem_names.resize(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      const auto& list = elements[s * n + d];
      std::vector<std::pair<int, int>> order;
      for (size_t a = 0; a < list.size(); ++a)
        for (size_t b = 0; b < list.size(); ++b)
          if ((list[a] & list[b]) == list[a])
            order.emplace_back(static_cast<int>(a), static_cast<int>(b));
      data.homs[s * n + d] =
          FiniteLattice::from_order(static_cast<int>(list.size()), order);
      std::vector<std::string> span_names;
      for (size_t i = 0; i < cs.spans(s, d).size(); ++i)
        span_names.push_back(cs.span_name(s, d, static_cast<int>(i)));
      for (std::uint64_t mask : list)
        data.elem_names[s * n + d].push_back(subset_name(span_names, mask));
    }
  data.compose.resize(static_cast<size_t>(n) * n * n);
  for (int s = 0; s < n; ++s)
    for (int m = 0; m < n; ++m)
      for (int d = 0; d < n; ++d) {
        const auto& lf = elements[s * n + m];
        const auto& lg = elements[m * n + d];
        auto& tab = data.compose[(s * n + m) * n + d];
        tab.resize(lf.size() * lg.size());
        for (size_t g = 0; g < lg.size(); ++g)
          for (size_t f = 0; f < lf.size(); ++f)
            tab[g * lf.size() + f] = index_of(
                s, d, normalize(s, d, cs.compose(s, m, d, lg[g], lf[f])));
      }
  for (int x = 0; x < n; ++x)
    data.identities.push_back(
        index_of(x, x, normalize(x, x, cs.identity_crible(x))));
  data.has_involution = true;
  data.involution.resize(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (std::uint64_t mask : elements[s * n + d])
        data.involution[s * n + d].push_back(
            index_of(d, s, cs.involute(s, d, mask)));
  return Quantaloid(std::move(data));
}

}  // namespace

Quantaloid crible_quantaloid(const FiniteCategory& c) {
  CribleSystem cs(c);
  const int n = static_cast<int>(c.objects.size());
  std::vector<std::vector<std::uint64_t>> elements(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) elements[s * n + d] = cs.cribles(s, d);
  return crible_like_quantaloid(
      cs, elements, [](int, int, std::uint64_t m) { return m; });
}

Quantaloid quotient_quantaloid(const Site& site) {
  auto cs = std::make_shared<const CribleSystem>(site.category);
  Nucleus j(cs, site);
  const int n = static_cast<int>(site.category.objects.size());
  std::vector<std::vector<std::uint64_t>> elements(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (std::uint64_t mask : cs->cribles(s, d))
        if (j.apply(s, d, mask) == mask) elements[s * n + d].push_back(mask);
  return crible_like_quantaloid(
      *cs, elements,
      [&j](int s, int d, std::uint64_t m) { return j.apply(s, d, m); });
}

std::uint64_t crible_to_subset(const CribleSystem& cs, int src, int dst,
                               std::uint64_t crible) {
  const FiniteCategory& c = cs.site();
  if (!c.is_groupoid())
    fail(errc::not_a_groupoid, "the crible comparison needs a groupoid");
  auto list = c.hom_list(src, dst);
  const auto& universe = cs.spans(src, dst);
  std::uint64_t out = 0;
  for (size_t i = 0; i < universe.size(); ++i) {
    if (!(crible & (std::uint64_t{1} << i))) continue;
    auto [f, g] = universe[i];
    int mor = c.compose_idx(f, c.inverse[g]);
    auto it = std::lower_bound(list.begin(), list.end(), mor);
    out |= std::uint64_t{1} << (it - list.begin());
  }
  return out;
}

std::uint64_t subset_to_crible(const CribleSystem& cs, int src, int dst,
                               std::uint64_t subset) {
  const FiniteCategory& c = cs.site();
  if (!c.is_groupoid())
    fail(errc::not_a_groupoid, "the crible comparison needs a groupoid");
  auto list = c.hom_list(src, dst);
  const auto& universe = cs.spans(src, dst);
  std::uint64_t seed = 0;
  for (size_t i = 0; i < list.size(); ++i) {
    if (!(subset & (std::uint64_t{1} << i))) continue;
    auto span = std::make_pair(list[i], c.identity[src]);
    for (size_t k = 0; k < universe.size(); ++k)
      if (universe[k] == span) seed |= std::uint64_t{1} << k;
  }
  return cs.close(src, dst, seed);
}

}  // namespace qkit
