#include "qkit/lattice.hpp"

#include <algorithm>

#include "qkit/error.hpp"

namespace qkit {

FiniteLattice FiniteLattice::from_order(
    int size, std::span<const std::pair<int, int>> pairs) {
  if (size <= 0) fail(errc::bad_input, "lattice must have at least 1 element");
  FiniteLattice l;
  l.size_ = size;
  l.leq_.assign(static_cast<size_t>(size) * size, 0);
  for (int i = 0; i < size; ++i) l.leq_[i * size + i] = 1;
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= size || b < 0 || b >= size)
      fail(errc::bad_input, "order pair (" + std::to_string(a) + "," +
                                std::to_string(b) + ") out of range");
    l.leq_[a * size + b] = 1;
  }
  // Warshall closure.
  for (int k = 0; k < size; ++k)
    for (int i = 0; i < size; ++i) {
      if (!l.leq_[i * size + k]) continue;
      for (int j = 0; j < size; ++j)
        if (l.leq_[k * size + j]) l.leq_[i * size + j] = 1;
    }
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      if (l.leq_[i * size + j] && l.leq_[j * size + i])
        fail(errc::not_a_partial_order,
             "cycle: elements " + std::to_string(i) + " and " +
                 std::to_string(j) + " are <= each other");

  auto bound = [&](int a, int b, bool upper) -> int {
    // Least upper bound (or greatest lower bound) by scanning candidates.
    int best = -1;
    for (int c = 0; c < size; ++c) {
      bool is_bound = upper ? (l.leq(a, c) && l.leq(b, c))
                            : (l.leq(c, a) && l.leq(c, b));
      if (!is_bound) continue;
      if (best < 0 || (upper ? l.leq(c, best) : l.leq(best, c))) best = c;
    }
    if (best < 0) return -1;
    for (int c = 0; c < size; ++c) {
      bool is_bound = upper ? (l.leq(a, c) && l.leq(b, c))
                            : (l.leq(c, a) && l.leq(c, b));
      if (is_bound && !(upper ? l.leq(best, c) : l.leq(c, best)))
        return -1;  // incomparable bounds: no least/greatest one
    }
    return best;
  };

  l.join_.assign(static_cast<size_t>(size) * size, 0);
  l.meet_.assign(static_cast<size_t>(size) * size, 0);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      int j = bound(a, b, true);
      if (j < 0)
        fail(errc::not_a_lattice, "elements " + std::to_string(a) + " and " +
                                      std::to_string(b) +
                                      " have no least upper bound");
      int m = bound(a, b, false);
      if (m < 0)
        fail(errc::not_a_lattice, "elements " + std::to_string(a) + " and " +
                                      std::to_string(b) +
                                      " have no greatest lower bound");
      l.join_[a * size + b] = j;
      l.meet_[a * size + b] = m;
    }

  l.bottom_ = 0;
  l.top_ = 0;
  for (int c = 0; c < size; ++c) {
    l.bottom_ = l.meet(l.bottom_, c);
    l.top_ = l.join(l.top_, c);
  }
  return l;
}

int FiniteLattice::join(std::span<const int> xs) const {
  int acc = bottom_;
  for (int x : xs) acc = join(acc, x);
  return acc;
}

int FiniteLattice::meet(std::span<const int> xs) const {
  int acc = top_;
  for (int x : xs) acc = meet(acc, x);
  return acc;
}

std::vector<std::pair<int, int>> FiniteLattice::cover_pairs() const {
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < size_ && direct; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
      if (direct) covers.emplace_back(a, b);
    }
  return covers;
}

std::optional<std::array<int, 3>> distributivity_counterexample(
    const FiniteLattice& l) {
  for (int a = 0; a < l.size(); ++a)
    for (int b = 0; b < l.size(); ++b)
      for (int c = 0; c < l.size(); ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)))
          return std::array<int, 3>{a, b, c};
  return std::nullopt;
}

FiniteLattice chain_lattice(int size) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < size; ++i) pairs.emplace_back(i, i + 1);
  return FiniteLattice::from_order(size, pairs);
}

FiniteLattice diamond_lattice() {
  std::vector<std::pair<int, int>> pairs = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return FiniteLattice::from_order(4, pairs);
}

FiniteLattice powerset_lattice(int generators) {
  if (generators < 0 || generators > 20)
    fail(errc::bad_input, "powerset lattice supports 0..20 generators");
  int n = 1 << generators;
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < n; ++s)
    for (int g = 0; g < generators; ++g)
      if (!(s & (1 << g))) pairs.emplace_back(s, s | (1 << g));
  return FiniteLattice::from_order(n, pairs);
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_a_partial_order: return "NotAPartialOrder";
    case errc::not_a_lattice: return "NotALattice";
    case errc::type_mismatch: return "TypeMismatch";
    case errc::no_involution: return "NoInvolution";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::not_left_adjoint: return "NotLeftAdjoint";
    case errc::search_cap_exceeded: return "SearchCapExceeded";
    case errc::not_a_groupoid: return "NotAGroupoid";
    case errc::not_commutative: return "NotCommutative";
    case errc::not_distributive: return "NotDistributive";
    case errc::premise_violated: return "PremiseViolated";
    case errc::not_bilateral: return "NotBilateral";
    case errc::topology_axiom_violated: return "TopologyAxiomViolated";
    case errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

}  // namespace qkit
