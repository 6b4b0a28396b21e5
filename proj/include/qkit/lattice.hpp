#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qkit {

// A finite complete lattice given by its order relation. Join/meet tables,
// bottom and top are derived at construction time and all operations are
// table lookups afterwards. Elements are dense indices 0..size-1; any naming
// lives outside this class.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  // Builds the lattice generated by `pairs` (any relation; the reflexive
  // transitive closure is taken). Throws:
  //   not_a_partial_order  -- closure has a cycle through two distinct
  //                           elements (named in the message)
  //   not_a_lattice        -- some pair has no least upper bound or no
  //                           greatest lower bound (pair named)
  static FiniteLattice from_order(int size,
                                  std::span<const std::pair<int, int>> pairs);

  int size() const { return size_; }
  bool leq(int a, int b) const { return leq_[a * size_ + b] != 0; }
  int join(int a, int b) const { return join_[a * size_ + b]; }
  int meet(int a, int b) const { return meet_[a * size_ + b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  // n-ary folds; empty join is bottom, empty meet is top.
  int join(std::span<const int> xs) const;
  int meet(std::span<const int> xs) const;

  // Pairs (a,b) with a <= b and no c strictly between: the minimal relation
  // regenerating the order. Canonically sorted; used for serialization.
  std::vector<std::pair<int, int>> cover_pairs() const;

  bool operator==(const FiniteLattice&) const = default;

 private:
  int size_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<int> join_;
  std::vector<int> meet_;
  int bottom_ = 0;
  int top_ = 0;
};

// First triple (a,b,c) with a /\ (b \/ c) != (a /\ b) \/ (a /\ c), if any.
std::optional<std::array<int, 3>> distributivity_counterexample(
    const FiniteLattice& l);

inline bool is_distributive(const FiniteLattice& l) {
  return !distributivity_counterexample(l).has_value();
}

// Convenience builders used by tests and the locale constructor.
FiniteLattice chain_lattice(int size);          // 0 < 1 < ... < size-1
FiniteLattice diamond_lattice();                // bottom < x,y < top (M2)
FiniteLattice powerset_lattice(int generators); // elements are bitmasks

}  // namespace qkit
