#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkit/lattice.hpp"

namespace qkit {

// A morphism of the quantaloid: an element `elem` of the hom lattice
// hom(src, dst). Plain aggregate; validity is relative to a Quantaloid.
struct MorphismRef {
  int src = 0;
  int dst = 0;
  int elem = 0;
  bool operator==(const MorphismRef&) const = default;
};

struct Violation {
  std::string law;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// A finite quantaloid: finitely many objects, a finite complete lattice of
// morphisms between each ordered pair of objects, join-preserving composition
// given by dense tables, identities, and optionally an involution.
//
// The constructor checks shapes (table sizes, index ranges) and throws
// bad_input on mismatch; the algebraic laws are checked by
// validate_quantaloid, which reports every violated law with a concrete
// counterexample instead of throwing.
class Quantaloid {
 public:
  struct Data {
    std::vector<std::string> objects;
    // homs[src * n + dst]
    std::vector<FiniteLattice> homs;
    // elem_names[src * n + dst][e]: display/serialization names
    std::vector<std::vector<std::string>> elem_names;
    // compose[(src*n + mid)*n + dst][g * |hom(src,mid)| + f]
    //   f in hom(src,mid), g in hom(mid,dst) -> element of hom(src,dst)
    std::vector<std::vector<int>> compose;
    // identities[x]: element of hom(x,x)
    std::vector<int> identities;
    // involution[src * n + dst][e]: element of hom(dst,src); empty if absent
    std::vector<std::vector<int>> involution;
    bool has_involution = false;
  };

  explicit Quantaloid(Data data);

  int object_count() const { return static_cast<int>(data_.objects.size()); }
  const std::string& object_name(int x) const { return data_.objects[x]; }
  int object_index(const std::string& name) const;  // -1 if absent

  const FiniteLattice& hom(int src, int dst) const {
    return data_.homs[src * object_count() + dst];
  }
  const std::string& elem_name(int src, int dst, int e) const {
    return data_.elem_names[src * object_count() + dst][e];
  }
  std::string show(MorphismRef f) const;  // "name : X -> Y"

  MorphismRef identity(int x) const {
    return {x, x, data_.identities[x]};
  }
  MorphismRef bottom(int src, int dst) const {
    return {src, dst, hom(src, dst).bottom()};
  }
  MorphismRef top(int src, int dst) const {
    return {src, dst, hom(src, dst).top()};
  }

  // g after f; throws type_mismatch unless f.dst == g.src.
  MorphismRef compose(MorphismRef g, MorphismRef f) const;

  bool has_involution() const { return data_.has_involution; }
  // Throws no_involution when absent.
  MorphismRef involute(MorphismRef f) const;

  // Order and lattice operations on parallel morphisms (type_mismatch
  // otherwise).
  bool leq(MorphismRef a, MorphismRef b) const;
  MorphismRef join(MorphismRef a, MorphismRef b) const;
  MorphismRef meet(MorphismRef a, MorphismRef b) const;

  const Data& data() const { return data_; }

 private:
  void check_shapes() const;
  Data data_;
};

// Checks every quantaloid law: composition associativity and unit laws,
// join preservation in each argument (binary joins and bottom), and -- when
// an involution is present -- order preservation, the anti-homomorphism law
// and involutivity. Each violation names a concrete counterexample.
ValidationReport validate_quantaloid(const Quantaloid& q);

// Largest k with g o k <= h, for g : Y -> Z and h : X -> Z (k : X -> Y).
MorphismRef right_residual(const Quantaloid& q, MorphismRef g, MorphismRef h);
// Largest k with k o f <= h, for f : X -> Y and h : X -> Z (k : Y -> Z).
MorphismRef left_residual(const Quantaloid& q, MorphismRef f, MorphismRef h);

// f -| g: 1_src(f) <= g o f and f o g <= 1_dst(f).
bool is_left_adjoint(const Quantaloid& q, MorphismRef f, MorphismRef g);
// Greatest g with f o g <= 1_dst(f); the only possible right adjoint of f.
MorphismRef right_adjoint_candidate(const Quantaloid& q, MorphismRef f);
// f -| f^o (requires an involution).
bool is_symmetric_left_adjoint(const Quantaloid& q, MorphismRef f);

struct WitnessPair {
  MorphismRef f;  // X -> Y
  MorphismRef g;  // Y -> X
  bool operator==(const WitnessPair&) const = default;
};

struct BilateralityWitness {
  int object = 0;  // the common domain X of the family
  std::vector<WitnessPair> pairs;
};

struct BilateralityReport {
  bool holds = true;
  bool covering_only = false;  // true for the strong variant
  std::optional<BilateralityWitness> witness;
};

struct BilateralityOptions {
  // Cap on the per-object candidate-pair pool for the pairwise-premise
  // search; exceeding it raises search_cap_exceeded naming the object.
  int max_pairs = 24;
};

// Cauchy-bilaterality: for every object X and every family of pairs
// (f_i : X -> X_i, g_i : X_i -> X) satisfying
//   (1) f_k o g_j o f_j <= f_k   for all j,k
//   (2) g_j o f_j o g_k <= g_k   for all j,k
//   (3) 1_X <= \/_i g_i o f_i
// the conclusion 1_X <= \/_i (g_i /\ f_i^o) o (g_i^o /\ f_i) holds.
// Returns holds=false with a minimal witness family (fewest pairs, then
// lexicographically first in the canonical candidate order) otherwise.
// Requires an involution (no_involution); may raise search_cap_exceeded.
BilateralityReport check_cauchy_bilateral(const Quantaloid& q,
                                          const BilateralityOptions& opts = {});

// The strong variant: premise (3) only, same conclusion. Decided by an
// element scan that is polynomial in pool size times hom size, so no cap
// applies.
BilateralityReport check_strong_cauchy_bilateral(
    const Quantaloid& q, const BilateralityOptions& opts = {});

// Recomputes premise and conclusion of a reported witness from scratch;
// used to replay stored witnesses.
bool witness_premise_holds(const Quantaloid& q, const BilateralityWitness& w,
                           bool covering_only);
bool witness_conclusion_holds(const Quantaloid& q,
                              const BilateralityWitness& w);

struct ModularityWitness {
  MorphismRef f;  // Z -> Y
  MorphismRef g;  // Y -> X
  MorphismRef h;  // Z -> X
};

// First triple violating g o f /\ h <= g o (f /\ g^o o h), if any.
// Requires an involution.
std::optional<ModularityWitness> modularity_counterexample(
    const Quantaloid& q);
inline bool is_modular(const Quantaloid& q) {
  return !modularity_counterexample(q).has_value();
}

// Every hom lattice distributive.
bool is_locally_localic(const Quantaloid& q);
// Every identity is the top of its hom lattice.
bool is_integral(const Quantaloid& q);

// The quantaloid whose objects are the (self-involutive, when an involution
// is present) idempotents e : X -> X of q, with
// hom((X,e),(Y,d)) = { g in hom(X,Y) | d o g = g = g o e }, inherited
// composition, identity e, and inherited involution. Hom lattices carry the
// induced order (they are join-closed subsets, so complete).
Quantaloid split_idempotents(const Quantaloid& q);

}  // namespace qkit
