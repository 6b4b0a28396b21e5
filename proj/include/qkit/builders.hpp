#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qkit/category.hpp"
#include "qkit/quantaloid.hpp"

namespace qkit {

// A finite category presented by explicit composition tables. Used as input
// for the free, crible and quotient constructions.
struct FiniteCategory {
  struct Morphism {
    std::string name;
    int dom = 0;
    int cod = 0;
  };

  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  // compose[g * |morphisms| + f] = id of g o f, or -1 when cod f != dom g.
  std::vector<int> compose;
  std::vector<int> identity;  // per object
  std::vector<int> inverse;   // per morphism; empty when not a groupoid

  int compose_idx(int g, int f) const {
    return compose[g * static_cast<int>(morphisms.size()) + f];
  }
  bool is_groupoid() const { return !inverse.empty(); }
  // Morphism ids with the given endpoints, ascending.
  std::vector<int> hom_list(int dom, int cod) const;
  // Associativity, units, composability, inverse laws (when present).
  ValidationReport validate() const;
};

// The one-object groupoid of the cyclic group of order n, morphisms named
// "g0".."g{n-1}" with g0 the identity.
FiniteCategory cyclic_group_category(int n);

// The free quantaloid: hom(x,y) is the powerset of the morphisms x -> y
// (elements indexed by bitmask), composition is pointwise, identities are
// the singleton identities. With canonical_involution, S^o = { s^-1 } --
// requires a groupoid (not_a_groupoid).
Quantaloid free_quantaloid(const FiniteCategory& c,
                           bool canonical_involution = false);

// One-object free quantaloid of a finite abelian group with the trivial
// involution. Errors: not_a_groupoid (missing inverses / several objects),
// not_commutative.
Quantaloid group_quantale(const FiniteCategory& g);

// Elements 0..cap with the reverse numerical order (0 is the top and the
// unit, cap plays infinity), composition truncated addition, trivial
// involution.
Quantaloid interval_quantale(int cap);

// One-object quantaloid on a distributive lattice (not_distributive
// otherwise): composition is meet, the unit is the top, trivial involution.
Quantaloid locale_quantale(const FiniteLattice& l,
                           std::vector<std::string> elem_names = {});

// The five-element commutative quantale on the pentagon lattice
// 0 < b < 1 < top, 0 < a < top (a incomparable to b and 1), unit 1, with
// a o a = b, a o b = a, a o top = top. Trivial involution. Not locally
// localic; Cauchy-bilateral but not strongly so.
Quantaloid pentagon_quantale();

// Objects are finite sets (given by their sizes), hom(x,y) the powerset of
// x times y, relational composition, diagonal identities, opposite-relation
// involution.
Quantaloid rel_quantaloid(const std::vector<int>& sizes);

// The generalized metric space of a directed graph: objects p0..p{n-1} over
// interval_quantale(cap), hom(y,x) = shortest directed path length from x
// to y, capped.
QCategory path_metric_category(int points,
                               const std::vector<std::pair<int, int>>& edges,
                               int cap);

// ---- Cribles and Grothendieck topologies --------------------------------

// Span calculus of a finite category: for each ordered object pair
// (src,dst) the spans (f,g) with dom f = dom g, cod f = dst, cod g = src,
// and the cribles = span sets closed under precomposition, as bitmasks over
// the span list. At most 64 spans per hom (bad_input beyond).
class CribleSystem {
 public:
  explicit CribleSystem(FiniteCategory site);

  const FiniteCategory& site() const { return site_; }
  const std::vector<std::pair<int, int>>& spans(int src, int dst) const {
    return spans_[src * n_ + dst];
  }
  // Precomposition closure of an arbitrary span set.
  std::uint64_t close(int src, int dst, std::uint64_t set) const;
  // Every crible of hom(src,dst), sorted by bitmask value.
  const std::vector<std::uint64_t>& cribles(int src, int dst) const {
    return cribles_[src * n_ + dst];
  }
  std::uint64_t identity_crible(int c) const;
  // (r o s) for r : mid -> dst and s : src -> mid.
  std::uint64_t compose(int src, int mid, int dst, std::uint64_t r,
                        std::uint64_t s) const;
  // Reversal, landing in hom(dst,src).
  std::uint64_t involute(int src, int dst, std::uint64_t r) const;
  std::string span_name(int src, int dst, int span_index) const;

 private:
  FiniteCategory site_;
  int n_ = 0;
  std::vector<std::vector<std::pair<int, int>>> spans_;
  std::vector<std::vector<std::uint64_t>> cribles_;
};

// Sieves on an object c: sets of morphisms with codomain c closed under
// precomposition, as bitmasks over all morphism ids.
std::uint64_t maximal_sieve(const FiniteCategory& c, int obj);
std::uint64_t sieve_close(const FiniteCategory& c, int obj,
                          std::uint64_t morphisms);
std::vector<std::uint64_t> all_sieves(const FiniteCategory& c, int obj);
// h^*(s) = { g with cod g = dom h | h o g in s }, a sieve on dom h.
std::uint64_t sieve_pullback(const FiniteCategory& c, std::uint64_t sieve,
                             int h);

struct Site {
  FiniteCategory category;
  // covering[obj] = the covering sieves, each a sorted list of morphism ids.
  std::vector<std::vector<std::vector<int>>> covering;

  std::vector<std::uint64_t> covering_masks(int obj) const;
};

// Maximality, stability and transitivity; each violation names the axiom
// and the offending sieve/morphism.
ValidationReport validate_topology(const Site& site);

// j(r) = { (f,g) | exists covering sieve S on dom f with (f o s, g o s) in r
// for every s in S }. The site must validate (topology_axiom_violated).
class Nucleus {
 public:
  Nucleus(std::shared_ptr<const CribleSystem> spans, Site site);
  std::uint64_t apply(int src, int dst, std::uint64_t crible) const;
  const CribleSystem& spans() const { return *spans_; }

 private:
  std::shared_ptr<const CribleSystem> spans_;
  Site site_;
};

// The quantaloid of all cribles with union joins, span-set composition,
// span-reversal involution.
Quantaloid crible_quantaloid(const FiniteCategory& c);

// The quantaloid of j-closed cribles: composition and joins are j-applied,
// the involution is inherited (reversal preserves j-closedness).
Quantaloid quotient_quantaloid(const Site& site);

// For a groupoid: the hom-wise comparison with the free quantaloid,
// F(r) = { f o g^-1 | (f,g) in r } and G(s) = closure{ (s, 1) | s in S }.
std::uint64_t crible_to_subset(const CribleSystem& cs, int src, int dst,
                               std::uint64_t crible);
std::uint64_t subset_to_crible(const CribleSystem& cs, int src, int dst,
                               std::uint64_t subset);

}  // namespace qkit
