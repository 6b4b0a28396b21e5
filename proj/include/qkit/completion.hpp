#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkit/category.hpp"

namespace qkit {

struct CompletionOptions {
  // Cap on the number of candidate presheaf columns enumerated per
  // (category, base object); exceeding it raises search_cap_exceeded
  // naming the bottleneck.
  long long max_presheaves = 20000;
};

// All presheaves on `a` at base object x: columns phi(obj) in
// hom(x, type obj) closed under the category action
// (hom_a(o,o') o phi(o') <= phi(o)), in lexicographic column order.
std::vector<Distributor> enumerate_presheaves(const QCategory& a, int x,
                                              const CompletionOptions& opts = {});

// The presheaves that are left adjoint to their right-adjoint candidate,
// over every base object, in (base object, column) order.
std::vector<Distributor> left_adjoint_presheaves(
    const QCategory& a, const CompletionOptions& opts = {});

struct Completion {
  QCategory category;                  // the completed category
  std::vector<Distributor> presheaves; // provenance, aligned with objects
  std::vector<int> yoneda;             // object map of the embedding
  // For the symmetric completion: index of each object inside the full
  // Cauchy completion.
  std::vector<int> embedding;

  QFunctor yoneda_functor(const QCategory& a) const {
    return QFunctor(a, category, yoneda);
  }
};

// Objects: left adjoint presheaves; hom(psi,phi) = the single element of
// psi^* . phi; yoneda sends a to the representable column hom_a(-, a).
Completion cauchy_completion(const QCategory& a,
                             const CompletionOptions& opts = {});

// Full subcategory of the Cauchy completion on the presheaves phi with
// phi -| phi^o. Requires `a` symmetric (not_symmetric).
Completion symmetric_completion(const QCategory& a,
                                const CompletionOptions& opts = {});

// Index of an object of `a` representing phi (equal columns), if any.
std::optional<int> representing_object(const QCategory& a,
                                       const Distributor& phi);

// Every left adjoint presheaf is representable.
bool is_cauchy_complete(const QCategory& a, const CompletionOptions& opts = {});
// Every symmetric left adjoint presheaf is representable (a symmetric).
bool is_symmetrically_complete(const QCategory& a,
                               const CompletionOptions& opts = {});

// The presheaf graph(F) . phi on the codomain of F; used pointwise to
// assemble the induced functor between Cauchy completions.
Distributor completion_image(const QFunctor& f, const Distributor& phi);
QFunctor induced_completion_functor(const QFunctor& f, const Completion& ca,
                                    const Completion& cb);

// The comparison functor L from symmetric_completion(symmetrise(a)) to
// symmetrise(cauchy_completion(a).category), phi |-> graph(S_a) . phi,
// together with the checks that make it an isomorphism: injectivity and
// surjectivity on objects, hom equality (full faithfulness), and the
// reconstruction identity
//   phi = (cograph(S_a) . L phi) /\ ((L phi)^* . graph(S_a))^o.
struct LComparison {
  QCategory domain;    // symmetric completion of the symmetrisation
  QCategory codomain;  // symmetrisation of the Cauchy completion
  std::vector<int> object_map;
  bool injective = false;
  bool surjective = false;
  bool hom_equality = false;
  bool reconstruction_identity = false;
  std::vector<int> unmatched_codomain;  // objects not hit by L

  bool isomorphism() const {
    return injective && surjective && hom_equality;
  }
};

LComparison compare_completions(const QCategory& a,
                                const CompletionOptions& opts = {});
QFunctor l_functor(const QCategory& a, const CompletionOptions& opts = {});

// The category attached to a family witnessing a Cauchy-bilaterality
// failure: objects i with type dst(f_i) and hom(j,i) = f_j o g_i (joined
// with the identity when i = j), plus the presheaf with column f_i whose
// right adjoint has columns g_i. Checks the pairwise-and-covering premise
// first (premise_violated naming the failing instance).
struct FamilyCategory {
  QCategory category;
  Distributor presheaf;
};

FamilyCategory witness_category(std::shared_ptr<const Quantaloid> q,
                                const BilateralityWitness& family);

// For a Cauchy-bilateral base (not_bilateral otherwise): checks on each
// sample that (1) if it is symmetric, its Cauchy completion is symmetric and
// coincides objectwise with its symmetric completion, and (2) if it is
// Cauchy complete, its symmetrisation is Cauchy complete. Returns the list
// of failures (empty = verified).
struct CorollaryCheck {
  int symmetric_samples = 0;
  int complete_samples = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

CorollaryCheck verify_corollary_squares(const std::vector<QCategory>& samples,
                                        const BilateralityOptions& bopts = {},
                                        const CompletionOptions& copts = {});

}  // namespace qkit
