#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qkit/quantaloid.hpp"

namespace qkit {

// A category enriched in a (shared, immutable) quantaloid: each object has a
// type (an object of the base), and hom(y,x) is an element of
// base.hom(type x, type y) with 1 <= hom(x,x) and
// hom(z,y) o hom(y,x) <= hom(z,x). Construction validates these laws and
// throws bad_input with the full report on failure.
class QCategory {
 public:
  QCategory(std::shared_ptr<const Quantaloid> base,
            std::vector<std::string> names, std::vector<int> types,
            std::vector<int> hom, bool validate = true);

  const Quantaloid& base() const { return *base_; }
  const std::shared_ptr<const Quantaloid>& base_ptr() const { return base_; }
  int size() const { return static_cast<int>(types_.size()); }
  int type(int a) const { return types_[a]; }
  const std::string& name(int a) const { return names_[a]; }
  int hom_elem(int y, int x) const { return hom_[y * size() + x]; }
  MorphismRef hom(int y, int x) const {
    return {types_[x], types_[y], hom_elem(y, x)};
  }
  const std::vector<int>& types() const { return types_; }
  const std::vector<int>& hom_matrix() const { return hom_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::shared_ptr<const Quantaloid> base_;
  std::vector<std::string> names_;
  std::vector<int> types_;
  std::vector<int> hom_;  // hom_[y * n + x]
};

// Law check on raw data (used by the constructor and by `validate` on files).
ValidationReport validate_category(const Quantaloid& base,
                                   const std::vector<int>& types,
                                   const std::vector<int>& hom);

// Same base (pointer-identical), same types and hom matrix; names ignored.
bool same_category(const QCategory& a, const QCategory& b);

// One object "*" of type x whose endo-hom is 1_x.
QCategory unit_category(std::shared_ptr<const Quantaloid> base, int x);

// hom(x,y) == hom(y,x)^o everywhere. Requires an involution (no_involution).
bool is_symmetric(const QCategory& a);

// The symmetrisation: hom_s(y,x) = hom(y,x) /\ hom(x,y)^o. Always symmetric.
QCategory symmetrise(const QCategory& a);

// A type-preserving object map F with hom_A(y,x) <= hom_B(Fy,Fx).
class QFunctor {
 public:
  QFunctor(QCategory src, QCategory dst, std::vector<int> map,
           bool validate = true);

  const QCategory& src() const { return src_; }
  const QCategory& dst() const { return dst_; }
  int operator()(int a) const { return map_[a]; }
  const std::vector<int>& map() const { return map_; }

 private:
  QCategory src_, dst_;
  std::vector<int> map_;
};

ValidationReport validate_functor(const QCategory& src, const QCategory& dst,
                                  const std::vector<int>& map);

QFunctor identity_functor(const QCategory& a);
QFunctor compose_functors(const QFunctor& g, const QFunctor& f);
// Pointwise order: 1 <= hom_B(Fx, Gx) for every x.
bool functor_leq(const QFunctor& f, const QFunctor& g);
// The identity-on-objects functor from symmetrise(a) into a.
QFunctor symmetrisation_counit(const QCategory& a);

// A distributor (bimodule) src -||-> dst: a matrix of base morphisms
// m(b,a) : type a -> type b satisfying both action axioms
//   hom_dst(b',b) o m(b,a) <= m(b',a)   and   m(b,a) o hom_src(a,a') <= m(b,a').
// Construction validates, throwing bad_input with the report.
class Distributor {
 public:
  Distributor(QCategory src, QCategory dst, std::vector<int> matrix,
              bool validate = true);

  const QCategory& src() const { return src_; }
  const QCategory& dst() const { return dst_; }
  int elem(int b, int a) const { return m_[b * src_.size() + a]; }
  MorphismRef at(int b, int a) const {
    return {src_.type(a), dst_.type(b), elem(b, a)};
  }
  const std::vector<int>& matrix() const { return m_; }

 private:
  QCategory src_, dst_;
  std::vector<int> m_;  // m_[b * |src| + a]
};

ValidationReport validate_distributor(const QCategory& src,
                                      const QCategory& dst,
                                      const std::vector<int>& matrix);

// Entrywise order/meet; endpoints must match (type_mismatch).
bool distributor_leq(const Distributor& a, const Distributor& b);
Distributor meet_distributors(const Distributor& a, const Distributor& b);
bool same_distributor(const Distributor& a, const Distributor& b);

// The hom matrix of `a` as a distributor a -||-> a (unit for composition).
Distributor identity_distributor(const QCategory& a);

// (psi . phi)(c,a) = \/_b psi(c,b) o phi(b,a); psi.src must equal phi.dst.
Distributor compose_distributors(const Distributor& psi,
                                 const Distributor& phi);

// graph(F)(b,a) = hom_B(b, Fa) : src -||-> dst;
// cograph(F)(a,b) = hom_B(Fa, b) : dst -||-> src. graph(F) -| cograph(F).
Distributor graph(const QFunctor& f);
Distributor cograph(const QFunctor& f);

// phi^o(a,b) = phi(b,a)^o; both endpoints must be symmetric (not_symmetric).
Distributor involute_distributor(const Distributor& phi);

// Greatest psi with phi . psi <= dst-hom: psi(a,b) = /\_b' [phi(b',a), hom(b',b)].
Distributor right_adjoint_candidate(const Distributor& phi);

// phi -| psi: src-hom <= psi . phi and phi . psi <= dst-hom.
bool is_left_adjoint(const Distributor& phi, const Distributor& psi);
bool is_left_adjoint(const Distributor& phi);  // against the candidate

// phi -| phi^o (endpoints symmetric).
bool is_symmetric_left_adjoint(const Distributor& phi);

// For a left adjoint psi : A -||-> B (not_left_adjoint otherwise), the
// symmetric-side distributor symmetrise(A) -||-> symmetrise(B):
//   psi_s = (cograph(S_B) . psi . graph(S_A))
//           /\ (cograph(S_A) . psi^* . graph(S_B))^o
// where S are the symmetrisation counits and psi^* the right adjoint.
// Entrywise this equals psi_s(b,a) = psi(b,a) /\ psi^*(a,b)^o.
Distributor symmetrise_distributor(const Distributor& psi);

// Presheaves on A at base object x are distributors unit_category(x) -||-> A.
Distributor make_presheaf(const QCategory& a, int x,
                          const std::vector<int>& column);
int presheaf_type(const Distributor& phi);            // the x above
std::vector<int> presheaf_column(const Distributor& phi);

}  // namespace qkit
