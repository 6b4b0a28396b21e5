#include "qkit/category.hpp"

#include <algorithm>

#include "qkit/error.hpp"

namespace qkit {

namespace {

void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

void throw_if_invalid(const ValidationReport& report, const char* what) {
  if (!report.ok())
    fail(errc::bad_input, std::string(what) + " laws violated:\n" +
                              report.to_string());
}

}  // namespace

QCategory::QCategory(std::shared_ptr<const Quantaloid> base,
                     std::vector<std::string> names, std::vector<int> types,
                     std::vector<int> hom, bool validate)
    : base_(std::move(base)),
      names_(std::move(names)),
      types_(std::move(types)),
      hom_(std::move(hom)) {
  require(base_ != nullptr, errc::bad_input, "category needs a base");
  const size_t n = types_.size();
  require(names_.size() == n, errc::bad_input,
          "category needs one name per object");
  require(hom_.size() == n * n, errc::bad_input,
          "category hom matrix must be |objects|^2");
  for (int t : types_)
    require(t >= 0 && t < base_->object_count(), errc::bad_input,
            "object type out of range");
  for (size_t y = 0; y < n; ++y)
    for (size_t x = 0; x < n; ++x)
      require(hom_[y * n + x] >= 0 &&
                  hom_[y * n + x] < base_->hom(types_[x], types_[y]).size(),
              errc::bad_input, "hom entry out of range");
  if (validate)
    throw_if_invalid(validate_category(*base_, types_, hom_), "category");
}

ValidationReport validate_category(const Quantaloid& base,
                                   const std::vector<int>& types,
                                   const std::vector<int>& hom) {
  ValidationReport report;
  const int n = static_cast<int>(types.size());
  auto entry = [&](int y, int x) -> MorphismRef {
    return {types[x], types[y], hom[y * n + x]};
  };
  for (int x = 0; x < n; ++x)
    if (!base.leq(base.identity(types[x]), entry(x, x)))
      report.violations.push_back(
          {"unit inequality", "object " + std::to_string(x) + ": 1 is not <= " +
                                  base.show(entry(x, x))});
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (!base.leq(base.compose(entry(z, y), entry(y, x)), entry(z, x)))
          report.violations.push_back(
              {"composition inequality",
               "objects (" + std::to_string(z) + "," + std::to_string(y) +
                   "," + std::to_string(x) + ")"});
  return report;
}

bool same_category(const QCategory& a, const QCategory& b) {
  return a.base_ptr().get() == b.base_ptr().get() &&
         a.types() == b.types() && a.hom_matrix() == b.hom_matrix();
}

QCategory unit_category(std::shared_ptr<const Quantaloid> base, int x) {
  int id = base->identity(x).elem;
  return QCategory(std::move(base), {"*"}, {x}, {id});
}

bool is_symmetric(const QCategory& a) {
  if (!a.base().has_involution())
    fail(errc::no_involution, "symmetry needs an involutive base");
  for (int y = 0; y < a.size(); ++y)
    for (int x = 0; x < a.size(); ++x)
      if (a.hom(y, x) != a.base().involute(a.hom(x, y))) return false;
  return true;
}

QCategory symmetrise(const QCategory& a) {
  if (!a.base().has_involution())
    fail(errc::no_involution, "symmetrisation needs an involutive base");
  const int n = a.size();
  std::vector<int> hom(static_cast<size_t>(n) * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      hom[y * n + x] =
          a.base().meet(a.hom(y, x), a.base().involute(a.hom(x, y))).elem;
  return QCategory(a.base_ptr(), a.names(), a.types(), std::move(hom));
}

QFunctor::QFunctor(QCategory src, QCategory dst, std::vector<int> map,
                   bool validate)
    : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
  require(src_.base_ptr().get() == dst_.base_ptr().get(), errc::type_mismatch,
          "functor endpoints live over different bases");
  require(map_.size() == static_cast<size_t>(src_.size()), errc::bad_input,
          "functor needs one image per object");
  for (int v : map_)
    require(v >= 0 && v < dst_.size(), errc::bad_input,
            "functor image out of range");
  if (validate)
    throw_if_invalid(validate_functor(src_, dst_, map_), "functor");
}

ValidationReport validate_functor(const QCategory& src, const QCategory& dst,
                                  const std::vector<int>& map) {
  ValidationReport report;
  for (int x = 0; x < src.size(); ++x)
    if (src.type(x) != dst.type(map[x]))
      report.violations.push_back(
          {"type preservation", "object " + src.name(x) + " has type " +
                                    src.base().object_name(src.type(x)) +
                                    " but its image has type " +
                                    dst.base().object_name(dst.type(map[x]))});
  if (!report.ok()) return report;
  for (int y = 0; y < src.size(); ++y)
    for (int x = 0; x < src.size(); ++x)
      if (!src.base().leq(src.hom(y, x), dst.hom(map[y], map[x])))
        report.violations.push_back(
            {"action inequality",
             "hom(" + src.name(y) + "," + src.name(x) + ") is not <= hom of images"});
  return report;
}

QFunctor identity_functor(const QCategory& a) {
  std::vector<int> map(a.size());
  for (int i = 0; i < a.size(); ++i) map[i] = i;
  return QFunctor(a, a, std::move(map), false);
}

QFunctor compose_functors(const QFunctor& g, const QFunctor& f) {
  require(same_category(g.src(), f.dst()), errc::type_mismatch,
          "functor composition endpoint mismatch");
  std::vector<int> map(f.src().size());
  for (int i = 0; i < f.src().size(); ++i) map[i] = g(f(i));
  return QFunctor(f.src(), g.dst(), std::move(map), false);
}

bool functor_leq(const QFunctor& f, const QFunctor& g) {
  require(same_category(f.src(), g.src()) && same_category(f.dst(), g.dst()),
          errc::type_mismatch, "functor order needs equal endpoints");
  const QCategory& b = f.dst();
  for (int x = 0; x < f.src().size(); ++x) {
    if (b.type(f(x)) != b.type(g(x))) return false;
    if (!b.base().leq(b.base().identity(b.type(f(x))), b.hom(f(x), g(x))))
      return false;
  }
  return true;
}

QFunctor symmetrisation_counit(const QCategory& a) {
  QCategory as = symmetrise(a);
  std::vector<int> map(a.size());
  for (int i = 0; i < a.size(); ++i) map[i] = i;
  return QFunctor(std::move(as), a, std::move(map));
}

Distributor::Distributor(QCategory src, QCategory dst, std::vector<int> matrix,
                         bool validate)
    : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(matrix)) {
  require(src_.base_ptr().get() == dst_.base_ptr().get(), errc::type_mismatch,
          "distributor endpoints live over different bases");
  require(m_.size() == static_cast<size_t>(src_.size()) * dst_.size(),
          errc::bad_input, "distributor matrix must be |dst| x |src|");
  for (int b = 0; b < dst_.size(); ++b)
    for (int a = 0; a < src_.size(); ++a)
      require(elem(b, a) >= 0 &&
                  elem(b, a) <
                      src_.base().hom(src_.type(a), dst_.type(b)).size(),
              errc::bad_input, "distributor entry out of range");
  if (validate)
    throw_if_invalid(validate_distributor(src_, dst_, m_), "distributor");
}

ValidationReport validate_distributor(const QCategory& src,
                                      const QCategory& dst,
                                      const std::vector<int>& matrix) {
  ValidationReport report;
  const Quantaloid& q = src.base();
  auto at = [&](int b, int a) -> MorphismRef {
    return {src.type(a), dst.type(b), matrix[b * src.size() + a]};
  };
  for (int b2 = 0; b2 < dst.size(); ++b2)
    for (int b = 0; b < dst.size(); ++b)
      for (int a = 0; a < src.size(); ++a)
        if (!q.leq(q.compose(dst.hom(b2, b), at(b, a)), at(b2, a)))
          report.violations.push_back(
              {"codomain action",
               "entries (" + std::to_string(b2) + "," + std::to_string(b) +
                   "," + std::to_string(a) + ")"});
  for (int b = 0; b < dst.size(); ++b)
    for (int a = 0; a < src.size(); ++a)
      for (int a2 = 0; a2 < src.size(); ++a2)
        if (!q.leq(q.compose(at(b, a), src.hom(a, a2)), at(b, a2)))
          report.violations.push_back(
              {"domain action",
               "entries (" + std::to_string(b) + "," + std::to_string(a) +
                   "," + std::to_string(a2) + ")"});
  return report;
}

bool distributor_leq(const Distributor& a, const Distributor& b) {
  require(same_category(a.src(), b.src()) && same_category(a.dst(), b.dst()),
          errc::type_mismatch, "distributor order needs equal endpoints");
  const Quantaloid& q = a.src().base();
  for (int y = 0; y < a.dst().size(); ++y)
    for (int x = 0; x < a.src().size(); ++x)
      if (!q.leq(a.at(y, x), b.at(y, x))) return false;
  return true;
}

Distributor meet_distributors(const Distributor& a, const Distributor& b) {
  require(same_category(a.src(), b.src()) && same_category(a.dst(), b.dst()),
          errc::type_mismatch, "distributor meet needs equal endpoints");
  const Quantaloid& q = a.src().base();
  std::vector<int> m(a.matrix().size());
  for (int y = 0; y < a.dst().size(); ++y)
    for (int x = 0; x < a.src().size(); ++x)
      m[y * a.src().size() + x] = q.meet(a.at(y, x), b.at(y, x)).elem;
  return Distributor(a.src(), a.dst(), std::move(m));
}

bool same_distributor(const Distributor& a, const Distributor& b) {
  return same_category(a.src(), b.src()) && same_category(a.dst(), b.dst()) &&
         a.matrix() == b.matrix();
}

Distributor identity_distributor(const QCategory& a) {
  return Distributor(a, a, a.hom_matrix(), false);
}

Distributor compose_distributors(const Distributor& psi,
                                 const Distributor& phi) {
  require(same_category(psi.src(), phi.dst()), errc::type_mismatch,
          "distributor composition endpoint mismatch");
  const Quantaloid& q = phi.src().base();
  const QCategory& a = phi.src();
  const QCategory& b = phi.dst();
  const QCategory& c = psi.dst();
  std::vector<int> m(static_cast<size_t>(c.size()) * a.size());
  for (int ci = 0; ci < c.size(); ++ci)
    for (int ai = 0; ai < a.size(); ++ai) {
      MorphismRef acc = q.bottom(a.type(ai), c.type(ci));
      for (int bi = 0; bi < b.size(); ++bi)
        acc = q.join(acc, q.compose(psi.at(ci, bi), phi.at(bi, ai)));
      m[ci * a.size() + ai] = acc.elem;
    }
  return Distributor(a, c, std::move(m));
}

Distributor graph(const QFunctor& f) {
  const QCategory& a = f.src();
  const QCategory& b = f.dst();
  std::vector<int> m(static_cast<size_t>(b.size()) * a.size());
  for (int y = 0; y < b.size(); ++y)
    for (int x = 0; x < a.size(); ++x)
      m[y * a.size() + x] = b.hom_elem(y, f(x));
  return Distributor(a, b, std::move(m));
}

Distributor cograph(const QFunctor& f) {
  const QCategory& a = f.src();
  const QCategory& b = f.dst();
  std::vector<int> m(static_cast<size_t>(a.size()) * b.size());
  for (int y = 0; y < a.size(); ++y)
    for (int x = 0; x < b.size(); ++x)
      m[y * b.size() + x] = b.hom_elem(f(y), x);
  return Distributor(b, a, std::move(m));
}

Distributor involute_distributor(const Distributor& phi) {
  if (!is_symmetric(phi.src()) || !is_symmetric(phi.dst()))
    fail(errc::not_symmetric,
         "distributor involution needs symmetric endpoints");
  const Quantaloid& q = phi.src().base();
  std::vector<int> m(phi.matrix().size());
  for (int a = 0; a < phi.src().size(); ++a)
    for (int b = 0; b < phi.dst().size(); ++b)
      m[a * phi.dst().size() + b] = q.involute(phi.at(b, a)).elem;
  return Distributor(phi.dst(), phi.src(), std::move(m));
}

Distributor right_adjoint_candidate(const Distributor& phi) {
  const Quantaloid& q = phi.src().base();
  const QCategory& a = phi.src();
  const QCategory& b = phi.dst();
  std::vector<int> m(static_cast<size_t>(a.size()) * b.size());
  for (int ai = 0; ai < a.size(); ++ai)
    for (int bi = 0; bi < b.size(); ++bi) {
      MorphismRef acc = q.top(b.type(bi), a.type(ai));
      for (int b2 = 0; b2 < b.size(); ++b2)
        acc = q.meet(acc, right_residual(q, phi.at(b2, ai), b.hom(b2, bi)));
      m[ai * b.size() + bi] = acc.elem;
    }
  return Distributor(b, a, std::move(m));
}

bool is_left_adjoint(const Distributor& phi, const Distributor& psi) {
  require(same_category(phi.src(), psi.dst()) &&
              same_category(phi.dst(), psi.src()),
          errc::type_mismatch, "adjunction needs opposite endpoints");
  return distributor_leq(identity_distributor(phi.src()),
                         compose_distributors(psi, phi)) &&
         distributor_leq(compose_distributors(phi, psi),
                         identity_distributor(phi.dst()));
}

bool is_left_adjoint(const Distributor& phi) {
  return is_left_adjoint(phi, right_adjoint_candidate(phi));
}

bool is_symmetric_left_adjoint(const Distributor& phi) {
  return is_left_adjoint(phi, involute_distributor(phi));
}

Distributor symmetrise_distributor(const Distributor& psi) {
  Distributor star = right_adjoint_candidate(psi);
  if (!is_left_adjoint(psi, star))
    fail(errc::not_left_adjoint,
         "symmetrising a distributor requires a left adjoint");
  QFunctor sa = symmetrisation_counit(psi.src());
  QFunctor sb = symmetrisation_counit(psi.dst());
  Distributor left = compose_distributors(
      cograph(sb), compose_distributors(psi, graph(sa)));
  Distributor right = compose_distributors(
      cograph(sa), compose_distributors(star, graph(sb)));
  return meet_distributors(left, involute_distributor(right));
}

Distributor make_presheaf(const QCategory& a, int x,
                          const std::vector<int>& column) {
  return Distributor(unit_category(a.base_ptr(), x), a, column);
}

int presheaf_type(const Distributor& phi) {
  if (phi.src().size() != 1)
    fail(errc::bad_input, "presheaf domain must be a unit category");
  return phi.src().type(0);
}

std::vector<int> presheaf_column(const Distributor& phi) {
  if (phi.src().size() != 1)
    fail(errc::bad_input, "presheaf domain must be a unit category");
  return phi.matrix();
}

}  // namespace qkit
