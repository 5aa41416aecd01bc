#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "tulczyjew/base.hpp"
#include "tulczyjew/lie.hpp"

namespace tulczyjew {

/// The unit sphere S^2 embedded in R^3. Covectors are identified with tangent
/// vectors through the Euclidean metric.
///
/// Elements of T*TS^2 and T*T*S^2 are stored as ambient pairs (a, b); two pairs
/// are the same covector iff they differ by the annihilator of the tangent
/// space, spanned by (n, 0) and (v, n) (resp. (mu, n)). `canonical` picks the
/// representative with both a and b tangent.
class SphereBase {
 public:
  using Vec = Eigen::Vector3d;
  using Point = Vec;
  using TangentVec = TangentVecT<Vec>;
  using CotangentVec = CotangentVecT<Vec>;
  using SecondTangent = SecondTangentT<Vec>;
  using TangentCotangent = TangentCotangentT<Vec>;
  using CotangentTangent = CotangentTangentT<Vec>;
  using DoubleCotangent = DoubleCotangentT<Vec>;
  using CoreCovector = CoreCovectorT<Vec>;

  static constexpr double kConstraintTol = 1e-9;

  int dim() const { return 2; }

  static Vec tangent_part(const Vec& n, const Vec& x) { return x - n.dot(x) * n; }

  /// First orthonormal tangent direction at n, built from the coordinate axis least aligned with n.
  static Vec reference_tangent(const Vec& n) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(n[i]) < std::abs(n[k])) k = i;
    return tangent_part(n, Vec::Unit(k)).normalized();
  }

  // ---- canonical maps ----------------------------------------------------

  SecondTangent kappa(const SecondTangent& V) const {
    check(V);
    return {V.q, V.w, V.v, V.u};
  }
  CotangentTangent alpha(const TangentCotangent& f) const {
    check(f);
    return canonical(CotangentTangent{f.q, f.w, f.nu, f.mu});
  }
  TangentCotangent alpha_inv(const CotangentTangent& r) const {
    check(r);
    const CotangentTangent c = canonical(r);
    return {c.q, c.b, c.v, c.a - c.b.dot(c.v) * c.q};
  }
  DoubleCotangent beta(const TangentCotangent& f) const {
    check(f);
    return canonical(DoubleCotangent{f.q, f.mu, -f.nu, f.w});
  }
  TangentCotangent beta_inv(const DoubleCotangent& t) const {
    check(t);
    const DoubleCotangent c = canonical(t);
    return {c.q, c.mu, c.b, -c.a - c.mu.dot(c.b) * c.q};
  }
  CotangentTangent gamma(const DoubleCotangent& t) const {
    check(t);
    const DoubleCotangent c = canonical(t);
    return {c.q, c.b, -c.a, c.mu};
  }
  DoubleCotangent gamma_inv(const CotangentTangent& r) const {
    check(r);
    const CotangentTangent c = canonical(r);
    return {c.q, c.b, -c.a, c.v};
  }

  // ---- projections -------------------------------------------------------

  TangentVec tau_TM(const SecondTangent& V) const { return {V.q, V.v}; }
  TangentVec T_tau(const SecondTangent& V) const { return {V.q, V.w}; }
  TangentVec T_pi(const TangentCotangent& f) const { return {f.q, f.w}; }
  CotangentVec tau_TsM(const TangentCotangent& f) const { return {f.q, f.mu}; }
  TangentVec pi_TM(const CotangentTangent& r) const { return {r.q, r.v}; }
  CotangentVec xi_TsM(const CotangentTangent& r) const { return {r.q, canonical(r).b}; }
  CotangentVec pi_TsM(const DoubleCotangent& t) const { return {t.q, t.mu}; }
  TangentVec xi_TM(const DoubleCotangent& t) const { return {t.q, canonical(t).b}; }

  // ---- pairings ----------------------------------------------------------

  double pairing(const CotangentVec& c, const TangentVec& v) const {
    detail::require_close(point_distance(c.q, v.q), "covector and vector over different points");
    return c.mu.dot(v.v);
  }
  double tangent_pairing(const TangentCotangent& f, const SecondTangent& V) const {
    check(f);
    check(V);
    detail::require_close(distance(T_pi(f), T_tau(V)), "T pi_M(phi) != T tau_M(V)");
    return f.nu.dot(V.v) + f.mu.dot(V.u);
  }
  double pairing(const CotangentTangent& r, const SecondTangent& V) const {
    check(V);
    detail::require_close(distance(pi_TM(r), tau_TM(V)), "pi_TM(rho) != tau_TM(V)");
    return r.a.dot(V.w) + r.b.dot(V.u);
  }
  double pairing(const DoubleCotangent& t, const TangentCotangent& f) const {
    check(f);
    detail::require_close(codistance(pi_TsM(t), tau_TsM(f)), "pi_T*M(Theta) != tau_T*M(phi)");
    return t.a.dot(f.w) + t.b.dot(f.nu);
  }

  // ---- core --------------------------------------------------------------

  CotangentTangent core_add(const CotangentTangent& r, const CoreCovector& c) const {
    detail::require_close(point_distance(r.q, c.q), "core covector over a different point");
    return {r.q, r.v, r.a + c.c, r.b};
  }
  CotangentTangent core_sub(const CotangentTangent& r, const CoreCovector& c) const {
    return core_add(r, {c.q, -c.c});
  }
  DoubleCotangent core_add(const DoubleCotangent& t, const CoreCovector& c) const {
    detail::require_close(point_distance(t.q, c.q), "core covector over a different point");
    return {t.q, t.mu, t.a + c.c, t.b};
  }
  DoubleCotangent core_sub(const DoubleCotangent& t, const CoreCovector& c) const {
    return core_add(t, {c.q, -c.c});
  }

  // ---- bases and curves --------------------------------------------------

  std::vector<TangentVec> tangent_basis(const Point& n) const {
    const Vec t1 = reference_tangent(n);
    return {{n, t1}, {n, n.cross(t1)}};
  }
  CoreCovector core_from_components(const Point& n, const Eigen::VectorXd& c) const {
    const auto e = tangent_basis(n);
    return {n, c[0] * e[0].v + c[1] * e[1].v};
  }
  std::vector<SecondTangent> second_tangent_basis(const TangentVec& x) const {
    const auto e = tangent_basis(x.q);
    std::vector<SecondTangent> out;
    for (const auto& t : e) out.push_back({x.q, x.v, t.v, -x.v.dot(t.v) * x.q});
    for (const auto& t : e) out.push_back({x.q, x.v, Vec::Zero(), t.v});
    return out;
  }
  CotangentTangent covector_on_TM(const TangentVec& x, const Eigen::VectorXd& c) const {
    const auto e = tangent_basis(x.q);
    return {x.q, x.v, c[0] * e[0].v + c[1] * e[1].v, c[2] * e[0].v + c[3] * e[1].v};
  }
  std::vector<TangentCotangent> second_cotangent_basis(const CotangentVec& x) const {
    const auto e = tangent_basis(x.q);
    std::vector<TangentCotangent> out;
    for (const auto& t : e) out.push_back({x.q, x.mu, t.v, -x.mu.dot(t.v) * x.q});
    for (const auto& t : e) out.push_back({x.q, x.mu, Vec::Zero(), t.v});
    return out;
  }
  DoubleCotangent covector_on_TsM(const CotangentVec& x, const Eigen::VectorXd& c) const {
    const auto e = tangent_basis(x.q);
    return {x.q, x.mu, c[0] * e[0].v + c[1] * e[1].v, c[2] * e[0].v + c[3] * e[1].v};
  }

  Point curve_M(const TangentVec& w, double t) const { return rodrigues(t * w.q.cross(w.v)) * w.q; }
  TangentVec curve_TM(const SecondTangent& V, double t) const {
    const Vec n = curve_M({V.q, V.w}, t);
    return {n, tangent_part(n, V.v + t * V.u)};
  }
  CotangentVec curve_TsM(const TangentCotangent& f, double t) const {
    const Vec n = curve_M({f.q, f.w}, t);
    return {n, tangent_part(n, f.mu + t * f.nu)};
  }

  // ---- canonical forms ---------------------------------------------------

  CotangentTangent canonical(const CotangentTangent& r) const {
    const double d = r.b.dot(r.q);
    const Vec b = r.b - d * r.q;
    const Vec a = tangent_part(r.q, r.a - d * r.v);
    return {r.q, r.v, a, b};
  }
  DoubleCotangent canonical(const DoubleCotangent& t) const {
    const double d = t.b.dot(t.q);
    const Vec b = t.b - d * t.q;
    const Vec a = tangent_part(t.q, t.a - d * t.mu);
    return {t.q, t.mu, a, b};
  }
  CoreCovector canonical(const CoreCovector& c) const { return {c.q, tangent_part(c.q, c.c)}; }

  double point_distance(const Point& a, const Point& b) const { return (a - b).lpNorm<Eigen::Infinity>(); }
  double distance(const TangentVec& a, const TangentVec& b) const {
    return std::max(point_distance(a.q, b.q), (a.v - b.v).lpNorm<Eigen::Infinity>());
  }
  double codistance(const CotangentVec& a, const CotangentVec& b) const {
    return std::max(point_distance(a.q, b.q), (a.mu - b.mu).lpNorm<Eigen::Infinity>());
  }

  Eigen::VectorXd coords(const Point& q) const { return q; }
  Eigen::VectorXd coords(const TangentVec& x) const { return detail::concat(x.q, x.v); }
  Eigen::VectorXd coords(const CotangentVec& x) const { return detail::concat(x.q, x.mu); }
  Eigen::VectorXd coords(const SecondTangent& x) const { return detail::concat(x.q, x.v, x.w, x.u); }
  Eigen::VectorXd coords(const TangentCotangent& x) const { return detail::concat(x.q, x.mu, x.w, x.nu); }
  Eigen::VectorXd coords(const CotangentTangent& x) const {
    const auto c = canonical(x);
    return detail::concat(c.q, c.v, c.a, c.b);
  }
  Eigen::VectorXd coords(const DoubleCotangent& x) const {
    const auto c = canonical(x);
    return detail::concat(c.q, c.mu, c.a, c.b);
  }
  Eigen::VectorXd coords(const CoreCovector& x) const {
    const auto c = canonical(x);
    return detail::concat(c.q, c.c);
  }

  // ---- constraints -------------------------------------------------------

  static double point_defect(const Vec& n) { return std::abs(n.norm() - 1.0); }
  static double defect(const TangentVec& x) { return std::max(point_defect(x.q), std::abs(x.q.dot(x.v))); }
  static double defect(const SecondTangent& x) {
    return std::max({point_defect(x.q), std::abs(x.q.dot(x.v)), std::abs(x.q.dot(x.w)),
                     std::abs(x.q.dot(x.u) + x.v.dot(x.w))});
  }
  static double defect(const TangentCotangent& x) {
    return std::max({point_defect(x.q), std::abs(x.q.dot(x.mu)), std::abs(x.q.dot(x.w)),
                     std::abs(x.q.dot(x.nu) + x.mu.dot(x.w))});
  }
  static double defect(const CotangentTangent& x) { return std::max(point_defect(x.q), std::abs(x.q.dot(x.v))); }
  static double defect(const DoubleCotangent& x) { return std::max(point_defect(x.q), std::abs(x.q.dot(x.mu))); }

  template <class T> void check(const T& x) const {
    const double d = defect(x);
    if (!(d <= kConstraintTol)) throw ContractError("sphere constraint violated (defect " + std::to_string(d) + ")");
  }
};

static_assert(BaseModel<SphereBase>);

}  // namespace tulczyjew
