#pragma once

#include <Eigen/Dense>

#include <concepts>
#include <string>
#include <vector>

#include "tulczyjew/errors.hpp"

namespace tulczyjew {

// Four-slot records shared by every base model. Slot names:
//   TTM   (q, v, w, u):   tau_TM = (q, v), T tau_M = (q, w), u the second-order slot
//   TT*M  (q, mu, w, nu): tau_T*M = (q, mu), T pi_M = (q, w)
//   T*TM  (q, v, a, b):   pi_TM = (q, v), pairs with (w, u) as <a,w> + <b,u>; a is the core slot
//   T*T*M (q, mu, a, b):  pi_T*M = (q, mu), pairs with (w, nu) as <a,w> + <b,nu>; a is the core slot

template <class Vec> struct TangentVecT { Vec q, v; };
template <class Vec> struct CotangentVecT { Vec q, mu; };
template <class Vec> struct SecondTangentT { Vec q, v, w, u; };
template <class Vec> struct TangentCotangentT { Vec q, mu, w, nu; };
template <class Vec> struct CotangentTangentT { Vec q, v, a, b; };
template <class Vec> struct DoubleCotangentT { Vec q, mu, a, b; };
template <class Vec> struct CoreCovectorT { Vec q, c; };

/// What the triple, reduction and dynamics code needs from a base manifold.
template <class M>
concept BaseModel = requires(const M& m, const typename M::Point& q, const typename M::TangentVec& tv,
                             const typename M::CotangentVec& cv, const typename M::SecondTangent& V,
                             const typename M::TangentCotangent& phi, const typename M::CotangentTangent& rho,
                             const typename M::DoubleCotangent& th, const typename M::CoreCovector& c,
                             const Eigen::VectorXd& comps, double t) {
  { m.dim() } -> std::convertible_to<int>;
  { m.kappa(V) } -> std::same_as<typename M::SecondTangent>;
  { m.alpha(phi) } -> std::same_as<typename M::CotangentTangent>;
  { m.alpha_inv(rho) } -> std::same_as<typename M::TangentCotangent>;
  { m.beta(phi) } -> std::same_as<typename M::DoubleCotangent>;
  { m.beta_inv(th) } -> std::same_as<typename M::TangentCotangent>;
  { m.gamma(th) } -> std::same_as<typename M::CotangentTangent>;
  { m.gamma_inv(rho) } -> std::same_as<typename M::DoubleCotangent>;
  { m.tau_TM(V) } -> std::same_as<typename M::TangentVec>;
  { m.T_tau(V) } -> std::same_as<typename M::TangentVec>;
  { m.T_pi(phi) } -> std::same_as<typename M::TangentVec>;
  { m.tau_TsM(phi) } -> std::same_as<typename M::CotangentVec>;
  { m.pi_TM(rho) } -> std::same_as<typename M::TangentVec>;
  { m.xi_TsM(rho) } -> std::same_as<typename M::CotangentVec>;
  { m.pi_TsM(th) } -> std::same_as<typename M::CotangentVec>;
  { m.xi_TM(th) } -> std::same_as<typename M::TangentVec>;
  { m.pairing(cv, tv) } -> std::convertible_to<double>;
  { m.tangent_pairing(phi, V) } -> std::convertible_to<double>;
  { m.pairing(rho, V) } -> std::convertible_to<double>;
  { m.pairing(th, phi) } -> std::convertible_to<double>;
  { m.core_add(rho, c) } -> std::same_as<typename M::CotangentTangent>;
  { m.core_sub(rho, c) } -> std::same_as<typename M::CotangentTangent>;
  { m.core_add(th, c) } -> std::same_as<typename M::DoubleCotangent>;
  { m.core_sub(th, c) } -> std::same_as<typename M::DoubleCotangent>;
  { m.tangent_basis(q) } -> std::same_as<std::vector<typename M::TangentVec>>;
  { m.core_from_components(q, comps) } -> std::same_as<typename M::CoreCovector>;
  { m.second_tangent_basis(tv) } -> std::same_as<std::vector<typename M::SecondTangent>>;
  { m.covector_on_TM(tv, comps) } -> std::same_as<typename M::CotangentTangent>;
  { m.second_cotangent_basis(cv) } -> std::same_as<std::vector<typename M::TangentCotangent>>;
  { m.covector_on_TsM(cv, comps) } -> std::same_as<typename M::DoubleCotangent>;
  { m.curve_TM(V, t) } -> std::same_as<typename M::TangentVec>;
  { m.curve_TsM(phi, t) } -> std::same_as<typename M::CotangentVec>;
  { m.point_distance(q, q) } -> std::convertible_to<double>;
  { m.distance(tv, tv) } -> std::convertible_to<double>;
  { m.coords(rho) } -> std::convertible_to<Eigen::VectorXd>;
};

namespace detail {
inline void require_close(double d, const char* what) {
  if (!(d <= kMatchTol)) throw ProjectionMismatch(std::string("projection mismatch: ") + what);
}
template <class... V> Eigen::VectorXd concat(const V&... parts) {
  Eigen::VectorXd out((parts.size() + ...));
  Eigen::Index i = 0;
  ((out.segment(i, parts.size()) = parts, i += parts.size()), ...);
  return out;
}
inline double maxdiff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == 0 ? 0.0 : (a - b).lpNorm<Eigen::Infinity>();
}
}  // namespace detail

/// Flat base R^m in global linear coordinates.
class VectorSpaceBase {
 public:
  using Vec = Eigen::VectorXd;
  using Point = Vec;
  using TangentVec = TangentVecT<Vec>;
  using CotangentVec = CotangentVecT<Vec>;
  using SecondTangent = SecondTangentT<Vec>;
  using TangentCotangent = TangentCotangentT<Vec>;
  using CotangentTangent = CotangentTangentT<Vec>;
  using DoubleCotangent = DoubleCotangentT<Vec>;
  using CoreCovector = CoreCovectorT<Vec>;

  explicit VectorSpaceBase(int m) : m_(m) {
    if (m < 0) throw ContractError("negative base dimension");
  }
  int dim() const { return m_; }

  SecondTangent kappa(const SecondTangent& V) const {
    check(V);
    return {V.q, V.w, V.v, V.u};
  }
  CotangentTangent alpha(const TangentCotangent& f) const {
    check(f);
    return {f.q, f.w, f.nu, f.mu};
  }
  TangentCotangent alpha_inv(const CotangentTangent& r) const {
    check(r);
    return {r.q, r.b, r.v, r.a};
  }
  DoubleCotangent beta(const TangentCotangent& f) const {
    check(f);
    return {f.q, f.mu, -f.nu, f.w};
  }
  TangentCotangent beta_inv(const DoubleCotangent& t) const {
    check(t);
    return {t.q, t.mu, t.b, -t.a};
  }
  CotangentTangent gamma(const DoubleCotangent& t) const {
    check(t);
    return {t.q, t.b, -t.a, t.mu};
  }
  DoubleCotangent gamma_inv(const CotangentTangent& r) const {
    check(r);
    return {r.q, r.b, -r.a, r.v};
  }

  TangentVec tau_TM(const SecondTangent& V) const { return {V.q, V.v}; }
  TangentVec T_tau(const SecondTangent& V) const { return {V.q, V.w}; }
  TangentVec T_pi(const TangentCotangent& f) const { return {f.q, f.w}; }
  CotangentVec tau_TsM(const TangentCotangent& f) const { return {f.q, f.mu}; }
  TangentVec pi_TM(const CotangentTangent& r) const { return {r.q, r.v}; }
  CotangentVec xi_TsM(const CotangentTangent& r) const { return {r.q, r.b}; }
  CotangentVec pi_TsM(const DoubleCotangent& t) const { return {t.q, t.mu}; }
  TangentVec xi_TM(const DoubleCotangent& t) const { return {t.q, t.b}; }

  double pairing(const CotangentVec& c, const TangentVec& v) const {
    detail::require_close(point_distance(c.q, v.q), "covector and vector over different points");
    return c.mu.dot(v.v);
  }
  /// <<phi, V>> between TT*M and TTM, requires T pi(phi) = T tau(V).
  double tangent_pairing(const TangentCotangent& f, const SecondTangent& V) const {
    detail::require_close(distance(T_pi(f), T_tau(V)), "T pi_M(phi) != T tau_M(V)");
    return f.nu.dot(V.v) + f.mu.dot(V.u);
  }
  double pairing(const CotangentTangent& r, const SecondTangent& V) const {
    detail::require_close(distance(pi_TM(r), tau_TM(V)), "pi_TM(rho) != tau_TM(V)");
    return r.a.dot(V.w) + r.b.dot(V.u);
  }
  double pairing(const DoubleCotangent& t, const TangentCotangent& f) const {
    detail::require_close(codistance(pi_TsM(t), tau_TsM(f)), "pi_T*M(Theta) != tau_T*M(phi)");
    return t.a.dot(f.w) + t.b.dot(f.nu);
  }

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

  std::vector<TangentVec> tangent_basis(const Point& q) const {
    std::vector<TangentVec> out;
    for (int i = 0; i < m_; ++i) out.push_back({q, Vec::Unit(m_, i)});
    return out;
  }
  CoreCovector core_from_components(const Point& q, const Eigen::VectorXd& c) const { return {q, c}; }

  std::vector<SecondTangent> second_tangent_basis(const TangentVec& v) const {
    std::vector<SecondTangent> out;
    const Vec z = Vec::Zero(m_);
    for (int i = 0; i < m_; ++i) out.push_back({v.q, v.v, Vec::Unit(m_, i), z});
    for (int i = 0; i < m_; ++i) out.push_back({v.q, v.v, z, Vec::Unit(m_, i)});
    return out;
  }
  CotangentTangent covector_on_TM(const TangentVec& v, const Eigen::VectorXd& c) const {
    return {v.q, v.v, c.head(m_), c.tail(m_)};
  }
  std::vector<TangentCotangent> second_cotangent_basis(const CotangentVec& mu) const {
    std::vector<TangentCotangent> out;
    const Vec z = Vec::Zero(m_);
    for (int i = 0; i < m_; ++i) out.push_back({mu.q, mu.mu, Vec::Unit(m_, i), z});
    for (int i = 0; i < m_; ++i) out.push_back({mu.q, mu.mu, z, Vec::Unit(m_, i)});
    return out;
  }
  DoubleCotangent covector_on_TsM(const CotangentVec& mu, const Eigen::VectorXd& c) const {
    return {mu.q, mu.mu, c.head(m_), c.tail(m_)};
  }

  /// A curve in TM whose velocity at t = 0 is V.
  TangentVec curve_TM(const SecondTangent& V, double t) const { return {V.q + t * V.w, V.v + t * V.u}; }
  CotangentVec curve_TsM(const TangentCotangent& f, double t) const { return {f.q + t * f.w, f.mu + t * f.nu}; }
  Point curve_M(const TangentVec& w, double t) const { return w.q + t * w.v; }

  double point_distance(const Point& a, const Point& b) const { return detail::maxdiff(a, b); }
  double distance(const TangentVec& a, const TangentVec& b) const {
    return std::max(detail::maxdiff(a.q, b.q), detail::maxdiff(a.v, b.v));
  }
  double codistance(const CotangentVec& a, const CotangentVec& b) const {
    return std::max(detail::maxdiff(a.q, b.q), detail::maxdiff(a.mu, b.mu));
  }

  Eigen::VectorXd coords(const Point& q) const { return q; }
  Eigen::VectorXd coords(const TangentVec& x) const { return detail::concat(x.q, x.v); }
  Eigen::VectorXd coords(const CotangentVec& x) const { return detail::concat(x.q, x.mu); }
  Eigen::VectorXd coords(const SecondTangent& x) const { return detail::concat(x.q, x.v, x.w, x.u); }
  Eigen::VectorXd coords(const TangentCotangent& x) const { return detail::concat(x.q, x.mu, x.w, x.nu); }
  Eigen::VectorXd coords(const CotangentTangent& x) const { return detail::concat(x.q, x.v, x.a, x.b); }
  Eigen::VectorXd coords(const DoubleCotangent& x) const { return detail::concat(x.q, x.mu, x.a, x.b); }
  Eigen::VectorXd coords(const CoreCovector& x) const { return detail::concat(x.q, x.c); }

  void check(const SecondTangent& x) const { check_slots(x.q, x.v, x.w, x.u); }
  void check(const TangentCotangent& x) const { check_slots(x.q, x.mu, x.w, x.nu); }
  void check(const CotangentTangent& x) const { check_slots(x.q, x.v, x.a, x.b); }
  void check(const DoubleCotangent& x) const { check_slots(x.q, x.mu, x.a, x.b); }

 private:
  void check_slots(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const {
    if (a.size() != m_ || b.size() != m_ || c.size() != m_ || d.size() != m_)
      throw ContractError("slot of wrong dimension");
    if (!a.allFinite() || !b.allFinite() || !c.allFinite() || !d.allFinite())
      throw ContractError("non-finite base data");
  }
  int m_;
};

/// The one-point manifold: every fiber is zero-dimensional.
class PointBase : public VectorSpaceBase {
 public:
  PointBase() : VectorSpaceBase(0) {}
  static Eigen::VectorXd origin() { return Eigen::VectorXd(0); }
  static SecondTangent second_tangent() { return {origin(), origin(), origin(), origin()}; }
  static TangentCotangent tangent_cotangent() { return {origin(), origin(), origin(), origin()}; }
  static CotangentTangent cotangent_tangent() { return {origin(), origin(), origin(), origin()}; }
  static DoubleCotangent double_cotangent() { return {origin(), origin(), origin(), origin()}; }
  static TangentVec tangent() { return {origin(), origin()}; }
  static CotangentVec cotangent() { return {origin(), origin()}; }
};

static_assert(BaseModel<VectorSpaceBase>);
static_assert(BaseModel<PointBase>);

}  // namespace tulczyjew
