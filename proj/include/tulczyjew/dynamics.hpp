#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tulczyjew/bundle.hpp"
#include "tulczyjew/frame_bundle.hpp"
#include "tulczyjew/reduce.hpp"
#include "tulczyjew/triple.hpp"

namespace tulczyjew {

inline constexpr double kDiffStep = 1e-5;

/// Trivialised Lagrangian L(p, v, X) on P x_M TM x g.
template <PrincipalBundle Bd> struct Lagrangian {
  using Point = typename Bd::Point;
  using TangentVec = typename Bd::Base::TangentVec;
  std::function<double(const Point&, const TangentVec&, const LieAlgebraElement&)> value;
  /// Optional closed-form dL(p, v, X).
  std::function<TrivTsTP<Bd>(const Point&, const TangentVec&, const LieAlgebraElement&)> differential;
  /// Declared invariance under (p, X) -> (pg, Ad_{g^-1} X).
  bool invariant = false;
};

/// Trivialised Hamiltonian H(p, mu, A) on P x_M T*M x g*.
template <PrincipalBundle Bd> struct Hamiltonian {
  using Point = typename Bd::Point;
  using CotangentVec = typename Bd::Base::CotangentVec;
  std::function<double(const Point&, const CotangentVec&, const DualAlgebraElement&)> value;
  std::function<TrivTsTsP<Bd>(const Point&, const CotangentVec&, const DualAlgebraElement&)> differential;
  bool invariant = false;
};

namespace detail {
inline double central(const std::function<double(double)>& f, double h = kDiffStep) {
  const double fp = f(h), fm = f(-h);
  if (!std::isfinite(fp) || !std::isfinite(fm)) throw ContractError("non-finite value while differentiating");
  return (fp - fm) / (2 * h);
}
template <class TV> TV zero_like(const TV& v) { return {v.q, 0.0 * v.v}; }
}  // namespace detail

/// dL(p, v, X) = (p, d_TM L, X, d_G L, d_g L).
/// d_TM moves p horizontally along the base curve, d_G moves p along the fiber.
template <PrincipalBundle Bd>
TrivTsTP<Bd> differential_L(const Bd& b, const Lagrangian<Bd>& L, const TrivTangent<Bd>& V) {
  detail::require_over(b, V.p, V.v.q);
  if (L.differential) return L.differential(V.p, V.v, V.X);
  const auto& M = b.base();
  const auto& alg = b.algebra();
  const LieAlgebraElement zero = LieAlgebraElement::zero(alg);

  const auto basis = M.second_tangent_basis(V.v);
  Eigen::VectorXd dTM(static_cast<Eigen::Index>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) {
    const auto& E = basis[k];
    dTM[k] = detail::central(
        [&](double t) { return L.value(b.flow(V.p, M.T_tau(E), zero, t), M.curve_TM(E, t), V.X); });
  }
  Eigen::VectorXd dG(alg->dim()), dg(alg->dim());
  for (int a = 0; a < alg->dim(); ++a) {
    const LieAlgebraElement ea(alg, Eigen::VectorXd::Unit(alg->dim(), a));
    dG[a] = detail::central(
        [&](double t) { return L.value(b.flow(V.p, detail::zero_like(V.v), ea, t), V.v, V.X); });
    dg[a] = detail::central([&](double t) { return L.value(V.p, V.v, V.X + t * ea); });
  }
  return {V.p, M.covector_on_TM(V.v, dTM), V.X, {alg, dG}, {alg, dg}};
}

/// dH(p, mu, A) = (p, d_T*M H, A, d_G H, d_g* H).
template <PrincipalBundle Bd>
TrivTsTsP<Bd> differential_H(const Bd& b, const Hamiltonian<Bd>& H, const TrivCotangent<Bd>& P) {
  detail::require_over(b, P.p, P.mu.q);
  if (H.differential) return H.differential(P.p, P.mu, P.A);
  const auto& M = b.base();
  const auto& alg = b.algebra();
  const LieAlgebraElement zero = LieAlgebraElement::zero(alg);

  const auto basis = M.second_cotangent_basis(P.mu);
  Eigen::VectorXd dTsM(static_cast<Eigen::Index>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) {
    const auto& E = basis[k];
    dTsM[k] = detail::central(
        [&](double t) { return H.value(b.flow(P.p, M.T_pi(E), zero, t), M.curve_TsM(E, t), P.A); });
  }
  const typename Bd::Base::TangentVec still{P.mu.q, 0.0 * P.mu.mu};
  Eigen::VectorXd dG(alg->dim()), dA(alg->dim());
  for (int a = 0; a < alg->dim(); ++a) {
    const LieAlgebraElement ea(alg, Eigen::VectorXd::Unit(alg->dim(), a));
    const DualAlgebraElement fa(alg, Eigen::VectorXd::Unit(alg->dim(), a));
    dG[a] = detail::central([&](double t) { return H.value(b.flow(P.p, still, ea, t), P.mu, P.A); });
    dA[a] = detail::central([&](double t) { return H.value(P.p, P.mu, P.A + t * fa); });
  }
  return {P.p, M.covector_on_TsM(P.mu, dTsM), P.A, {alg, dG}, {alg, dA}};
}

/// Point of the Lagrangian dynamics over V:
/// (p, alpha^-1(d_TM L - Omega*(d_g L)), d_g L, X, d_G L + ad*_X(d_g L)).
template <PrincipalBundle Bd>
TrivTTsP<Bd> lagrangian_dynamics_point(const Bd& b, const Lagrangian<Bd>& L, const TrivTangent<Bd>& V) {
  const auto& M = b.base();
  const TrivTsTP<Bd> dL = differential_L(b, L, V);
  const DualAlgebraElement& dg = dL.B;
  const auto core = b.curvature_dual(V.p, V.v, dg);
  return {V.p, M.alpha_inv(M.core_sub(dL.rho, core)), dg, V.X, dL.A + ad_star(V.X, dg)};
}

/// Point of the Hamiltonian vector field over (p, mu, A):
/// (p, beta^-1(d_T*M H + Omega*(A)), A, d_g* H, ad*_{d_g* H}(A) - d_G H).
template <PrincipalBundle Bd>
TrivTTsP<Bd> hamiltonian_dynamics_point(const Bd& b, const Hamiltonian<Bd>& H, const TrivCotangent<Bd>& P) {
  const auto& M = b.base();
  const TrivTsTsP<Bd> dH = differential_H(b, H, P);
  const auto core = b.curvature_dual(P.p, M.xi_TM(dH.theta), P.A);
  return {P.p, M.beta_inv(M.core_add(dH.theta, core)), P.A, dH.X, ad_star(dH.X, P.A) - dH.B};
}

/// Reduced Lagrangian l(v, [(p, X)]) := L(p, v, X) induced by an invariant L.
template <PrincipalBundle Bd> class ReducedLagrangian {
 public:
  static ReducedLagrangian from_invariant(Lagrangian<Bd> L) {
    if (!L.invariant) throw ContractError("reduction needs a Lagrangian invariant under the tangent action");
    return ReducedLagrangian(std::move(L));
  }
  double operator()(const typename Bd::Base::TangentVec& v, const AdClass<Bd>& x) const {
    return L_.value(x.p, v, x.X);
  }
  const Lagrangian<Bd>& lagrangian() const { return L_; }

 private:
  explicit ReducedLagrangian(Lagrangian<Bd> L) : L_(std::move(L)) {}
  Lagrangian<Bd> L_;
};

/// Reduced dynamics: epsilon_A applied to dl = (d_TM L, [(p, X)], [(p, d_g L)]).
template <PrincipalBundle Bd>
TAsP_Element<Bd> reduced_dynamics_point(const Bd& b, const ReducedLagrangian<Bd>& l,
                                        const typename Bd::Base::TangentVec& v, const AdClass<Bd>& x) {
  const TrivTsTP<Bd> dL = differential_L(b, l.lagrangian(), TrivTangent<Bd>{x.p, v, x.X});
  return epsilon_A(b, TsAP_Element<Bd>{dL.rho, x, {x.p, dL.B}});
}

/// |L(pg, v, Ad_{g^-1}X) - L(p, v, X)|.
template <PrincipalBundle Bd>
double invariance_defect(const Bd& b, const Lagrangian<Bd>& L, const TrivTangent<Bd>& V, const typename Bd::Group& g) {
  return std::abs(L.value(b.act(V.p, g), V.v, b.Ad(b.inverse(g), V.X)) - L.value(V.p, V.v, V.X));
}

// ============================================================================
// Axially symmetric rigid body on the sphere, modelled on the frame bundle.

struct BodyState {
  Eigen::Vector3d n, v;
  double r = 0.0;

  BodyState operator+(const BodyState& o) const { return {n + o.n, v + o.v, r + o.r}; }
  friend BodyState operator*(double s, const BodyState& x) { return {s * x.n, s * x.v, s * x.r}; }
  bool finite() const { return n.allFinite() && v.allFinite() && std::isfinite(r); }
};

struct TrajectorySample {
  double t;
  BodyState s;
};
using Trajectory = std::vector<TrajectorySample>;

/// L = 1/2 I_perp |n x v|^2 + 1/2 I_ax r^2.
class SphereBody {
 public:
  SphereBody(double I_perp, double I_ax) : Ip_(I_perp), Ia_(I_ax) {
    if (!(I_perp > 0) || !(I_ax > 0)) throw ContractError("moments of inertia must be positive");
  }
  double I_perp() const { return Ip_; }
  double I_ax() const { return Ia_; }

  double lagrangian_value(const Eigen::Vector3d& n, const Eigen::Vector3d& v, double r) const {
    return 0.5 * Ip_ * n.cross(v).squaredNorm() + 0.5 * Ia_ * r * r;
  }

  /// dL = (p, (n, v, c n, I_perp v), r, 0, I_ax r) for any multiplier c.
  TrivTsTP<FrameBundle> differential(const FramePoint& p, const Eigen::Vector3d& v, double r, double c) const {
    return {p, {p.n, v, c * p.n, Ip_ * v}, so2_elem(r), so2_dual(0.0), so2_dual(Ia_ * r)};
  }

  Lagrangian<FrameBundle> lagrangian() const {
    Lagrangian<FrameBundle> L;
    const SphereBody body = *this;
    L.value = [body](const FramePoint& p, const SphereBase::TangentVec& v, const LieAlgebraElement& X) {
      return body.lagrangian_value(p.n, v.v, X[0]);
    };
    L.differential = [body](const FramePoint& p, const SphereBase::TangentVec& v, const LieAlgebraElement& X) {
      return body.differential(p, v.v, X[0], 0.0);
    };
    L.invariant = true;
    return L;
  }

  /// L + eps <f1, v>: depends on the frame, so it is not invariant.
  Lagrangian<FrameBundle> perturbed_lagrangian(double eps) const {
    Lagrangian<FrameBundle> L;
    const SphereBody body = *this;
    L.value = [body, eps](const FramePoint& p, const SphereBase::TangentVec& v, const LieAlgebraElement& X) {
      return body.lagrangian_value(p.n, v.v, X[0]) + eps * p.f1.dot(v.v);
    };
    L.invariant = false;
    return L;
  }

  /// Legendre dual H = |mu|^2 / (2 I_perp) + a^2 / (2 I_ax).
  Hamiltonian<FrameBundle> hamiltonian() const {
    Hamiltonian<FrameBundle> H;
    const double Ip = Ip_, Ia = Ia_;
    H.value = [Ip, Ia](const FramePoint&, const SphereBase::CotangentVec& mu, const DualAlgebraElement& a) {
      return 0.5 * mu.mu.squaredNorm() / Ip + 0.5 * a[0] * a[0] / Ia;
    };
    H.differential = [Ip, Ia](const FramePoint& p, const SphereBase::CotangentVec& mu, const DualAlgebraElement& a) {
      return TrivTsTsP<FrameBundle>{p, {p.n, mu.mu, Eigen::Vector3d::Zero(), mu.mu / Ip}, a, so2_dual(0.0),
                                    so2_elem(a[0] / Ia)};
    };
    H.invariant = true;
    return H;
  }

  /// c = -I_perp |v|^2, the value keeping <n, v> = 0 along the flow.
  double resolve_multiplier(const BodyState& s) const { return -Ip_ * s.v.squaredNorm(); }

  /// (p, (n, I_perp v, v, c n - I_ax r v x n), I_ax r, r, 0).
  TrivTTsP<FrameBundle> dynamics_point(const FramePoint& p, const Eigen::Vector3d& v, double r, double c) const {
    return {p, {p.n, Ip_ * v, v, c * p.n - Ia_ * r * v.cross(p.n)}, so2_dual(Ia_ * r), so2_elem(r), so2_dual(0.0)};
  }

  /// n' = v, I_perp v' = c n - I_ax r v x n, r' = 0.
  BodyState vector_field(const BodyState& s) const {
    const double c = resolve_multiplier(s);
    return {s.v, (c * s.n - Ia_ * s.r * s.v.cross(s.n)) / Ip_, 0.0};
  }

  double energy(const BodyState& s) const { return lagrangian_value(s.n, s.v, s.r); }

  BodyState rk4_step(const BodyState& s, double dt) const {
    const BodyState k1 = vector_field(s);
    const BodyState k2 = vector_field(s + (0.5 * dt) * k1);
    const BodyState k3 = vector_field(s + (0.5 * dt) * k2);
    const BodyState k4 = vector_field(s + dt * k3);
    return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  static BodyState project(const BodyState& s) {
    const Eigen::Vector3d n = s.n.normalized();
    return {n, s.v - n.dot(s.v) * n, s.r};
  }

  Trajectory integrate(const BodyState& s0, double dt, long steps) const {
    if (!(dt > 0)) throw ContractError("time step must be positive");
    if (steps < 0) throw ContractError("negative step count");
    Trajectory out;
    out.reserve(static_cast<size_t>(steps) + 1);
    BodyState s = s0;
    out.push_back({0.0, s});
    for (long k = 1; k <= steps; ++k) {
      s = project(rk4_step(s, dt));
      if (!s.finite()) throw NumericAbort("non-finite state at step " + std::to_string(k), k);
      out.push_back({static_cast<double>(k) * dt, s});
    }
    return out;
  }

  static LieAlgebraElement so2_elem(double x) { return {so2(), Eigen::VectorXd::Constant(1, x)}; }
  static DualAlgebraElement so2_dual(double x) { return {so2(), Eigen::VectorXd::Constant(1, x)}; }

 private:
  double Ip_, Ia_;
};

}  // namespace tulczyjew
