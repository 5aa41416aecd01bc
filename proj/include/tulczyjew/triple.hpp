#pragma once

#include <Eigen/Dense>

#include <algorithm>

#include "tulczyjew/bundle.hpp"
#include "tulczyjew/lie.hpp"

namespace tulczyjew {

// Trivialised iterated bundles over P. Slot table (positions 3, 4, 5):
//
//   TTP     (p, V,     X,  Y,  Z)   X: tau_TP side, Y: T tau_P side, Z: core
//   TT*P    (p, phi,   A,  Y,  B)   A: the covector, Y: T pi_P side, B: core
//   T*TP    (p, rho,   X,  A,  B)   X: pi_TP side, A pairs with Y, B pairs with Z
//   T*T*P   (p, Theta, A,  B,  X)   A: pi_T*P side, B pairs with Y, X pairs with the TT*P core

template <PrincipalBundle Bd> struct TrivTTP {
  typename Bd::Point p;
  typename Bd::Base::SecondTangent V;
  LieAlgebraElement X, Y, Z;
};

template <PrincipalBundle Bd> struct TrivTTsP {
  typename Bd::Point p;
  typename Bd::Base::TangentCotangent phi;
  DualAlgebraElement A;
  LieAlgebraElement Y;
  DualAlgebraElement B;
};

template <PrincipalBundle Bd> struct TrivTsTP {
  typename Bd::Point p;
  typename Bd::Base::CotangentTangent rho;
  LieAlgebraElement X;
  DualAlgebraElement A, B;
};

template <PrincipalBundle Bd> struct TrivTsTsP {
  typename Bd::Point p;
  typename Bd::Base::DoubleCotangent theta;
  DualAlgebraElement A, B;
  LieAlgebraElement X;
};

namespace detail {
template <PrincipalBundle Bd>
void require_over(const Bd& b, const typename Bd::Point& p, const typename Bd::Base::Point& q) {
  require_close(b.base().point_distance(b.project(p), q), "base data does not sit over pi(p)");
}
template <PrincipalBundle Bd>
void require_same_point(const Bd& b, const typename Bd::Point& p1, const typename Bd::Point& p2) {
  require_close(b.point_distance(p1, p2), "different bundle points");
}
inline double algdiff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return maxdiff(a, b); }
}  // namespace detail

/// Canonical flip of TTP:
/// (p, V, X, Y, Z) -> (p, kappa(V), Y, X, Z + Omega_p(tau V, T tau V) + [Y, X]).
template <PrincipalBundle Bd> TrivTTP<Bd> flip(const Bd& b, const TrivTTP<Bd>& t) {
  const auto& M = b.base();
  detail::require_over(b, t.p, t.V.q);
  const auto kV = M.kappa(t.V);
  return {t.p, kV, t.Y, t.X, t.Z + b.curvature(t.p, M.tau_TM(t.V), M.T_tau(t.V)) + bracket(t.Y, t.X)};
}

/// Tulczyjew isomorphism (p, phi, A, Y, B) -> (p, alpha(phi) + Omega*(A), Y, B - ad*_Y A, A).
template <PrincipalBundle Bd> TrivTsTP<Bd> tulczyjew_alpha(const Bd& b, const TrivTTsP<Bd>& t) {
  const auto& M = b.base();
  detail::require_over(b, t.p, t.phi.q);
  const auto core = b.curvature_dual(t.p, M.T_pi(t.phi), t.A);
  return {t.p, M.core_add(M.alpha(t.phi), core), t.Y, t.B - ad_star(t.Y, t.A), t.A};
}

template <PrincipalBundle Bd> TrivTTsP<Bd> tulczyjew_alpha_inv(const Bd& b, const TrivTsTP<Bd>& t) {
  const auto& M = b.base();
  detail::require_over(b, t.p, t.rho.q);
  const auto core = b.curvature_dual(t.p, M.pi_TM(t.rho), t.B);
  return {t.p, M.alpha_inv(M.core_sub(t.rho, core)), t.B, t.X, t.A + ad_star(t.X, t.B)};
}

/// Canonical isomorphism (p, Theta, A, B, X) -> (p, gamma(Theta), X, -B, A).
template <PrincipalBundle Bd> TrivTsTP<Bd> gamma_TP(const Bd& b, const TrivTsTsP<Bd>& t) {
  detail::require_over(b, t.p, t.theta.q);
  return {t.p, b.base().gamma(t.theta), t.X, -t.B, t.A};
}

template <PrincipalBundle Bd> TrivTsTsP<Bd> gamma_TP_inv(const Bd& b, const TrivTsTP<Bd>& t) {
  detail::require_over(b, t.p, t.rho.q);
  return {t.p, b.base().gamma_inv(t.rho), t.B, -t.A, t.X};
}

/// Symplectic isomorphism (p, phi, A, Y, B) -> (p, beta(phi) - Omega*(A), A, ad*_Y A - B, Y).
template <PrincipalBundle Bd> TrivTsTsP<Bd> beta(const Bd& b, const TrivTTsP<Bd>& t) {
  const auto& M = b.base();
  detail::require_over(b, t.p, t.phi.q);
  const auto core = b.curvature_dual(t.p, M.T_pi(t.phi), t.A);
  return {t.p, M.core_sub(M.beta(t.phi), core), t.A, ad_star(t.Y, t.A) - t.B, t.Y};
}

template <PrincipalBundle Bd> TrivTTsP<Bd> beta_inv(const Bd& b, const TrivTsTsP<Bd>& t) {
  const auto& M = b.base();
  detail::require_over(b, t.p, t.theta.q);
  const auto core = b.curvature_dual(t.p, M.xi_TM(t.theta), t.A);
  return {t.p, M.beta_inv(M.core_add(t.theta, core)), t.A, t.X, ad_star(t.X, t.A) - t.B};
}

/// <<phi, V>> + <A, Z> + <B, X>; needs the same p, the same Y slot, T pi(phi) = T tau(V).
template <PrincipalBundle Bd> double pair_TTsP_TTP(const Bd& b, const TrivTTsP<Bd>& f, const TrivTTP<Bd>& v) {
  detail::require_same_point(b, f.p, v.p);
  detail::require_close(detail::algdiff(f.Y.coeffs(), v.Y.coeffs()), "fourth slots (Y) differ");
  return b.base().tangent_pairing(f.phi, v.V) + pair(f.A, v.Z) + pair(f.B, v.X);
}

/// <rho, V> + <A, Y> + <B, Z>; needs the same p, the same X slot, pi_TM(rho) = tau_TM(V).
template <PrincipalBundle Bd> double pair_TsTP_TTP(const Bd& b, const TrivTsTP<Bd>& r, const TrivTTP<Bd>& v) {
  detail::require_same_point(b, r.p, v.p);
  detail::require_close(detail::algdiff(r.X.coeffs(), v.X.coeffs()), "third slots (X) differ");
  return b.base().pairing(r.rho, v.V) + pair(r.A, v.Y) + pair(r.B, v.Z);
}

/// <Theta, phi> + <B, Y> + <B', X>; needs the same p, the same A slot, pi_T*M(Theta) = tau_T*M(phi).
template <PrincipalBundle Bd> double pair_TsTsP_TTsP(const Bd& b, const TrivTsTsP<Bd>& t, const TrivTTsP<Bd>& f) {
  detail::require_same_point(b, t.p, f.p);
  detail::require_close(detail::algdiff(t.A.coeffs(), f.A.coeffs()), "third slots (A) differ");
  return b.base().pairing(t.theta, f.phi) + pair(t.B, f.Y) + pair(f.B, t.X);
}

// ---- componentwise distances --------------------------------------------------

template <PrincipalBundle Bd> double distance(const Bd& b, const TrivTTP<Bd>& s, const TrivTTP<Bd>& t) {
  return std::max({b.point_distance(s.p, t.p), detail::maxdiff(b.base().coords(s.V), b.base().coords(t.V)),
                   detail::algdiff(s.X.coeffs(), t.X.coeffs()), detail::algdiff(s.Y.coeffs(), t.Y.coeffs()),
                   detail::algdiff(s.Z.coeffs(), t.Z.coeffs())});
}
template <PrincipalBundle Bd> double distance(const Bd& b, const TrivTTsP<Bd>& s, const TrivTTsP<Bd>& t) {
  return std::max({b.point_distance(s.p, t.p), detail::maxdiff(b.base().coords(s.phi), b.base().coords(t.phi)),
                   detail::algdiff(s.A.coeffs(), t.A.coeffs()), detail::algdiff(s.Y.coeffs(), t.Y.coeffs()),
                   detail::algdiff(s.B.coeffs(), t.B.coeffs())});
}
template <PrincipalBundle Bd> double distance(const Bd& b, const TrivTsTP<Bd>& s, const TrivTsTP<Bd>& t) {
  return std::max({b.point_distance(s.p, t.p), detail::maxdiff(b.base().coords(s.rho), b.base().coords(t.rho)),
                   detail::algdiff(s.X.coeffs(), t.X.coeffs()), detail::algdiff(s.A.coeffs(), t.A.coeffs()),
                   detail::algdiff(s.B.coeffs(), t.B.coeffs())});
}
template <PrincipalBundle Bd> double distance(const Bd& b, const TrivTsTsP<Bd>& s, const TrivTsTsP<Bd>& t) {
  return std::max({b.point_distance(s.p, t.p),
                   detail::maxdiff(b.base().coords(s.theta), b.base().coords(t.theta)),
                   detail::algdiff(s.A.coeffs(), t.A.coeffs()), detail::algdiff(s.B.coeffs(), t.B.coeffs()),
                   detail::algdiff(s.X.coeffs(), t.X.coeffs())});
}

}  // namespace tulczyjew
