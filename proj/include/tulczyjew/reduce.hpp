#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <string>

#include "tulczyjew/bundle.hpp"
#include "tulczyjew/triple.hpp"

namespace tulczyjew {

/// [(p, X)] in adP; (p, X) ~ (pg, Ad_{g^-1} X).
template <PrincipalBundle Bd> struct AdClass {
  typename Bd::Point p;
  LieAlgebraElement X;

  /// Representative over the reference point of the fiber.
  LieAlgebraElement canonical(const Bd& b) const { return b.Ad(b.inverse(b.canonical_gauge(p)), X); }
  /// Representative over another point p2 of the same fiber.
  LieAlgebraElement at(const Bd& b, const typename Bd::Point& p2) const {
    return b.Ad(b.inverse(relative_gauge(b, p, p2)), X);
  }
};

/// [(p, A)] in ad*P; (p, A) ~ (pg, Ad*_g A).
template <PrincipalBundle Bd> struct AdStarClass {
  typename Bd::Point p;
  DualAlgebraElement A;

  DualAlgebraElement canonical(const Bd& b) const { return b.Ad_star(b.canonical_gauge(p), A); }
  DualAlgebraElement at(const Bd& b, const typename Bd::Point& p2) const {
    return b.Ad_star(relative_gauge(b, p, p2), A);
  }
};

template <PrincipalBundle Bd> double distance(const Bd& b, const AdClass<Bd>& x, const AdClass<Bd>& y) {
  return std::max(b.base().point_distance(b.project(x.p), b.project(y.p)),
                  detail::algdiff(x.canonical(b).coeffs(), y.canonical(b).coeffs()));
}
template <PrincipalBundle Bd> double distance(const Bd& b, const AdStarClass<Bd>& x, const AdStarClass<Bd>& y) {
  return std::max(b.base().point_distance(b.project(x.p), b.project(y.p)),
                  detail::algdiff(x.canonical(b).coeffs(), y.canonical(b).coeffs()));
}

template <PrincipalBundle Bd> AdClass<Bd> add(const Bd& b, const AdClass<Bd>& x, const AdClass<Bd>& y) {
  return {x.p, x.X + y.at(b, x.p)};
}
template <PrincipalBundle Bd> AdClass<Bd> bracket(const Bd& b, const AdClass<Bd>& x, const AdClass<Bd>& y) {
  return {x.p, bracket(x.X, y.at(b, x.p))};
}
template <PrincipalBundle Bd> double pair(const Bd& b, const AdStarClass<Bd>& a, const AdClass<Bd>& x) {
  return pair(a.A, x.at(b, a.p));
}

// ---- reduced bundles --------------------------------------------------------

/// TA(P) = TTM x adP x adP.
template <PrincipalBundle Bd> struct TAP_Element {
  typename Bd::Base::SecondTangent V;
  AdClass<Bd> X, Z;
};
/// TA*(P) = TT*M x ad*P x ad*P.
template <PrincipalBundle Bd> struct TAsP_Element {
  typename Bd::Base::TangentCotangent phi;
  AdStarClass<Bd> A, B;
};
/// T*A(P) = T*TM x adP x ad*P.
template <PrincipalBundle Bd> struct TsAP_Element {
  typename Bd::Base::CotangentTangent omega;
  AdClass<Bd> X;
  AdStarClass<Bd> C;
};
/// T*A*(P) = T*T*M x ad*P x adP.
template <PrincipalBundle Bd> struct TsAsP_Element {
  typename Bd::Base::DoubleCotangent theta;
  AdStarClass<Bd> A;
  AdClass<Bd> Z;
};
/// A(P) = TM x adP.
template <PrincipalBundle Bd> struct AtiyahElement {
  typename Bd::Base::TangentVec v;
  AdClass<Bd> X;
};

template <PrincipalBundle Bd> double distance(const Bd& b, const TAP_Element<Bd>& s, const TAP_Element<Bd>& t) {
  return std::max({detail::maxdiff(b.base().coords(s.V), b.base().coords(t.V)), distance(b, s.X, t.X),
                   distance(b, s.Z, t.Z)});
}
template <PrincipalBundle Bd> double distance(const Bd& b, const TAsP_Element<Bd>& s, const TAsP_Element<Bd>& t) {
  return std::max({detail::maxdiff(b.base().coords(s.phi), b.base().coords(t.phi)), distance(b, s.A, t.A),
                   distance(b, s.B, t.B)});
}
template <PrincipalBundle Bd> double distance(const Bd& b, const TsAP_Element<Bd>& s, const TsAP_Element<Bd>& t) {
  return std::max({detail::maxdiff(b.base().coords(s.omega), b.base().coords(t.omega)), distance(b, s.X, t.X),
                   distance(b, s.C, t.C)});
}
template <PrincipalBundle Bd> double distance(const Bd& b, const TsAsP_Element<Bd>& s, const TsAsP_Element<Bd>& t) {
  return std::max({detail::maxdiff(b.base().coords(s.theta), b.base().coords(t.theta)), distance(b, s.A, t.A),
                   distance(b, s.Z, t.Z)});
}

// ---- projections ------------------------------------------------------------

/// (p, V, X, Y, Z) -> (V, [(p, X)], [(p, [Y, X] + Z)]).
template <PrincipalBundle Bd> TAP_Element<Bd> project_TTP(const Bd& b, const TrivTTP<Bd>& t) {
  detail::require_over(b, t.p, t.V.q);
  return {t.V, {t.p, t.X}, {t.p, bracket(t.Y, t.X) + t.Z}};
}

/// (p, phi, A, Y, B) -> (phi, [(p, A)], [(p, B - ad*_Y A)]).
template <PrincipalBundle Bd> TAsP_Element<Bd> project_TTsP(const Bd& b, const TrivTTsP<Bd>& t) {
  detail::require_over(b, t.p, t.phi.q);
  return {t.phi, {t.p, t.A}, {t.p, t.B - ad_star(t.Y, t.A)}};
}

inline constexpr double kReducibleTol = 1e-9;

/// Distance of (p, rho, X, A, B) from the set A = -ad*_X B.
template <PrincipalBundle Bd> double reducibility_residual(const Bd&, const TrivTsTP<Bd>& t) {
  return (t.A + ad_star(t.X, t.B)).coeffs().template lpNorm<Eigen::Infinity>();
}
template <PrincipalBundle Bd> bool reducible_TsTP(const Bd& b, const TrivTsTP<Bd>& t) {
  return reducibility_residual(b, t) <= kReducibleTol;
}
/// Overwrites A := -ad*_X B. Changes the element unless it was already reducible.
template <PrincipalBundle Bd> TrivTsTP<Bd> coisotropic_projection(const Bd&, const TrivTsTP<Bd>& t) {
  return {t.p, t.rho, t.X, -ad_star(t.X, t.B), t.B};
}
template <PrincipalBundle Bd> TsAP_Element<Bd> project_TsTP(const Bd& b, const TrivTsTP<Bd>& t) {
  detail::require_over(b, t.p, t.rho.q);
  const double r = reducibility_residual(b, t);
  if (!(r <= kReducibleTol))
    throw NotReducible("T*TP element is not reducible: |A + ad*_X B| = " + std::to_string(r), r);
  return {t.rho, {t.p, t.X}, {t.p, t.B}};
}

/// Distance of (p, Theta, A, B, X) from the set B = ad*_X A.
template <PrincipalBundle Bd> double reducibility_residual(const Bd&, const TrivTsTsP<Bd>& t) {
  return (t.B - ad_star(t.X, t.A)).coeffs().template lpNorm<Eigen::Infinity>();
}
template <PrincipalBundle Bd> bool reducible_TsTsP(const Bd& b, const TrivTsTsP<Bd>& t) {
  return reducibility_residual(b, t) <= kReducibleTol;
}
template <PrincipalBundle Bd> TrivTsTsP<Bd> coisotropic_projection(const Bd&, const TrivTsTsP<Bd>& t) {
  return {t.p, t.theta, t.A, ad_star(t.X, t.A), t.X};
}
template <PrincipalBundle Bd> TsAsP_Element<Bd> project_TsTsP(const Bd& b, const TrivTsTsP<Bd>& t) {
  detail::require_over(b, t.p, t.theta.q);
  const double r = reducibility_residual(b, t);
  if (!(r <= kReducibleTol))
    throw NotReducible("T*T*P element is not reducible: |B - ad*_X A| = " + std::to_string(r), r);
  return {t.theta, {t.p, t.A}, {t.p, t.X}};
}

// ---- reduced maps -----------------------------------------------------------

/// (omega, [(p, X)], [(p, C)]) -> (alpha^-1(omega - Omega*(C)), [(p, C)], [(p, -ad*_X C)]).
template <PrincipalBundle Bd> TAsP_Element<Bd> epsilon_A(const Bd& b, const TsAP_Element<Bd>& e) {
  const auto& M = b.base();
  const auto& p = e.X.p;
  detail::require_over(b, p, e.omega.q);
  const DualAlgebraElement C = e.C.at(b, p);
  const auto core = b.curvature_dual(p, M.pi_TM(e.omega), C);
  return {M.alpha_inv(M.core_sub(e.omega, core)), {p, C}, {p, -ad_star(e.X.X, C)}};
}

/// (Theta, [(p, A)], [(p, Z)]) -> (beta^-1(Theta + Omega*(A)), [(p, A)], [(p, -ad*_Z A)]).
/// The core term is added in T*T*M, which is subtraction after beta^-1.
template <PrincipalBundle Bd> TAsP_Element<Bd> eta_A(const Bd& b, const TsAsP_Element<Bd>& e) {
  const auto& M = b.base();
  const auto& p = e.A.p;
  detail::require_over(b, p, e.theta.q);
  const LieAlgebraElement Z = e.Z.at(b, p);
  const auto core = b.curvature_dual(p, M.xi_TM(e.theta), e.A.A);
  return {M.beta_inv(M.core_add(e.theta, core)), e.A, {p, -ad_star(Z, e.A.A)}};
}

/// Curvature term [(p, Omega_p(tau V, T tau V))] of the reduced flip, at the representative point of x.
template <PrincipalBundle Bd>
AdClass<Bd> flip_curvature(const Bd& b, const typename Bd::Base::SecondTangent& V, const typename Bd::Point& p) {
  return {p, b.curvature(p, b.base().tau_TM(V), b.base().T_tau(V))};
}

/// Deviation of (U, Y, Z2) from the relation U = kappa(V), Z2 = Z1 + [X, Y] + Omega(tau V, T tau V).
template <PrincipalBundle Bd>
double reduced_flip_residual(const Bd& b, const TAP_Element<Bd>& a, const TAP_Element<Bd>& c) {
  const auto& M = b.base();
  const auto& p = a.X.p;
  const AdClass<Bd> Z2 = add(b, add(b, a.Z, bracket(b, a.X, c.X)), flip_curvature(b, a.V, p));
  return std::max(detail::maxdiff(M.coords(M.kappa(a.V)), M.coords(c.V)), distance(b, Z2, c.Z));
}
template <PrincipalBundle Bd>
bool reduced_flip_related(const Bd& b, const TAP_Element<Bd>& a, const TAP_Element<Bd>& c, double tol = kMatchTol) {
  return reduced_flip_residual(b, a, c) <= tol;
}
/// The element related to a with second side Y.
template <PrincipalBundle Bd>
TAP_Element<Bd> reduced_flip_image(const Bd& b, const TAP_Element<Bd>& a, const AdClass<Bd>& Y) {
  const auto& p = a.X.p;
  return {b.base().kappa(a.V), Y, add(b, add(b, a.Z, bracket(b, a.X, Y)), flip_curvature(b, a.V, p))};
}
/// The element with second side X that is related to c.
template <PrincipalBundle Bd>
TAP_Element<Bd> reduced_flip_preimage(const Bd& b, const TAP_Element<Bd>& c, const AdClass<Bd>& X) {
  const auto V = b.base().kappa(c.V);
  const auto& p = X.p;
  const LieAlgebraElement z = c.Z.at(b, p) - bracket(X.X, c.X.at(b, p)) - flip_curvature(b, V, p).X;
  return {V, X, {p, z}};
}

/// Anchor of the Atiyah algebroid: first projection.
template <PrincipalBundle Bd> typename Bd::Base::TangentVec anchor(const Bd&, const AtiyahElement<Bd>& e) {
  return e.v;
}

// ---- gauge orbits -----------------------------------------------------------

/// (G x g)-action on TTP: (pg, V, Ad_{g^-1}X, Ad_{g^-1}Y + W, [Ad_{g^-1}X, W] + Ad_{g^-1}Z).
template <PrincipalBundle Bd>
TrivTTP<Bd> act(const Bd& b, const TrivTTP<Bd>& t, const typename Bd::Group& g, const LieAlgebraElement& W) {
  const auto gi = b.inverse(g);
  const LieAlgebraElement X = b.Ad(gi, t.X);
  return {b.act(t.p, g), t.V, X, b.Ad(gi, t.Y) + W, bracket(X, W) + b.Ad(gi, t.Z)};
}
/// (G x g)-action on TT*P: (pg, phi, Ad*_g A, Ad_{g^-1}Y + W, Ad*_g B + ad*_W(Ad*_g A)).
template <PrincipalBundle Bd>
TrivTTsP<Bd> act(const Bd& b, const TrivTTsP<Bd>& t, const typename Bd::Group& g, const LieAlgebraElement& W) {
  const DualAlgebraElement A = b.Ad_star(g, t.A);
  return {b.act(t.p, g), t.phi, A, b.Ad(b.inverse(g), t.Y) + W, b.Ad_star(g, t.B) + ad_star(W, A)};
}
/// G-action on T*TP: (pg, rho, Ad_{g^-1}X, Ad*_g A, Ad*_g B).
template <PrincipalBundle Bd> TrivTsTP<Bd> act(const Bd& b, const TrivTsTP<Bd>& t, const typename Bd::Group& g) {
  return {b.act(t.p, g), t.rho, b.Ad(b.inverse(g), t.X), b.Ad_star(g, t.A), b.Ad_star(g, t.B)};
}
/// G-action on T*T*P: (pg, Theta, Ad*_g A, Ad*_g B, Ad_{g^-1}X).
template <PrincipalBundle Bd> TrivTsTsP<Bd> act(const Bd& b, const TrivTsTsP<Bd>& t, const typename Bd::Group& g) {
  return {b.act(t.p, g), t.theta, b.Ad_star(g, t.A), b.Ad_star(g, t.B), b.Ad(b.inverse(g), t.X)};
}

/// Representative change of a reduced element to another point in the fiber.
template <PrincipalBundle Bd>
TsAP_Element<Bd> move_to(const Bd& b, const TsAP_Element<Bd>& e, const typename Bd::Group& g) {
  const auto p = b.act(e.X.p, g);
  return {e.omega, {p, e.X.at(b, p)}, {b.act(e.C.p, g), b.Ad_star(g, e.C.A)}};
}
template <PrincipalBundle Bd>
TsAsP_Element<Bd> move_to(const Bd& b, const TsAsP_Element<Bd>& e, const typename Bd::Group& g) {
  const auto p = b.act(e.A.p, g);
  return {e.theta, {p, e.A.at(b, p)}, {b.act(e.Z.p, g), b.Ad(b.inverse(g), e.Z.X)}};
}

}  // namespace tulczyjew
