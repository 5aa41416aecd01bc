#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "tulczyjew/dynamics.hpp"
#include "tulczyjew/frame_bundle.hpp"
#include "tulczyjew/reduce.hpp"
#include "tulczyjew/sampling.hpp"
#include "tulczyjew/stereographic.hpp"
#include "tulczyjew/triple.hpp"

namespace tulczyjew {

struct PropertyResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long samples = 0;
  bool passed = false;
};

struct CheckReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> results;
  bool all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
  }
};

namespace check {

inline PropertyResult run(const std::string& name, double tol, long n, const std::function<double()>& probe) {
  PropertyResult r{name, 0.0, tol, n, true};
  for (long i = 0; i < n; ++i) {
    const double d = probe();
    // NaN counts as failure
    if (!(d <= r.max_residual)) r.max_residual = std::isnan(d) ? INFINITY : d;
  }
  r.passed = r.max_residual <= tol;
  return r;
}

/// so(3) with [X1, X2] = X3 + 0.1 X1: antisymmetric, but the Jacobi identity fails.
inline AlgebraHandle corrupted_so3() {
  std::vector<double> c(27, 0.0);
  auto at = [&](int a, int b, int k) -> double& { return c[(a * 3 + b) * 3 + k]; };
  at(0, 1, 2) = 1;
  at(1, 0, 2) = -1;
  at(1, 2, 0) = 1;
  at(2, 1, 0) = -1;
  at(2, 0, 1) = 1;
  at(0, 2, 1) = -1;
  at(0, 1, 0) = 0.1;
  at(1, 0, 0) = -0.1;
  return LieAlgebra::unchecked(3, c, {"Lx", "Ly", "Lz"});
}

// ---- lie ----------------------------------------------------------------------

inline PropertyResult jacobi(const AlgebraHandle& alg, Rng& rng, long n) {
  return run("lie.jacobi", 1e-12, n, [&] {
    const auto x = random_element(rng, alg), y = random_element(rng, alg), z = random_element(rng, alg);
    return (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y)))
        .coeffs()
        .lpNorm<Eigen::Infinity>();
  });
}

inline PropertyResult antisymmetry(const AlgebraHandle& alg, Rng& rng, long n) {
  return run("lie.antisymmetry", 1e-12, n, [&] {
    const auto x = random_element(rng, alg), y = random_element(rng, alg);
    return (bracket(x, y) + bracket(y, x)).coeffs().lpNorm<Eigen::Infinity>();
  });
}

inline PropertyResult ad_star_duality(const AlgebraHandle& alg, Rng& rng, long n) {
  return run("lie.ad_star_duality", 1e-12, n, [&] {
    const auto x = random_element(rng, alg), y = random_element(rng, alg);
    const auto a = random_dual(rng, alg);
    return std::abs(pair(ad_star(x, a), y) - pair(a, bracket(x, y)));
  });
}

// ---- base charts ----------------------------------------------------------------

/// Canonical maps and pairings of the embedded sphere against the stereographic chart.
inline PropertyResult chart_vs_embedded(Rng& rng, long n) {
  const SphereBase E;
  const VectorSpaceBase F(2);
  const SphereSampler S{E};
  auto d = [](const VectorSpaceBase& m, const auto& a, const auto& b) { return detail::maxdiff(m.coords(a), m.coords(b)); };
  return run("base.chart_vs_embedded", 1e-8, n, [&] {
    const Eigen::Vector3d q = rng.unit3();
    const auto C = StereographicChart::for_point(q);
    const auto V = S.second_tangent(rng, q);
    const auto f = S.tangent_cotangent(rng, q);
    const auto rho = S.cotangent_tangent(rng, q);
    const auto th = S.double_cotangent(rng, q);
    const auto Vf = S.second_tangent_over(rng, E.pi_TM(rho));
    const auto g = S.tangent_cotangent_over(rng, E.pi_TsM(th));
    const auto h = S.tangent_cotangent_with_base_velocity(rng, E.T_tau(V));
    return std::max({d(F, C.to_chart(E.kappa(V)), F.kappa(C.to_chart(V))),
                     d(F, C.to_chart(E.alpha(f)), F.alpha(C.to_chart(f))),
                     d(F, C.to_chart(E.beta(f)), F.beta(C.to_chart(f))),
                     d(F, C.to_chart(E.gamma(th)), F.gamma(C.to_chart(th))),
                     d(F, C.to_chart(E.alpha_inv(rho)), F.alpha_inv(C.to_chart(rho))),
                     d(F, C.to_chart(E.beta_inv(th)), F.beta_inv(C.to_chart(th))),
                     std::abs(E.pairing(rho, Vf) - F.pairing(C.to_chart(rho), C.to_chart(Vf))),
                     std::abs(E.pairing(th, g) - F.pairing(C.to_chart(th), C.to_chart(g))),
                     std::abs(E.tangent_pairing(h, V) - F.tangent_pairing(C.to_chart(h), C.to_chart(V)))});
  });
}

// ---- triple -----------------------------------------------------------------------

template <PrincipalBundle Bd> PropertyResult duality(const std::string& model, const Bd& b, Rng& rng, long n) {
  const TripleSampler<Bd> s{b};
  return run("triple.duality." + model, 1e-10, n, [&] {
    const auto [phi, v] = s.duality_pair(rng);
    return std::abs(pair_TTsP_TTP(b, phi, flip(b, v)) - pair_TsTP_TTP(b, tulczyjew_alpha(b, phi), v));
  });
}

template <PrincipalBundle Bd> PropertyResult involution(const std::string& model, const Bd& b, Rng& rng, long n) {
  const TripleSampler<Bd> s{b};
  return run("triple.involution." + model, 1e-12, n, [&] {
    const auto v = s.ttp(rng);
    return distance(b, flip(b, flip(b, v)), v);
  });
}

template <PrincipalBundle Bd> PropertyResult factorization(const std::string& model, const Bd& b, Rng& rng, long n) {
  const TripleSampler<Bd> s{b};
  return run("triple.factorization." + model, 1e-12, n, [&] {
    const auto phi = s.ttsp(rng);
    return distance(b, beta(b, phi), gamma_TP_inv(b, tulczyjew_alpha(b, phi)));
  });
}

/// M = point: alpha and beta against (g, X, B - ad*_X A, A) and (g, A, ad*_X A - B, X).
inline PropertyResult degeneration(const PointBundle& G, Rng& rng, long n) {
  const TripleSampler<PointBundle> s{G};
  const auto& alg = G.algebra();
  return run("triple.degeneration", 1e-12, n, [&] {
    const SO3 g = s.bs.point(rng);
    const Eigen::VectorXd A = rng.normal(3), B = rng.normal(3), X = rng.normal(3);
    // ad*_X A for the cross-product bracket
    const Eigen::Vector3d adXA = Eigen::Vector3d(A).cross(Eigen::Vector3d(X));
    const TrivTTsP<PointBundle> in{g, PointBase::tangent_cotangent(), {alg, A}, {alg, X}, {alg, B}};
    const auto a = tulczyjew_alpha(G, in);
    const auto be = beta(G, in);
    return std::max({G.point_distance(a.p, g), detail::maxdiff(a.X.coeffs(), X),
                     detail::maxdiff(a.A.coeffs(), B - adXA), detail::maxdiff(a.B.coeffs(), A),
                     G.point_distance(be.p, g), detail::maxdiff(be.A.coeffs(), A),
                     detail::maxdiff(be.B.coeffs(), adXA - B), detail::maxdiff(be.X.coeffs(), X)});
  });
}

// ---- reduce ---------------------------------------------------------------------

template <PrincipalBundle Bd> PropertyResult commuting_squares(const std::string& model, const Bd& b, Rng& rng, long n) {
  const TripleSampler<Bd> s{b};
  return run("reduce.commuting_squares." + model, 1e-10, n, [&] {
    const auto t = coisotropic_projection(b, s.tstp(rng));
    const auto u = coisotropic_projection(b, s.tstsp(rng));
    return std::max(distance(b, project_TTsP(b, tulczyjew_alpha_inv(b, t)), epsilon_A(b, project_TsTP(b, t))),
                    distance(b, project_TTsP(b, beta_inv(b, u)), eta_A(b, project_TsTsP(b, u))));
  });
}

template <PrincipalBundle Bd>
PropertyResult representative_change(const std::string& model, const Bd& b, Rng& rng, long n) {
  const TripleSampler<Bd> s{b};
  return run("reduce.representative_change." + model, 1e-10, n, [&] {
    const auto g = s.bs.group(rng);
    const auto e = project_TsTP(b, coisotropic_projection(b, s.tstp(rng)));
    const auto f = project_TsTsP(b, coisotropic_projection(b, s.tstsp(rng)));
    return std::max(distance(b, epsilon_A(b, move_to(b, e, g)), epsilon_A(b, e)),
                    distance(b, eta_A(b, move_to(b, f, g)), eta_A(b, f)));
  });
}

template <PrincipalBundle Bd> PropertyResult reduced_flip(const std::string& model, const Bd& b, Rng& rng, long n) {
  const TripleSampler<Bd> s{b};
  return run("reduce.flip_relation." + model, 1e-10, n, [&] {
    const auto v = s.ttp(rng);
    return reduced_flip_residual(b, project_TTP(b, v), project_TTP(b, flip(b, v)));
  });
}

// ---- dynamics -------------------------------------------------------------------

inline BodyState random_body_state(Rng& rng) {
  const Eigen::Vector3d n = rng.unit3();
  return {n, SphereBase::tangent_part(n, rng.normal3()), rng.normal()};
}

inline FramePoint random_frame_over(Rng& rng, const Eigen::Vector3d& n) {
  const Eigen::Vector3d f1 = SphereBase::tangent_part(n, rng.normal3()).normalized();
  return FramePoint{n, f1, n.cross(f1)}.orthonormalized();
}

/// D point of the sphere body against its closed form with the resolved multiplier.
inline PropertyResult sphere_dynamics(Rng& rng, long n) {
  const FrameBundle P;
  return run("dynamics.sphere_closed_form", 1e-10, n, [&] {
    const SphereBody body(rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0));
    const BodyState s = random_body_state(rng);
    const FramePoint p = random_frame_over(rng, s.n);
    const auto D = lagrangian_dynamics_point(P, body.lagrangian(), {p, {s.n, s.v}, SphereBody::so2_elem(s.r)});
    return distance(P, D, body.dynamics_point(p, s.v, s.r, body.resolve_multiplier(s)));
  });
}

inline PropertyResult alpha_identity(Rng& rng, long n) {
  const FrameBundle P;
  return run("dynamics.alpha_identity", 1e-10, n, [&] {
    const SphereBody body(rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0));
    const BodyState s = random_body_state(rng);
    const TrivTangent<FrameBundle> V{random_frame_over(rng, s.n), {s.n, s.v}, SphereBody::so2_elem(s.r)};
    const auto L = body.lagrangian();
    return distance(P, lagrangian_dynamics_point(P, L, V), tulczyjew_alpha_inv(P, differential_L(P, L, V)));
  });
}

inline PropertyResult legendre(Rng& rng, long n) {
  const FrameBundle P;
  return run("dynamics.legendre", 1e-10, n, [&] {
    const SphereBody body(rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0));
    const BodyState s = random_body_state(rng);
    const FramePoint p = random_frame_over(rng, s.n);
    const auto D = lagrangian_dynamics_point(P, body.lagrangian(), {p, {s.n, s.v}, SphereBody::so2_elem(s.r)});
    const TrivCotangent<FrameBundle> Pt{p, {s.n, body.I_perp() * s.v}, SphereBody::so2_dual(body.I_ax() * s.r)};
    return distance(P, hamiltonian_dynamics_point(P, body.hamiltonian(), Pt), D);
  });
}

/// |project(D(p, v, r)) - d(v, [(p g, r)])| for a sphere body state and a frame rotation g.
inline double reduction_deviation(const ReducedLagrangian<FrameBundle>& l, const BodyState& s, const FramePoint& p,
                                  const SO2& g) {
  const FrameBundle P;
  const auto projected =
      project_TTsP(P, lagrangian_dynamics_point(P, l.lagrangian(), {p, {s.n, s.v}, SphereBody::so2_elem(s.r)}));
  const AdClass<FrameBundle> x{P.act(p, g), P.Ad(P.inverse(g), SphereBody::so2_elem(s.r))};
  return distance(P, reduced_dynamics_point(P, l, {s.n, s.v}, x), projected);
}

struct ReductionComparison {
  double max_deviation = 0.0;
  double max_invariance_defect = 0.0;
  long states = 0;
};

/// Reduced against projected unreduced dynamics at every trajectory state, the reduced side
/// evaluated at a frame rotated by a random angle. Throws ContractError if L is not flagged invariant.
inline ReductionComparison compare_along(const Lagrangian<FrameBundle>& L, const Trajectory& tr, std::uint64_t seed) {
  const FrameBundle P;
  const auto l = ReducedLagrangian<FrameBundle>::from_invariant(L);
  Rng rng(seed);
  ReductionComparison out;
  for (const auto& x : tr) {
    const FramePoint p = FrameBundle::reference_frame(x.s.n);
    const SO2 g(rng.uniform(-std::numbers::pi, std::numbers::pi));
    out.max_invariance_defect = std::max(
        out.max_invariance_defect, invariance_defect(P, L, {p, {x.s.n, x.s.v}, SphereBody::so2_elem(x.s.r)}, g));
    out.max_deviation = std::max(out.max_deviation, reduction_deviation(l, x.s, p, g));
    ++out.states;
  }
  return out;
}

inline PropertyResult reduction_commutes(Rng& rng, long n) {
  return run("dynamics.reduction_commutes", 1e-10, n, [&] {
    const SphereBody body(rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0));
    const auto l = ReducedLagrangian<FrameBundle>::from_invariant(body.lagrangian());
    const BodyState s = random_body_state(rng);
    return reduction_deviation(l, s, random_frame_over(rng, s.n), SO2(rng.uniform(-3.0, 3.0)));
  });
}

inline PropertyResult one_step_constraint(Rng& rng, long n) {
  return run("dynamics.one_step_constraint", 1e-8, n, [&] {
    const SphereBody body(rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0));
    const BodyState s = body.rk4_step(random_body_state(rng), 1e-3);
    return std::max(std::abs(s.n.dot(s.v)), std::abs(s.n.norm() - 1));
  });
}

// ---- the whole suite --------------------------------------------------------------

struct SuiteOptions {
  std::uint64_t seed = 1;
  long samples = 100;
  bool corrupt_bracket = false;
};

/// Every property, each with its own generator stream derived from the seed.
inline CheckReport run_suite(const SuiteOptions& o) {
  CheckReport rep;
  rep.seed = o.seed;
  const AlgebraHandle alg = o.corrupt_bracket ? corrupted_so3() : so3();
  const PointBundle G(alg);
  const FrameBundle F;
  Rng seeds(o.seed);
  const ProductBundle B = [&] {
    Rng r(seeds.next());
    const int m = 2;
    Eigen::Matrix3Xd b(3, m);
    std::vector<Eigen::Matrix3Xd> a;
    for (int i = 0; i < m; ++i) {
      b.col(i) = r.normal3();
      Eigen::Matrix3Xd ai(3, m);
      for (int j = 0; j < m; ++j) ai.col(j) = r.normal3();
      a.push_back(ai);
    }
    return ProductBundle(m, GaugePotential::affine(b, a), alg);
  }();
  const long n = o.samples;
  auto add = [&](auto&& f) {
    Rng r(seeds.next());
    rep.results.push_back(f(r));
  };
  add([&](Rng& r) { return jacobi(alg, r, n); });
  add([&](Rng& r) { return antisymmetry(alg, r, n); });
  add([&](Rng& r) { return ad_star_duality(alg, r, n); });
  add([&](Rng& r) { return chart_vs_embedded(r, n); });
  add([&](Rng& r) { return duality("point", G, r, n); });
  add([&](Rng& r) { return duality("sphere", F, r, n); });
  add([&](Rng& r) { return duality("product", B, r, n); });
  add([&](Rng& r) { return involution("point", G, r, n); });
  add([&](Rng& r) { return involution("sphere", F, r, n); });
  add([&](Rng& r) { return involution("product", B, r, n); });
  add([&](Rng& r) { return factorization("point", G, r, n); });
  add([&](Rng& r) { return factorization("sphere", F, r, n); });
  add([&](Rng& r) { return factorization("product", B, r, n); });
  add([&](Rng& r) { return degeneration(G, r, n); });
  add([&](Rng& r) { return commuting_squares("point", G, r, n); });
  add([&](Rng& r) { return commuting_squares("sphere", F, r, n); });
  add([&](Rng& r) { return commuting_squares("product", B, r, n); });
  add([&](Rng& r) { return representative_change("point", G, r, n); });
  add([&](Rng& r) { return representative_change("sphere", F, r, n); });
  add([&](Rng& r) { return representative_change("product", B, r, n); });
  add([&](Rng& r) { return reduced_flip("point", G, r, n); });
  add([&](Rng& r) { return reduced_flip("sphere", F, r, n); });
  add([&](Rng& r) { return reduced_flip("product", B, r, n); });
  add([&](Rng& r) { return sphere_dynamics(r, n); });
  add([&](Rng& r) { return alpha_identity(r, n); });
  add([&](Rng& r) { return legendre(r, n); });
  add([&](Rng& r) { return reduction_commutes(r, n); });
  add([&](Rng& r) { return one_step_constraint(r, n); });
  return rep;
}

}  // namespace check
}  // namespace tulczyjew
