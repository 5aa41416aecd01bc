#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tulczyjew/base.hpp"
#include "tulczyjew/sampling.hpp"
#include "tulczyjew/sphere.hpp"
#include "tulczyjew/stereographic.hpp"

using namespace tulczyjew;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

VectorXd vx(std::initializer_list<double> l) {
  VectorXd v(l.size());
  int i = 0;
  for (double x : l) v[i++] = x;
  return v;
}

template <class M, class T> double dist(const M& m, const T& a, const T& b) {
  return detail::maxdiff(m.coords(a), m.coords(b));
}

}  // namespace

// ---- vector space ---------------------------------------------------------

TEST(VectorSpace, FlipSwapsMiddleSlots) {
  const VectorSpaceBase M(2);
  const auto V = M.kappa({vx({1, 2}), vx({3, 4}), vx({5, 6}), vx({7, 8})});
  EXPECT_EQ(V.v, vx({5, 6}));
  EXPECT_EQ(V.w, vx({3, 4}));
  EXPECT_EQ(V.u, vx({7, 8}));
}

TEST(VectorSpace, AlphaCoordinateFormula) {
  const VectorSpaceBase M(2);
  const VectorSpaceBase::TangentCotangent f{vx({1, 2}), vx({3, 4}), vx({5, 6}), vx({7, 8})};
  const auto r = M.alpha(f);
  EXPECT_EQ(r.v, f.w);
  EXPECT_EQ(r.a, f.nu);
  EXPECT_EQ(r.b, f.mu);
}

TEST(VectorSpace, AlphaSolvesDualityOverBasis) {
  // components of alpha(phi) are <<phi, kappa(E)>> on the basis E of T_(q,w) TM
  const VectorSpaceBase M(3);
  VectorSpaceSampler S{M};
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto f = S.tangent_cotangent(rng, S.point(rng));
    const auto basis = M.second_tangent_basis(M.T_pi(f));
    VectorXd comps(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) comps[k] = M.tangent_pairing(f, M.kappa(basis[k]));
    const auto brute = M.covector_on_TM(M.T_pi(f), comps);
    EXPECT_LE(dist(M, brute, M.alpha(f)), 1e-15);
  }
}

TEST(VectorSpace, TangentPairingFormula) {
  const VectorSpaceBase M(1);
  const VectorSpaceBase::TangentCotangent f{vx({0}), vx({2}), vx({3}), vx({5})};
  const VectorSpaceBase::SecondTangent V{vx({0}), vx({7}), vx({3}), vx({11})};
  EXPECT_EQ(M.tangent_pairing(f, V), 5.0 * 7 + 2.0 * 11);
}

TEST(VectorSpace, TangentPairingMatchesCurves) {
  const VectorSpaceBase M(3);
  VectorSpaceSampler S{M};
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto V = S.second_tangent(rng, S.point(rng));
    const auto f = S.tangent_cotangent_with_base_velocity(rng, M.T_tau(V));
    const double fd = oracle::fd5s([&](double t) { return (f.mu + t * f.nu).dot(V.v + t * V.u); });
    EXPECT_NEAR(M.tangent_pairing(f, V), fd, 1e-10);
  }
}

TEST(VectorSpace, ZeroFibersMapToZero) {
  const VectorSpaceBase M(2);
  const VectorXd q = vx({0.3, -1}), z = VectorXd::Zero(2);
  const auto r = M.alpha({q, z, z, z});
  EXPECT_EQ(r.a.norm() + r.b.norm() + r.v.norm(), 0.0);
  const auto t = M.beta({q, z, z, z});
  EXPECT_EQ(t.a.norm() + t.b.norm() + t.mu.norm(), 0.0);
}

TEST(VectorSpace, AlphaInverseOfDifferentialIsEulerLagrange) {
  // L = 1/2 <qd, K qd> - <q, S q>/2: alpha^{-1}(dL) has p = dL/dqd and pdot = dL/dq
  const VectorSpaceBase M(2);
  Eigen::Matrix2d K, S;
  K << 2, 0.5, 0.5, 1;
  S << 1, 0.2, 0.2, 3;
  const VectorXd q = vx({0.4, -0.7}), qd = vx({1.1, 0.3});
  const VectorSpaceBase::CotangentTangent dL{q, qd, -S * q, K * qd};
  const auto f = M.alpha_inv(dL);
  EXPECT_EQ(f.mu, VectorXd(K * qd));
  EXPECT_EQ(f.w, qd);
  EXPECT_EQ(f.nu, VectorXd(-S * q));
}

TEST(VectorSpace, ProjectionMismatchIsRejected) {
  const VectorSpaceBase M(1);
  const VectorSpaceBase::TangentCotangent f{vx({0}), vx({1}), vx({2}), vx({3})};
  const VectorSpaceBase::SecondTangent V{vx({0}), vx({1}), vx({2.5}), vx({0})};
  EXPECT_THROW((void)M.tangent_pairing(f, V), ProjectionMismatch);
  EXPECT_THROW(M.kappa({vx({0}), vx({1, 2}), vx({0}), vx({0})}), ContractError);
}

// ---- point base -----------------------------------------------------------

TEST(PointBaseModel, EverythingIsZeroDimensional) {
  const PointBase M;
  EXPECT_EQ(M.dim(), 0);
  EXPECT_EQ(M.coords(M.kappa(PointBase::second_tangent())).size(), 0);
  EXPECT_EQ(M.coords(M.alpha(PointBase::tangent_cotangent())).size(), 0);
  EXPECT_EQ(M.coords(M.beta(PointBase::tangent_cotangent())).size(), 0);
  EXPECT_EQ(M.coords(M.gamma(PointBase::double_cotangent())).size(), 0);
  EXPECT_EQ(M.tangent_pairing(PointBase::tangent_cotangent(), PointBase::second_tangent()), 0.0);
  EXPECT_TRUE(M.tangent_basis(PointBase::origin()).empty());
}

// ---- generic laws on every model -------------------------------------------

template <class M, class S> void check_base_laws(const M& m, const S& s, std::uint64_t seed) {
  Rng rng(seed);
  double duality = 0, factor = 0, invol = 0, core = 0, inverses = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto q = s.point(rng);
    const auto V = s.second_tangent(rng, q);
    const auto f = s.tangent_cotangent_with_base_velocity(rng, m.tau_TM(V));
    duality = std::max(duality, std::abs(m.tangent_pairing(f, m.kappa(V)) - m.pairing(m.alpha(f), V)));
    factor = std::max(factor, dist(m, m.beta(f), m.gamma_inv(m.alpha(f))));
    invol = std::max(invol, dist(m, m.kappa(m.kappa(V)), V));
    const auto th = s.double_cotangent(rng, q);
    const auto c = m.canonical(th);
    core = std::max(core, detail::maxdiff(m.coords(m.gamma(th)).segment(2 * q.size(), q.size()),
                                          m.coords(VectorXd(-c.a))));
    inverses = std::max({inverses, dist(m, m.alpha_inv(m.alpha(f)), f), dist(m, m.beta_inv(m.beta(f)), f),
                         dist(m, m.gamma_inv(m.gamma(th)), th)});
    const auto rho = s.cotangent_tangent(rng, q);
    inverses = std::max(inverses, dist(m, m.alpha(m.alpha_inv(rho)), rho));
    const auto w = s.core(rng, q);
    inverses = std::max(inverses, dist(m, m.core_sub(m.core_add(rho, w), w), rho));
  }
  EXPECT_LE(duality, 1e-10);
  EXPECT_LE(factor, 1e-12);
  EXPECT_EQ(invol, 0.0);
  EXPECT_LE(core, 1e-12);
  EXPECT_LE(inverses, 1e-12);
}

struct CanonicalVectorSpace : VectorSpaceBase {
  using VectorSpaceBase::VectorSpaceBase;
  DoubleCotangent canonical(const DoubleCotangent& t) const { return t; }
};

TEST(BaseLaws, VectorSpace) {
  const CanonicalVectorSpace M(3);
  check_base_laws(M, VectorSpaceSampler{M}, 31);
}

TEST(BaseLaws, Sphere) {
  const SphereBase M;
  check_base_laws(M, SphereSampler{M}, 32);
}

// ---- sphere -----------------------------------------------------------------

TEST(Sphere, FlipSwapsAndKeepsConstraints) {
  const SphereBase M;
  SphereSampler S{M};
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto V = S.second_tangent(rng, S.point(rng));
    const auto K = M.kappa(V);
    EXPECT_EQ(K.v, V.w);
    EXPECT_EQ(K.w, V.v);
    EXPECT_LE(SphereBase::defect(K), 1e-12);
  }
}

TEST(Sphere, ConstraintViolationIsRejected) {
  const SphereBase M;
  const Vector3d n = Vector3d::UnitZ();
  EXPECT_THROW(M.kappa({n, Vector3d::UnitX(), Vector3d::UnitZ(), Vector3d::Zero()}), ContractError);
  EXPECT_THROW(M.kappa({Vector3d(0, 0, 1.1), Vector3d::UnitX(), Vector3d::UnitY(), Vector3d::Zero()}),
               ContractError);
  // <n, u> = -<v, w> fails
  EXPECT_THROW(M.kappa({n, Vector3d::UnitX(), Vector3d::UnitX(), Vector3d::Zero()}), ContractError);
  EXPECT_NO_THROW(M.kappa({n, Vector3d::UnitX(), Vector3d::UnitX(), -n}));
}

TEST(Sphere, OutputsSatisfyConstraints) {
  const SphereBase M;
  SphereSampler S{M};
  Rng rng(42);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const auto f = S.tangent_cotangent(rng, S.point(rng));
    const auto r = M.alpha(f), rc = M.canonical(S.cotangent_tangent(rng, f.q));
    const auto t = M.beta(f);
    worst = std::max({worst, SphereBase::defect(M.alpha_inv(r)), SphereBase::defect(M.beta_inv(t)),
                      SphereBase::defect(M.alpha_inv(rc)), std::abs(r.a.dot(r.q)), std::abs(r.b.dot(r.q)),
                      std::abs(t.a.dot(t.q)), std::abs(t.b.dot(t.q))});
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Sphere, RoundTripThroughBetaAndGamma) {
  const SphereBase M;
  SphereSampler S{M};
  Rng rng(43);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const auto f = S.tangent_cotangent(rng, S.point(rng));
    worst = std::max(worst, dist(M, M.beta_inv(M.gamma_inv(M.alpha(f))), f));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Sphere, AnnihilatorRepresentativesAreEquivalent) {
  const SphereBase M;
  SphereSampler S{M};
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    const auto V = S.second_tangent(rng, S.point(rng));
    auto rho = S.cotangent_tangent(rng, V.q);
    rho.v = V.v;
    const double s = rng.normal(), t = rng.normal();
    auto moved = rho;
    moved.a += s * V.q + t * V.v;
    moved.b += t * V.q;
    EXPECT_NEAR(M.pairing(rho, V), M.pairing(moved, V), 1e-12);
    EXPECT_LE(dist(M, rho, moved), 1e-12);
    EXPECT_LE(dist(M, M.alpha_inv(rho), M.alpha_inv(moved)), 1e-12);
  }
}

TEST(Sphere, TangentPairingMatchesCurves) {
  const SphereBase M;
  SphereSampler S{M};
  Rng rng(45);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const auto V = S.second_tangent(rng, S.point(rng));
    const auto f = S.tangent_cotangent_with_base_velocity(rng, M.T_tau(V));
    worst = std::max(worst, std::abs(M.tangent_pairing(f, V) - oracle::sphere_tangent_pairing(f, V)));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Sphere, CoreAdditionOfCurvatureCovector) {
  const SphereBase M;
  const Vector3d n = Vector3d::UnitZ(), v(0.3, -1.2, 0), al(1, 2, 0), be(-0.5, 0.25, 0);
  const double a = 0.7;
  const auto r = M.core_add(SphereBase::CotangentTangent{n, v, al, be}, {n, a * v.cross(n)});
  EXPECT_EQ(r.a, Vector3d(al + a * v.cross(n)));
  EXPECT_EQ(r.b, be);
  EXPECT_EQ(r.v, v);
  const auto same = M.core_add(SphereBase::CotangentTangent{n, v, al, be}, {n, Vector3d::Zero()});
  EXPECT_EQ(same.a, al);
}

TEST(Sphere, GammaNegatesCore) {
  const SphereBase M;
  const Vector3d n = Vector3d::UnitZ();
  const auto r = M.gamma({n, Vector3d::UnitX(), Vector3d(0, 2, 0), Vector3d::Zero()});
  EXPECT_EQ(r.a, Vector3d(0, -2, 0));
  EXPECT_EQ(r.b, Vector3d::UnitX());
  EXPECT_EQ(r.v.norm(), 0.0);
}

// ---- stereographic charts ---------------------------------------------------

class Chart : public ::testing::TestWithParam<int> {
 protected:
  StereographicChart chart() const { return StereographicChart(static_cast<StereographicChart::Pole>(GetParam())); }
  Vector3d point(Rng& rng) const {
    Vector3d n = rng.unit3();
    if (n.z() * GetParam() > 0) n.z() = -n.z();
    return n;
  }
};

TEST_P(Chart, EmbeddingInvertsChart) {
  const auto C = chart();
  Rng rng(51);
  for (int i = 0; i < 100; ++i) {
    const Vector3d n = point(rng);
    EXPECT_LE((C.embed(C.chart(n)) - n).norm(), 1e-14);
  }
}

TEST_P(Chart, DerivativesMatchFiniteDifferences) {
  const auto C = chart();
  Rng rng(52);
  for (int i = 0; i < 50; ++i) {
    const Vector2d q = C.chart(point(rng)), a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal());
    const VectorXd dJ = oracle::fd5([&](double t) -> VectorXd { return C.embed(q + t * a); }, 1e-4);
    EXPECT_LE((dJ - C.jacobian(q) * a).norm(), 1e-9);
    const VectorXd dH = oracle::fd5([&](double t) -> VectorXd { return C.jacobian(q + t * b) * a; }, 1e-4);
    EXPECT_LE((dH - C.hessian(q, a, b)).norm(), 1e-8);
    EXPECT_LE((C.hessian(q, a, b) - C.hessian(q, b, a)).norm(), 1e-14);
  }
}

TEST_P(Chart, EmbeddedMapsAgreeWithChartMaps) {
  const auto C = chart();
  const SphereBase E;
  const VectorSpaceBase F(2);
  SphereSampler S{E};
  Rng rng(53);
  double worst = 0;
  for (int i = 0; i < 300; ++i) {
    const Vector3d n = point(rng);
    const auto V = S.second_tangent(rng, n);
    const auto f = S.tangent_cotangent(rng, n);
    const auto rho = S.cotangent_tangent(rng, n);
    const auto th = S.double_cotangent(rng, n);
    worst = std::max({worst, dist(F, C.to_chart(E.kappa(V)), F.kappa(C.to_chart(V))),
                      dist(F, C.to_chart(E.alpha(f)), F.alpha(C.to_chart(f))),
                      dist(F, C.to_chart(E.beta(f)), F.beta(C.to_chart(f))),
                      dist(F, C.to_chart(E.gamma(th)), F.gamma(C.to_chart(th))),
                      dist(F, C.to_chart(E.alpha_inv(rho)), F.alpha_inv(C.to_chart(rho))),
                      dist(F, C.to_chart(E.beta_inv(th)), F.beta_inv(C.to_chart(th))),
                      dist(F, C.to_chart(E.gamma_inv(rho)), F.gamma_inv(C.to_chart(rho)))});
    const auto Vf = S.second_tangent_over(rng, E.pi_TM(rho));
    const auto g = S.tangent_cotangent_over(rng, E.pi_TsM(th));
    const auto h = S.tangent_cotangent_with_base_velocity(rng, E.T_tau(V));
    worst = std::max({worst, std::abs(E.pairing(rho, Vf) - F.pairing(C.to_chart(rho), C.to_chart(Vf))),
                      std::abs(E.pairing(th, g) - F.pairing(C.to_chart(th), C.to_chart(g))),
                      std::abs(E.tangent_pairing(h, V) - F.tangent_pairing(C.to_chart(h), C.to_chart(V)))});
  }
  EXPECT_LE(worst, 1e-8);
}

TEST_P(Chart, PrimalObjectsRoundTrip) {
  const auto C = chart();
  const SphereBase E;
  SphereSampler S{E};
  Rng rng(54);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const Vector3d n = point(rng);
    const auto V = S.second_tangent(rng, n);
    const auto f = S.tangent_cotangent(rng, n);
    const auto x = S.tangent(rng, n);
    const auto c = S.cotangent(rng, n);
    worst = std::max({worst, dist(E, C.to_embedded(C.to_chart(V)), V), dist(E, C.to_embedded(C.to_chart(f)), f),
                      dist(E, C.to_embedded(C.to_chart(x)), x), dist(E, C.to_embedded(C.to_chart(c)), c)});
  }
  EXPECT_LE(worst, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Poles, Chart, ::testing::Values(1, -1));

TEST(ChartTransition, BothChartsGiveTheSamePairings) {
  const SphereBase E;
  const VectorSpaceBase F(2);
  SphereSampler S{E};
  const StereographicChart N(StereographicChart::North), So(StereographicChart::South);
  Rng rng(55);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    Vector3d n = rng.unit3();
    n.z() *= 0.5;
    n.normalize();
    const auto V = S.second_tangent(rng, n);
    const auto f = S.tangent_cotangent_with_base_velocity(rng, E.tau_TM(V));
    worst = std::max(worst, std::abs(F.pairing(F.alpha(N.to_chart(f)), N.to_chart(V)) -
                                     F.pairing(F.alpha(So.to_chart(f)), So.to_chart(V))));
    worst = std::max(worst, dist(E, N.to_embedded(F.kappa(N.to_chart(V))), So.to_embedded(F.kappa(So.to_chart(V)))));
  }
  EXPECT_LE(worst, 1e-8);
}
