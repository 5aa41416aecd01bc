#include <gtest/gtest.h>

#include "models.hpp"
#include "tulczyjew/reduce.hpp"
#include "tulczyjew/sampling.hpp"

using namespace tulczyjew;
using models::s2;
using models::s2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

template <class Bd> class ReduceLaws : public ::testing::Test {
 protected:
  const Bd& b = models::instance<Bd>();
  TripleSampler<Bd> s{b};
  TrivTsTP<Bd> reducible_tstp(Rng& r) const { return coisotropic_projection(b, s.tstp(r)); }
  TrivTsTsP<Bd> reducible_tstsp(Rng& r) const { return coisotropic_projection(b, s.tstsp(r)); }
};

using Bundles = ::testing::Types<PointBundle, FrameBundle, ProductBundle>;
TYPED_TEST_SUITE(ReduceLaws, Bundles);

TYPED_TEST(ReduceLaws, ProjectionsAreGaugeInvariant) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(201);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    const auto g = s.bs.group(rng);
    const auto W = s.X(rng);
    const auto v = s.ttp(rng);
    worst = std::max(worst, distance(b, project_TTP(b, act(b, v, g, W)), project_TTP(b, v)));
    const auto phi = s.ttsp(rng);
    worst = std::max(worst, distance(b, project_TTsP(b, act(b, phi, g, W)), project_TTsP(b, phi)));
    const auto rho = this->reducible_tstp(rng);
    EXPECT_TRUE(reducible_TsTP(b, act(b, rho, g)));
    worst = std::max(worst, distance(b, project_TsTP(b, act(b, rho, g)), project_TsTP(b, rho)));
    const auto th = this->reducible_tstsp(rng);
    EXPECT_TRUE(reducible_TsTsP(b, act(b, th, g)));
    worst = std::max(worst, distance(b, project_TsTsP(b, act(b, th, g)), project_TsTsP(b, th)));
  }
  EXPECT_LE(worst, 1e-12);
}

TYPED_TEST(ReduceLaws, ZeroSecondSlotDropsTheBracket) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(202);
  auto v = s.ttp(rng);
  v.Y = LieAlgebraElement::zero(b.algebra());
  const auto e = project_TTP(b, v);
  EXPECT_LE(distance(b, e.Z, AdClass<TypeParam>{v.p, v.Z}), 0.0);
  auto phi = s.ttsp(rng);
  phi.Y = LieAlgebraElement::zero(b.algebra());
  EXPECT_LE(distance(b, project_TTsP(b, phi).B, AdStarClass<TypeParam>{phi.p, phi.B}), 0.0);
}

TYPED_TEST(ReduceLaws, ConstructedSamplesAreAcceptedAndProjected) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(203);
  for (int i = 0; i < 100; ++i) {
    const auto raw = s.tstp(rng);
    const TrivTsTP<TypeParam> t{raw.p, raw.rho, raw.X, -ad_star(raw.X, raw.B), raw.B};
    ASSERT_TRUE(reducible_TsTP(b, t));
    const auto e = project_TsTP(b, t);
    EXPECT_EQ(b.base().coords(e.omega), b.base().coords(t.rho));
    EXPECT_EQ(e.X.X.coeffs(), t.X.coeffs());
    EXPECT_EQ(e.C.A.coeffs(), t.B.coeffs());
    const auto th = s.tstsp(rng);
    const TrivTsTsP<TypeParam> u{th.p, th.theta, th.A, ad_star(th.X, th.A), th.X};
    ASSERT_TRUE(reducible_TsTsP(b, u));
    const auto f = project_TsTsP(b, u);
    EXPECT_EQ(f.A.A.coeffs(), u.A.coeffs());
    EXPECT_EQ(f.Z.X.coeffs(), u.X.coeffs());
  }
}

TYPED_TEST(ReduceLaws, NonReducibleInputIsRejectedWithItsResidual) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(204);
  auto t = this->reducible_tstp(rng);
  t.A = t.A + DualAlgebraElement(b.algebra(), VectorXd::Constant(b.algebra()->dim(), 1e-3));
  EXPECT_FALSE(reducible_TsTP(b, t));
  try {
    (void)project_TsTP(b, t);
    ADD_FAILURE() << "accepted";
  } catch (const NotReducible& e) {
    EXPECT_NEAR(e.residual, 1e-3, 1e-12);
    EXPECT_NE(std::string(e.what()).find("|A + ad*_X B|"), std::string::npos);
  }
  auto u = this->reducible_tstsp(rng);
  u.B = u.B + DualAlgebraElement(b.algebra(), VectorXd::Constant(b.algebra()->dim(), 2e-3));
  EXPECT_FALSE(reducible_TsTsP(b, u));
  EXPECT_THROW((void)project_TsTsP(b, u), NotReducible);
  // X = 0: reducible iff the fourth slot vanishes
  auto z = s.tstp(rng);
  z.X = LieAlgebraElement::zero(b.algebra());
  EXPECT_EQ(reducible_TsTP(b, z), z.A.coeffs().norm() == 0.0);
  z.A = DualAlgebraElement::zero(b.algebra());
  EXPECT_TRUE(reducible_TsTP(b, z));
}

TYPED_TEST(ReduceLaws, CommutingSquares) {
  const auto& b = this->b;
  Rng rng(205);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = this->reducible_tstp(rng);
    worst = std::max(worst, distance(b, project_TTsP(b, tulczyjew_alpha_inv(b, t)), epsilon_A(b, project_TsTP(b, t))));
    const auto u = this->reducible_tstsp(rng);
    worst = std::max(worst, distance(b, project_TTsP(b, beta_inv(b, u)), eta_A(b, project_TsTsP(b, u))));
  }
  EXPECT_LE(worst, 1e-10);
}

TYPED_TEST(ReduceLaws, ReducedMapsIgnoreTheRepresentative) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(206);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = s.bs.group(rng);
    const auto e = project_TsTP(b, this->reducible_tstp(rng));
    worst = std::max(worst, distance(b, epsilon_A(b, move_to(b, e, g)), epsilon_A(b, e)));
    const auto f = project_TsTsP(b, this->reducible_tstsp(rng));
    worst = std::max(worst, distance(b, eta_A(b, move_to(b, f, g)), eta_A(b, f)));
  }
  EXPECT_LE(worst, 1e-10);
}

TYPED_TEST(ReduceLaws, ReducedFlipRelation) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(207);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto v = s.ttp(rng);
    const auto a = project_TTP(b, v), c = project_TTP(b, flip(b, v));
    EXPECT_TRUE(reduced_flip_related(b, a, c));
    worst = std::max({worst, reduced_flip_residual(b, a, c), distance(b, reduced_flip_image(b, a, c.X), c),
                      distance(b, reduced_flip_preimage(b, c, a.X), a)});
    // a different third slot breaks the relation
    auto c2 = c;
    c2.Z = add(b, c.Z, AdClass<TypeParam>{c.Z.p, s.X(rng)});
    EXPECT_FALSE(reduced_flip_related(b, a, c2));
  }
  EXPECT_LE(worst, 1e-10);
}

TYPED_TEST(ReduceLaws, ClassOperationsAreWellDefined) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(208);
  double worst = 0;
  for (int i = 0; i < 300; ++i) {
    const auto p = s.bs.point(rng);
    const auto X = s.X(rng), Y = s.X(rng);
    const auto A = s.A(rng);
    const auto g = s.bs.group(rng), h = s.bs.group(rng);
    const AdClass<TypeParam> x{p, X}, y{p, Y};
    const AdClass<TypeParam> xg{b.act(p, g), b.Ad(b.inverse(g), X)}, yh{b.act(p, h), b.Ad(b.inverse(h), Y)};
    const AdStarClass<TypeParam> a{p, A}, ag{b.act(p, h), b.Ad_star(h, A)};
    EXPECT_LE(distance(b, x, xg), 1e-12);
    worst = std::max({worst, distance(b, bracket(b, x, y), bracket(b, xg, yh)), distance(b, add(b, x, y), add(b, xg, yh)),
                      std::abs(pair(b, a, x) - pair(b, ag, xg))});
  }
  EXPECT_LE(worst, 1e-12);
}

TYPED_TEST(ReduceLaws, AnchorIsTheFirstProjection) {
  const auto& b = this->b;
  const auto& s = this->s;
  Rng rng(209);
  const auto v = s.ttp(rng);
  const auto& M = b.base();
  const AtiyahElement<TypeParam> e{M.tau_TM(v.V), {v.p, v.X}};
  EXPECT_EQ(M.coords(anchor(b, e)), M.coords(M.tau_TM(v.V)));
  const AtiyahElement<TypeParam> z{M.tau_TM(v.V), {v.p, LieAlgebraElement::zero(b.algebra())}};
  EXPECT_EQ(M.coords(anchor(b, z)), M.coords(M.tau_TM(v.V)));
  // the anchor of the projected TTP element's side is the base projection of its TP side
  const auto a = project_TTP(b, v);
  EXPECT_EQ(M.coords(anchor(b, AtiyahElement<TypeParam>{M.tau_TM(a.V), a.X})), M.coords(M.tau_TM(v.V)));
}

// ---- sphere -------------------------------------------------------------------

TEST(SphereReduce, ClassesAreScalars) {
  const FrameBundle P;
  BundleSampler<FrameBundle> S{P};
  Rng rng(211);
  for (int i = 0; i < 100; ++i) {
    const auto p = S.point(rng);
    const double x = rng.normal();
    EXPECT_EQ((AdClass<FrameBundle>{p, s2(x)}.canonical(P)[0]), x);
    EXPECT_EQ((AdStarClass<FrameBundle>{p, s2d(x)}.canonical(P)[0]), x);
  }
}

TEST(SphereReduce, ProjectionAndReducedMapFormulas) {
  const FrameBundle P;
  const SphereBase& M = P.base();
  TripleSampler<FrameBundle> s{P};
  Rng rng(212);
  for (int i = 0; i < 100; ++i) {
    const auto v = s.ttp(rng);
    const auto e = project_TTP(P, v);
    EXPECT_EQ(e.X.X[0], v.X[0]);
    EXPECT_EQ(e.Z.X[0], v.Z[0]);
    // abelian: reducible iff the fourth slot vanishes
    auto t = s.tstp(rng);
    EXPECT_FALSE(reducible_TsTP(P, t));
    t.A = s2d(0);
    const auto r = project_TsTP(P, t);
    const auto eps = epsilon_A(P, r);
    const Vector3d n = t.rho.q, vv = t.rho.v;
    const double c = t.B[0];
    const auto expect = M.alpha_inv(M.core_sub(t.rho, {n, c * vv.cross(n)}));
    EXPECT_LE(detail::maxdiff(M.coords(eps.phi), M.coords(expect)), 1e-15);
    EXPECT_EQ(eps.A.A[0], c);
    EXPECT_EQ(eps.B.A[0], 0.0);
    // related pairs: z2 = z1 + <w x v | n>
    const auto a = project_TTP(P, v);
    auto c2 = a;
    c2.V = M.kappa(v.V);
    c2.X = {v.p, s2(rng.normal())};
    c2.Z = {v.p, s2(a.Z.X[0] + v.V.w.cross(v.V.v).dot(v.V.q))};
    EXPECT_TRUE(reduced_flip_related(P, a, c2));
  }
}

TEST(SphereReduce, EtaFormula) {
  const FrameBundle P;
  const SphereBase& M = P.base();
  TripleSampler<FrameBundle> s{P};
  Rng rng(213);
  for (int i = 0; i < 100; ++i) {
    auto t = s.tstsp(rng);
    t.B = s2d(0);
    const auto e = eta_A(P, project_TsTsP(P, t));
    const Vector3d n = t.theta.q, b = M.xi_TM(t.theta).v;
    const double a = t.A[0];
    const auto expect = M.beta_inv(M.core_add(t.theta, {n, a * b.cross(n)}));
    EXPECT_LE(detail::maxdiff(M.coords(e.phi), M.coords(expect)), 1e-15);
    EXPECT_EQ(e.A.A[0], a);
    EXPECT_EQ(e.B.A[0], 0.0);
  }
}

TEST(FlatAbelianReduce, EpsilonIsAlphaInverse) {
  const ProductBundle P = models::flat_abelian_bundle();
  const auto& M = P.base();
  TripleSampler<ProductBundle> s{P};
  Rng rng(214);
  for (int i = 0; i < 100; ++i) {
    auto t = s.tstp(rng);
    t.A = DualAlgebraElement::zero(P.algebra());
    const auto e = epsilon_A(P, project_TsTP(P, t));
    EXPECT_EQ(M.coords(e.phi), M.coords(M.alpha_inv(t.rho)));
    EXPECT_LE(detail::maxdiff(e.A.A.coeffs(), t.B.coeffs()), 1e-14);
    EXPECT_EQ(e.B.A.coeffs().norm(), 0.0);
    auto u = s.tstsp(rng);
    u.B = DualAlgebraElement::zero(P.algebra());
    const auto f = eta_A(P, project_TsTsP(P, u));
    EXPECT_EQ(M.coords(f.phi), M.coords(M.beta_inv(u.theta)));
    EXPECT_EQ(f.B.A.coeffs().norm(), 0.0);
    // abelian: reducible iff the fourth slot vanishes
    EXPECT_EQ(reducible_TsTP(P, s.tstp(rng)), false);
  }
}
