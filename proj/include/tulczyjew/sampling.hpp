#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "tulczyjew/bundle.hpp"
#include "tulczyjew/frame_bundle.hpp"
#include "tulczyjew/reduce.hpp"
#include "tulczyjew/triple.hpp"

namespace tulczyjew {

/// SplitMix64 evaluated at (seed, counter); the stream is a pure function of
/// both, so results are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), ctr_(counter) {}

  std::uint64_t next() {
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (++ctr_);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2 * std::numbers::pi * uniform());
  }
  Eigen::VectorXd normal(int n) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = normal();
    return x;
  }
  Eigen::Vector3d normal3() { return {normal(), normal(), normal()}; }
  Eigen::Vector3d unit3() {
    Eigen::Vector3d x = normal3();
    while (x.norm() < 1e-8) x = normal3();
    return x.normalized();
  }
  std::uint64_t counter() const { return ctr_; }

 private:
  std::uint64_t seed_, ctr_;
};

inline LieAlgebraElement random_element(Rng& rng, const AlgebraHandle& alg) { return {alg, rng.normal(alg->dim())}; }
inline DualAlgebraElement random_dual(Rng& rng, const AlgebraHandle& alg) { return {alg, rng.normal(alg->dim())}; }
inline SO3 random_rotation(Rng& rng) { return SO3::exp(Eigen::Vector3d(std::numbers::pi * rng.unit3() * rng.uniform())); }

// ---- base samples -------------------------------------------------------------

struct VectorSpaceSampler {
  using M = VectorSpaceBase;
  const M& m;
  Eigen::VectorXd vec(Rng& r) const { return r.normal(m.dim()); }
  M::Point point(Rng& r) const { return vec(r); }
  M::TangentVec tangent(Rng& r, const M::Point& q) const { return {q, vec(r)}; }
  M::CotangentVec cotangent(Rng& r, const M::Point& q) const { return {q, vec(r)}; }
  M::SecondTangent second_tangent(Rng& r, const M::Point& q) const { return {q, vec(r), vec(r), vec(r)}; }
  M::SecondTangent second_tangent_over(Rng& r, const M::TangentVec& x) const { return {x.q, x.v, vec(r), vec(r)}; }
  /// TTM element over x with T tau = (q, w).
  M::SecondTangent second_tangent_through(Rng& r, const M::TangentVec& x, const Eigen::VectorXd& w) const {
    return {x.q, x.v, w, vec(r)};
  }
  M::TangentCotangent tangent_cotangent(Rng& r, const M::Point& q) const { return {q, vec(r), vec(r), vec(r)}; }
  M::CotangentTangent cotangent_tangent(Rng& r, const M::Point& q) const { return {q, vec(r), vec(r), vec(r)}; }
  M::DoubleCotangent double_cotangent(Rng& r, const M::Point& q) const { return {q, vec(r), vec(r), vec(r)}; }
  /// TT*M element with T pi = w.
  M::TangentCotangent tangent_cotangent_with_base_velocity(Rng& r, const M::TangentVec& w) const {
    return {w.q, vec(r), w.v, vec(r)};
  }
  M::TangentCotangent tangent_cotangent_over(Rng& r, const M::CotangentVec& mu) const {
    return {mu.q, mu.mu, vec(r), vec(r)};
  }
  M::CoreCovector core(Rng& r, const M::Point& q) const { return {q, vec(r)}; }
};

struct SphereSampler {
  using M = SphereBase;
  using V3 = Eigen::Vector3d;
  const M& m;
  static V3 tangent_at(Rng& r, const V3& n) { return M::tangent_part(n, r.normal3()); }
  M::Point point(Rng& r) const { return r.unit3(); }
  M::TangentVec tangent(Rng& r, const V3& n) const { return {n, tangent_at(r, n)}; }
  M::CotangentVec cotangent(Rng& r, const V3& n) const { return {n, tangent_at(r, n)}; }
  M::SecondTangent second_tangent(Rng& r, const V3& n) const {
    return second_tangent_over(r, tangent(r, n));
  }
  M::SecondTangent second_tangent_over(Rng& r, const M::TangentVec& x) const {
    const V3 w = tangent_at(r, x.q);
    return {x.q, x.v, w, tangent_at(r, x.q) - x.v.dot(w) * x.q};
  }
  M::SecondTangent second_tangent_through(Rng& r, const M::TangentVec& x, const V3& w) const {
    return {x.q, x.v, w, tangent_at(r, x.q) - x.v.dot(w) * x.q};
  }
  M::TangentCotangent tangent_cotangent(Rng& r, const V3& n) const {
    return tangent_cotangent_over(r, cotangent(r, n));
  }
  M::TangentCotangent tangent_cotangent_with_base_velocity(Rng& r, const M::TangentVec& w) const {
    const V3 mu = tangent_at(r, w.q);
    return {w.q, mu, w.v, tangent_at(r, w.q) - mu.dot(w.v) * w.q};
  }
  M::TangentCotangent tangent_cotangent_over(Rng& r, const M::CotangentVec& mu) const {
    const V3 w = tangent_at(r, mu.q);
    return {mu.q, mu.mu, w, tangent_at(r, mu.q) - mu.mu.dot(w) * mu.q};
  }
  /// Ambient (a, b) with arbitrary normal parts, exercising the annihilator.
  M::CotangentTangent cotangent_tangent(Rng& r, const V3& n) const {
    return {n, tangent_at(r, n), r.normal3(), r.normal3()};
  }
  M::DoubleCotangent double_cotangent(Rng& r, const V3& n) const {
    return {n, tangent_at(r, n), r.normal3(), r.normal3()};
  }
  M::CoreCovector core(Rng& r, const V3& n) const { return {n, tangent_at(r, n)}; }
};

// ---- bundle samples -----------------------------------------------------------

template <PrincipalBundle Bd> struct BundleSampler;

template <> struct BundleSampler<PointBundle> {
  const PointBundle& b;
  VectorSpaceSampler base() const { return {b.base()}; }
  SO3 point(Rng& r) const { return random_rotation(r); }
  SO3 group(Rng& r) const { return random_rotation(r); }
};

template <> struct BundleSampler<ProductBundle> {
  const ProductBundle& b;
  VectorSpaceSampler base() const { return {b.base()}; }
  ProductBundle::Point point(Rng& r) const { return {r.normal(b.base().dim()), random_rotation(r)}; }
  SO3 group(Rng& r) const { return random_rotation(r); }
};

template <> struct BundleSampler<FrameBundle> {
  const FrameBundle& b;
  SphereSampler base() const { return {b.base()}; }
  FramePoint point(Rng& r) const {
    const Eigen::Vector3d n = r.unit3();
    const Eigen::Vector3d f1 = SphereBase::tangent_part(n, r.normal3()).normalized();
    return FramePoint{n, f1, n.cross(f1)}.orthonormalized();
  }
  SO2 group(Rng& r) const { return SO2(r.uniform(-std::numbers::pi, std::numbers::pi)); }
};

/// Random elements of the trivialised iterated bundles.
template <PrincipalBundle Bd> struct TripleSampler {
  const Bd& b;
  BundleSampler<Bd> bs{b};
  auto base() const { return bs.base(); }
  const AlgebraHandle& alg() const { return b.algebra(); }

  LieAlgebraElement X(Rng& r) const { return random_element(r, alg()); }
  DualAlgebraElement A(Rng& r) const { return random_dual(r, alg()); }

  TrivTTP<Bd> ttp(Rng& r) const {
    const auto p = bs.point(r);
    return {p, base().second_tangent(r, b.project(p)), X(r), X(r), X(r)};
  }
  TrivTTsP<Bd> ttsp(Rng& r) const {
    const auto p = bs.point(r);
    return {p, base().tangent_cotangent(r, b.project(p)), A(r), X(r), A(r)};
  }
  TrivTsTP<Bd> tstp(Rng& r) const {
    const auto p = bs.point(r);
    return {p, base().cotangent_tangent(r, b.project(p)), X(r), A(r), A(r)};
  }
  TrivTsTsP<Bd> tstsp(Rng& r) const {
    const auto p = bs.point(r);
    return {p, base().double_cotangent(r, b.project(p)), A(r), A(r), X(r)};
  }

  /// A TTP element and a TT*P element that can be paired after flipping the first:
  /// T pi(phi) = T tau(kappa V) = tau(V), and the fourth slots agree after the flip.
  std::pair<TrivTTsP<Bd>, TrivTTP<Bd>> duality_pair(Rng& r) const {
    const TrivTTP<Bd> v = ttp(r);
    const auto& M = b.base();
    const auto phi = base().tangent_cotangent_with_base_velocity(r, M.tau_TM(v.V));
    return {TrivTTsP<Bd>{v.p, phi, A(r), v.X, A(r)}, v};
  }
};

}  // namespace tulczyjew
