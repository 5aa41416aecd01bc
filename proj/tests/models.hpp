#pragma once
// Bundle instances shared by the test files.

#include <vector>

#include "tulczyjew/bundle.hpp"
#include "tulczyjew/frame_bundle.hpp"
#include "tulczyjew/sampling.hpp"

namespace models {

using namespace tulczyjew;

/// R^m x SO(3) with a random affine gauge potential (nonzero curvature).
inline ProductBundle twisted_bundle(int m, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::Matrix3Xd b(3, m);
  std::vector<Eigen::Matrix3Xd> a;
  for (int i = 0; i < m; ++i) {
    b.col(i) = rng.normal3();
    Eigen::Matrix3Xd ai(3, m);
    for (int j = 0; j < m; ++j) ai.col(j) = rng.normal3();
    a.push_back(ai);
  }
  return ProductBundle(m, GaugePotential::affine(b, a));
}

inline AlgebraHandle abelian3() {
  static const AlgebraHandle h = LieAlgebra::create(3, std::vector<double>(27, 0.0));
  return h;
}

/// R^2 x SO(3) with zero potential and an abelian bracket: no correction terms.
inline ProductBundle flat_abelian_bundle() {
  const Eigen::Matrix3Xd z = Eigen::Matrix3Xd::Zero(3, 2);
  return ProductBundle(2, GaugePotential::affine(z, {z, z}), abelian3());
}

inline LieAlgebraElement s2(double x) { return {so2(), Eigen::VectorXd::Constant(1, x)}; }
inline DualAlgebraElement s2d(double x) { return {so2(), Eigen::VectorXd::Constant(1, x)}; }

template <class Bd> const Bd& instance();
template <> inline const PointBundle& instance<PointBundle>() {
  static const PointBundle b;
  return b;
}
template <> inline const FrameBundle& instance<FrameBundle>() {
  static const FrameBundle b;
  return b;
}
template <> inline const ProductBundle& instance<ProductBundle>() {
  static const ProductBundle b = twisted_bundle(2, 3);
  return b;
}

}  // namespace models
