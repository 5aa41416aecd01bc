#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "tulczyjew/bundle.hpp"
#include "tulczyjew/sphere.hpp"

namespace tulczyjew {

/// Orthonormal right-handed frame {n, f1, f2}; n is the point of S^2 below it.
struct FramePoint {
  Eigen::Vector3d n, f1, f2;

  /// Modified Gram-Schmidt on (n, f1); f2 is rebuilt as n x f1.
  FramePoint orthonormalized() const {
    FramePoint p;
    p.n = n.normalized();
    p.f1 = (f1 - p.n.dot(f1) * p.n).normalized();
    p.f2 = p.n.cross(p.f1);
    return p;
  }
  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d m;
    m << n, f1, f2;
    return m;
  }
  static FramePoint from_matrix(const Eigen::Matrix3d& m) { return {m.col(0), m.col(1), m.col(2)}; }
  double defect() const { return (matrix().transpose() * matrix() - Eigen::Matrix3d::Identity()).norm() +
                                 std::abs(matrix().determinant() - 1.0); }
};

/// Frame bundle of S^2 with structure group SO(2) and the connection induced
/// by the bi-invariant metric on SO(3) (the Levi-Civita connection).
///
/// Tangent vectors of P are written as x in R^3 ~ so(3): the velocity of
/// exp(t hat(x)) p under the left SO(3) action.
///
/// Sign convention: the right SO(2) action turns (f1, f2) about n by +angle,
/// so the fundamental field of X in so(2) is x = X n and omega(sigma(X)) = X
/// with omega(p, x) = <n, x>.
class FrameBundle {
 public:
  using Base = SphereBase;
  using Point = FramePoint;
  using Group = SO2;
  using RawTangent = Eigen::Vector3d;

  const Base& base() const { return base_; }
  const AlgebraHandle& algebra() const { return so2(); }
  Base::Point project(const Point& p) const { return p.n; }

  LieAlgebraElement connection(const Point& p, const RawTangent& x) const {
    return {so2(), Eigen::VectorXd::Constant(1, p.n.dot(x))};
  }
  RawTangent horizontal_lift(const Point& p, const Base::TangentVec& v) const {
    detail::require_close(base_.point_distance(p.n, v.q), "vector not tangent at the frame's base point");
    return p.n.cross(v.v);
  }
  RawTangent fundamental(const Point& p, const LieAlgebraElement& X) const { return X[0] * p.n; }
  Base::TangentVec push_forward(const Point& p, const RawTangent& x) const { return {p.n, x.cross(p.n)}; }

  TrivTangent<FrameBundle> trivialize(const Point& p, const RawTangent& x) const {
    return {p, push_forward(p, x), connection(p, x)};
  }
  RawTangent untrivialize(const TrivTangent<FrameBundle>& t) const {
    return horizontal_lift(t.p, t.v) + fundamental(t.p, t.X);
  }

  /// Omega_p(v, w) = <n, w x v>.
  LieAlgebraElement curvature(const Point& p, const Base::TangentVec& v, const Base::TangentVec& w) const {
    detail::require_close(base_.point_distance(p.n, v.q), "curvature argument over another point");
    detail::require_close(base_.point_distance(p.n, w.q), "curvature argument over another point");
    return {so2(), Eigen::VectorXd::Constant(1, p.n.dot(w.v.cross(v.v)))};
  }
  /// a (v x n) in the core of T*TS^2 over u = (n, v).
  Base::CoreCovector curvature_dual(const Point& p, const Base::TangentVec& u, const DualAlgebraElement& A) const {
    detail::require_close(base_.point_distance(p.n, u.q), "curvature argument over another point");
    return {p.n, A[0] * u.v.cross(p.n)};
  }

  /// Left SO(3) action on frames.
  Point rotate(const Eigen::Matrix3d& R, const Point& p) const {
    return FramePoint{R * p.n, R * p.f1, R * p.f2}.orthonormalized();
  }
  Point act(const Point& p, const Group& g) const {
    const double c = std::cos(g.angle()), s = std::sin(g.angle());
    return FramePoint{p.n, c * p.f1 + s * p.f2, c * p.f2 - s * p.f1}.orthonormalized();
  }
  LieAlgebraElement Ad(const Group& g, const LieAlgebraElement& X) const { return tulczyjew::Ad(g, X); }
  DualAlgebraElement Ad_star(const Group& g, const DualAlgebraElement& A) const { return tulczyjew::Ad_star(g, A); }
  Group inverse(const Group& g) const { return g.inverse(); }
  Group compose(const Group& g, const Group& h) const { return g * h; }

  /// Reference frame over n: f1 = SphereBase::reference_tangent(n).
  static Point reference_frame(const Eigen::Vector3d& n) {
    const Eigen::Vector3d f1 = SphereBase::reference_tangent(n);
    return {n, f1, n.cross(f1)};
  }
  Group canonical_gauge(const Point& p) const {
    const Eigen::Vector3d ref = SphereBase::reference_tangent(p.n);
    return SO2(std::atan2(p.f1.cross(ref).dot(p.n), p.f1.dot(ref)));
  }
  Point flow(const Point& p, const Base::TangentVec& w, const LieAlgebraElement& Y, double t) const {
    return rotate(rodrigues(t * untrivialize({p, w, Y})), p);
  }
  double point_distance(const Point& a, const Point& b) const {
    return (a.matrix() - b.matrix()).lpNorm<Eigen::Infinity>();
  }

 private:
  SphereBase base_;
};

static_assert(PrincipalBundle<FrameBundle>);

}  // namespace tulczyjew
