#pragma once

#include <Eigen/Dense>

#include "tulczyjew/base.hpp"
#include "tulczyjew/sphere.hpp"

namespace tulczyjew {

/// One chart of the stereographic atlas on S^2.
/// North chart (projection from (0,0,1)): q = (n1, n2) / (1 - n3).
/// South chart (projection from (0,0,-1)): q = (n1, n2) / (1 + n3).
/// Objects are converted into the flat model VectorSpaceBase(2) by pushing
/// vectors forward and pulling covectors back.
class StereographicChart {
 public:
  using E = SphereBase;
  using C = VectorSpaceBase;
  using V2 = Eigen::Vector2d;
  using V3 = Eigen::Vector3d;

  enum Pole { North = 1, South = -1 };
  explicit StereographicChart(Pole pole) : eps_(pole) {}

  /// The chart whose pole is farther from n.
  static StereographicChart for_point(const V3& n) { return StereographicChart(n.z() <= 0 ? North : South); }

  Pole pole() const { return static_cast<Pole>(eps_); }

  V2 chart(const V3& n) const { return V2(n.x(), n.y()) / (1.0 - eps_ * n.z()); }

  V3 embed(const V2& q) const {
    const double f = 1.0 / (q.squaredNorm() + 1.0);
    return {2 * q.x() * f, 2 * q.y() * f, eps_ * (1.0 - 2 * f)};
  }

  Eigen::Matrix<double, 3, 2> jacobian(const V2& q) const {
    const double f = 1.0 / (q.squaredNorm() + 1.0);
    Eigen::Matrix<double, 3, 2> J;
    for (int i = 0; i < 2; ++i) {
      const double dfi = -2 * q[i] * f * f;
      for (int k = 0; k < 2; ++k) J(k, i) = 2 * (i == k) * f + 2 * q[k] * dfi;
      J(2, i) = -2 * eps_ * dfi;
    }
    return J;
  }

  /// Second derivative D^2 rho(q)[a, b].
  V3 hessian(const V2& q, const V2& a, const V2& b) const {
    const double f = 1.0 / (q.squaredNorm() + 1.0);
    V3 out = V3::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double w = a[i] * b[j];
        if (w == 0.0) continue;
        const double dfi = -2 * q[i] * f * f, dfj = -2 * q[j] * f * f;
        const double dfij = -2 * (i == j) * f * f + 8 * q[i] * q[j] * f * f * f;
        for (int k = 0; k < 2; ++k) out[k] += w * (2 * (i == k) * dfj + 2 * (j == k) * dfi + 2 * q[k] * dfij);
        out[2] += w * (-2 * eps_ * dfij);
      }
    return out;
  }

  // ---- embedded -> chart --------------------------------------------------

  C::Point to_chart(const V3& n) const { return chart(n); }

  C::TangentVec to_chart(const E::TangentVec& x) const {
    const V2 q = chart(x.q);
    return {q, pushback(q, x.v)};
  }
  C::CotangentVec to_chart(const E::CotangentVec& x) const {
    const V2 q = chart(x.q);
    return {q, V2(jacobian(q).transpose() * x.mu)};
  }
  C::SecondTangent to_chart(const E::SecondTangent& x) const {
    const V2 q = chart(x.q);
    const V2 qd = pushback(q, x.v), dq = pushback(q, x.w);
    const V2 dqd = pushback(q, x.u - hessian(q, dq, qd));
    return {q, qd, dq, dqd};
  }
  C::TangentCotangent to_chart(const E::TangentCotangent& x) const {
    const V2 q = chart(x.q);
    const auto J = jacobian(q);
    const V2 dq = pushback(q, x.w);
    V2 dp;
    for (int j = 0; j < 2; ++j) dp[j] = hessian(q, dq, V2::Unit(j)).dot(x.mu) + J.col(j).dot(x.nu);
    return {q, V2(J.transpose() * x.mu), dq, dp};
  }
  C::CotangentTangent to_chart(const E::CotangentTangent& x) const {
    const V2 q = chart(x.q);
    const auto J = jacobian(q);
    const V2 qd = pushback(q, x.v);
    V2 a, b;
    for (int i = 0; i < 2; ++i) {
      a[i] = x.a.dot(J.col(i)) + x.b.dot(hessian(q, V2::Unit(i), qd));
      b[i] = x.b.dot(J.col(i));
    }
    return {q, qd, a, b};
  }
  C::DoubleCotangent to_chart(const E::DoubleCotangent& x) const {
    const V2 q = chart(x.q);
    const auto J = jacobian(q);
    const double s = q.squaredNorm() + 1.0;
    const V2 p = J.transpose() * x.mu;
    const V3 Jp = J * p;
    V2 a, b;
    for (int i = 0; i < 2; ++i) {
      a[i] = x.a.dot(J.col(i)) + x.b.dot(s * q[i] * Jp + 0.25 * s * s * hessian(q, V2::Unit(i), p));
      b[i] = x.b.dot(0.25 * s * s * J.col(i));
    }
    return {q, p, a, b};
  }
  C::CoreCovector to_chart(const E::CoreCovector& x) const {
    const V2 q = chart(x.q);
    return {q, V2(jacobian(q).transpose() * x.c)};
  }

  // ---- chart -> embedded (vectors and primal objects) ---------------------

  E::TangentVec to_embedded(const C::TangentVec& x) const {
    const V2 q = x.q;
    return {embed(q), jacobian(q) * V2(x.v)};
  }
  E::CotangentVec to_embedded(const C::CotangentVec& x) const {
    const V2 q = x.q;
    const double s = q.squaredNorm() + 1.0;
    return {embed(q), 0.25 * s * s * jacobian(q) * V2(x.mu)};
  }
  E::SecondTangent to_embedded(const C::SecondTangent& x) const {
    const V2 q = x.q, qd = x.v, dq = x.w, dqd = x.u;
    const auto J = jacobian(q);
    return {embed(q), J * qd, J * dq, hessian(q, dq, qd) + J * dqd};
  }
  E::TangentCotangent to_embedded(const C::TangentCotangent& x) const {
    const V2 q = x.q, p = x.mu, dq = x.w, dp = x.nu;
    const auto J = jacobian(q);
    const double s = q.squaredNorm() + 1.0;
    const V3 nu = s * q.dot(dq) * (J * p) + 0.25 * s * s * (hessian(q, dq, p) + J * dp);
    return {embed(q), 0.25 * s * s * J * p, J * dq, nu};
  }

 private:
  // G^{-1} J^T x with G = J^T J = (4 / s^2) I
  V2 pushback(const V2& q, const V3& x) const {
    const double s = q.squaredNorm() + 1.0;
    return 0.25 * s * s * jacobian(q).transpose() * x;
  }
  int eps_;
};

}  // namespace tulczyjew
