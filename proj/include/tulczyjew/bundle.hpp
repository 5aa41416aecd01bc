#pragma once

#include <Eigen/Dense>

#include <concepts>
#include <functional>
#include <utility>
#include <vector>

#include "tulczyjew/base.hpp"
#include "tulczyjew/lie.hpp"

namespace tulczyjew {

/// A principal G-bundle P -> M with a principal connection, seen through the
/// trivialisation TP = P x_M TM x g, V -> (p, T pi(V), omega(V)).
///
/// Conventions shared by every model:
///   right action      p.g, written act(p, g)
///   curvature         Omega_p(v, w) = d omega(v^H, w^H), d omega(V, W) = V omega(W) - W omega(V) - omega([V, W])
///   curvature_dual    the core covector c with <c, w> = <A, Omega_p(u, w)>
///   flow(p, w, Y, t)  a curve through p whose velocity trivialises to (w, Y)
///   canonical_gauge   the g with act(p, g) equal to a fixed reference point over pi(p)
template <class B>
concept PrincipalBundle = BaseModel<typename B::Base> &&
    requires(const B& b, const typename B::Point& p, const typename B::Group& g,
             const typename B::Base::TangentVec& v, const LieAlgebraElement& X, const DualAlgebraElement& A,
             double t) {
  { b.base() } -> std::convertible_to<const typename B::Base&>;
  { b.algebra() } -> std::convertible_to<const AlgebraHandle&>;
  { b.project(p) } -> std::convertible_to<typename B::Base::Point>;
  { b.curvature(p, v, v) } -> std::same_as<LieAlgebraElement>;
  { b.curvature_dual(p, v, A) } -> std::same_as<typename B::Base::CoreCovector>;
  { b.act(p, g) } -> std::same_as<typename B::Point>;
  { b.Ad(g, X) } -> std::same_as<LieAlgebraElement>;
  { b.Ad_star(g, A) } -> std::same_as<DualAlgebraElement>;
  { b.inverse(g) } -> std::same_as<typename B::Group>;
  { b.compose(g, g) } -> std::same_as<typename B::Group>;
  { b.canonical_gauge(p) } -> std::same_as<typename B::Group>;
  { b.flow(p, v, X, t) } -> std::same_as<typename B::Point>;
  { b.point_distance(p, p) } -> std::convertible_to<double>;
};

/// Element of P x_M TM x g.
template <class B> struct TrivTangent {
  typename B::Point p;
  typename B::Base::TangentVec v;
  LieAlgebraElement X;
};

/// Element of P x_M T*M x g*.
template <class B> struct TrivCotangent {
  typename B::Point p;
  typename B::Base::CotangentVec mu;
  DualAlgebraElement A;
};

/// Group element taking the frame of p1 to the frame of p2 (same fiber).
template <PrincipalBundle B>
typename B::Group relative_gauge(const B& b, const typename B::Point& p1, const typename B::Point& p2) {
  detail::require_close(b.base().point_distance(b.project(p1), b.project(p2)), "points in different fibers");
  return b.compose(b.canonical_gauge(p1), b.inverse(b.canonical_gauge(p2)));
}

/// Core covector of curvature_dual computed from the curvature alone, by pairing
/// against a basis of T_q M. Used as a reference for closed-form implementations.
template <PrincipalBundle B>
typename B::Base::CoreCovector curvature_dual_from_basis(const B& b, const typename B::Point& p,
                                                        const typename B::Base::TangentVec& u,
                                                        const DualAlgebraElement& A) {
  const auto& M = b.base();
  const auto basis = M.tangent_basis(b.project(p));
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) c[i] = pair(A, b.curvature(p, u, basis[i]));
  return M.core_from_components(b.project(p), c);
}

// ============================================================================
// Lie group as a bundle over a point: P = G = SO(3), omega = g^{-1} dg, Omega = 0.

class PointBundle {
 public:
  using Base = PointBase;
  using Point = SO3;
  using Group = SO3;
  /// Tangent vector at g as a 3x3 matrix dg.
  using RawTangent = Eigen::Matrix3d;

  explicit PointBundle(AlgebraHandle alg = so3()) : alg_(std::move(alg)) {
    if (alg_->dim() != 3) throw ContractError("the point bundle is built on a 3-dimensional algebra");
  }

  const Base& base() const { return base_; }
  const AlgebraHandle& algebra() const { return alg_; }
  Base::Point project(const Point&) const { return PointBase::origin(); }

  LieAlgebraElement connection(const Point& g, const RawTangent& dg) const {
    return {alg_, Eigen::VectorXd(vee(g.matrix().transpose() * dg))};
  }
  TrivTangent<PointBundle> trivialize(const Point& g, const RawTangent& dg) const {
    return {g, PointBase::tangent(), connection(g, dg)};
  }
  RawTangent untrivialize(const TrivTangent<PointBundle>& t) const {
    return t.p.matrix() * hat(Eigen::Vector3d(t.X.coeffs()));
  }

  LieAlgebraElement curvature(const Point&, const Base::TangentVec&, const Base::TangentVec&) const {
    return LieAlgebraElement::zero(alg_);
  }
  Base::CoreCovector curvature_dual(const Point&, const Base::TangentVec& u, const DualAlgebraElement&) const {
    return {u.q, PointBase::origin()};
  }

  Point act(const Point& p, const Group& g) const { return p * g; }
  LieAlgebraElement Ad(const Group& g, const LieAlgebraElement& X) const { return tulczyjew::Ad(g, X); }
  DualAlgebraElement Ad_star(const Group& g, const DualAlgebraElement& A) const { return tulczyjew::Ad_star(g, A); }
  Group inverse(const Group& g) const { return g.inverse(); }
  Group compose(const Group& g, const Group& h) const { return g * h; }
  Group canonical_gauge(const Point& p) const { return p.inverse(); }
  Point flow(const Point& p, const Base::TangentVec&, const LieAlgebraElement& Y, double t) const {
    return p * SO3::exp(t * Y);
  }
  double point_distance(const Point& a, const Point& b) const {
    return (a.matrix() - b.matrix()).lpNorm<Eigen::Infinity>();
  }

 private:
  PointBase base_;
  AlgebraHandle alg_;
};

// ============================================================================
// Trivial bundle R^m x SO(3) with a user-supplied gauge potential.
// omega_(q,g)(dq, dg) = Ad_{g^-1}(A(q) dq) + g^{-1} dg.

struct GaugePotential {
  /// A(q) v, linear in v.
  std::function<Eigen::Vector3d(const Eigen::VectorXd& q, const Eigen::VectorXd& v)> potential;
  /// F(q)(v, w) = dA(v, w) + [A v, A w].
  std::function<Eigen::Vector3d(const Eigen::VectorXd& q, const Eigen::VectorXd& v, const Eigen::VectorXd& w)>
      field_strength;

  /// A(q) v = sum_i v_i (b_i + sum_j a_ij q_j), with b_i = b.col(i) and a_ij = a[i].col(j).
  static GaugePotential affine(const Eigen::Matrix3Xd& b, const std::vector<Eigen::Matrix3Xd>& a) {
    GaugePotential g;
    g.potential = [b, a](const Eigen::VectorXd& q, const Eigen::VectorXd& v) {
      Eigen::Vector3d out = Eigen::Vector3d::Zero();
      for (Eigen::Index i = 0; i < v.size(); ++i) out += v[i] * (b.col(i) + a[i] * q);
      return out;
    };
    g.field_strength = [b, a](const Eigen::VectorXd& q, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
      Eigen::Vector3d dA = Eigen::Vector3d::Zero(), Av = Eigen::Vector3d::Zero(), Aw = Eigen::Vector3d::Zero();
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        for (Eigen::Index j = 0; j < v.size(); ++j) dA += (a[j].col(i) - a[i].col(j)) * v[i] * w[j];
        Av += v[i] * (b.col(i) + a[i] * q);
        Aw += w[i] * (b.col(i) + a[i] * q);
      }
      return Eigen::Vector3d(dA + Av.cross(Aw));
    };
    return g;
  }
};

class ProductBundle {
 public:
  using Base = VectorSpaceBase;
  struct Point {
    Eigen::VectorXd q;
    SO3 g;
  };
  using Group = SO3;
  struct RawTangent {
    Eigen::VectorXd dq;
    Eigen::Matrix3d dg;
  };

  ProductBundle(int m, GaugePotential gauge, AlgebraHandle alg = so3())
      : base_(m), gauge_(std::move(gauge)), alg_(std::move(alg)) {
    if (alg_->dim() != 3) throw ContractError("the product bundle is built on a 3-dimensional algebra");
  }

  const Base& base() const { return base_; }
  const AlgebraHandle& algebra() const { return alg_; }
  const GaugePotential& gauge() const { return gauge_; }
  Base::Point project(const Point& p) const { return p.q; }

  LieAlgebraElement connection(const Point& p, const RawTangent& x) const {
    const Eigen::Matrix3d& g = p.g.matrix();
    return {alg_, Eigen::VectorXd(g.transpose() * gauge_.potential(p.q, x.dq) + vee(g.transpose() * x.dg))};
  }
  RawTangent horizontal_lift(const Point& p, const Base::TangentVec& v) const {
    return {v.v, -hat(gauge_.potential(p.q, v.v)) * p.g.matrix()};
  }
  RawTangent fundamental(const Point& p, const LieAlgebraElement& X) const {
    return {Eigen::VectorXd::Zero(base_.dim()), p.g.matrix() * hat(Eigen::Vector3d(X.coeffs()))};
  }
  TrivTangent<ProductBundle> trivialize(const Point& p, const RawTangent& x) const {
    return {p, {p.q, x.dq}, connection(p, x)};
  }
  RawTangent untrivialize(const TrivTangent<ProductBundle>& t) const {
    const RawTangent h = horizontal_lift(t.p, t.v), f = fundamental(t.p, t.X);
    return {h.dq + f.dq, h.dg + f.dg};
  }

  LieAlgebraElement curvature(const Point& p, const Base::TangentVec& v, const Base::TangentVec& w) const {
    detail::require_close(base_.point_distance(p.q, v.q), "curvature argument over another point");
    detail::require_close(base_.point_distance(p.q, w.q), "curvature argument over another point");
    return {alg_, Eigen::VectorXd(p.g.matrix().transpose() * gauge_.field_strength(p.q, v.v, w.v))};
  }
  Base::CoreCovector curvature_dual(const Point& p, const Base::TangentVec& u, const DualAlgebraElement& A) const {
    return curvature_dual_from_basis(*this, p, u, A);
  }

  Point act(const Point& p, const Group& h) const { return {p.q, p.g * h}; }
  LieAlgebraElement Ad(const Group& g, const LieAlgebraElement& X) const { return tulczyjew::Ad(g, X); }
  DualAlgebraElement Ad_star(const Group& g, const DualAlgebraElement& A) const { return tulczyjew::Ad_star(g, A); }
  Group inverse(const Group& g) const { return g.inverse(); }
  Group compose(const Group& g, const Group& h) const { return g * h; }
  Group canonical_gauge(const Point& p) const { return p.g.inverse(); }
  Point flow(const Point& p, const Base::TangentVec& w, const LieAlgebraElement& Y, double t) const {
    const Eigen::Vector3d xi = Eigen::Vector3d(Y.coeffs()) - p.g.matrix().transpose() * gauge_.potential(p.q, w.v);
    return {p.q + t * w.v, p.g * SO3::exp(Eigen::Vector3d(t * xi))};
  }
  double point_distance(const Point& a, const Point& b) const {
    return std::max(base_.point_distance(a.q, b.q), (a.g.matrix() - b.g.matrix()).lpNorm<Eigen::Infinity>());
  }

 private:
  VectorSpaceBase base_;
  GaugePotential gauge_;
  AlgebraHandle alg_;
};

static_assert(PrincipalBundle<PointBundle>);
static_assert(PrincipalBundle<ProductBundle>);

}  // namespace tulczyjew
