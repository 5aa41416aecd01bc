#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tulczyjew/errors.hpp"

namespace tulczyjew {

class LieAlgebra;
using AlgebraHandle = std::shared_ptr<const LieAlgebra>;

/// Finite-dimensional real Lie algebra given by structure constants
/// [X_a, X_b] = sum_k c(a,b,k) X_k over a fixed ordered basis.
class LieAlgebra {
 public:
  /// Validates antisymmetry and the Jacobi identity (tolerance 1e-12).
  static AlgebraHandle create(int dim, std::vector<double> constants, std::vector<std::string> labels = {}) {
    auto alg = unchecked(dim, std::move(constants), std::move(labels));
    if (alg->antisymmetry_defect() > 1e-12) throw ContractError("structure constants are not antisymmetric");
    if (alg->jacobi_defect() > 1e-12) throw ContractError("structure constants violate the Jacobi identity");
    return alg;
  }

  /// No validation. Used to build deliberately broken algebras for fault injection.
  static AlgebraHandle unchecked(int dim, std::vector<double> constants, std::vector<std::string> labels = {}) {
    if (dim < 0) throw ContractError("algebra dimension must be non-negative");
    if (constants.size() != static_cast<size_t>(dim) * dim * dim)
      throw ContractError("structure constant array has wrong size");
    if (labels.empty())
      for (int a = 0; a < dim; ++a) labels.push_back("X" + std::to_string(a + 1));
    return AlgebraHandle(new LieAlgebra(dim, std::move(constants), std::move(labels)));
  }

  int dim() const { return dim_; }
  double c(int a, int b, int k) const { return c_[(a * dim_ + b) * dim_ + k]; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool abelian() const {
    for (double x : c_)
      if (x != 0.0) return false;
    return true;
  }

  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    for (int a = 0; a < dim_; ++a) {
      if (x[a] == 0.0) continue;
      for (int b = 0; b < dim_; ++b) {
        const double xy = x[a] * y[b];
        if (xy == 0.0) continue;
        for (int k = 0; k < dim_; ++k) out[k] += xy * c(a, b, k);
      }
    }
    return out;
  }

  // <ad*_x a, y> = <a, [x, y]>
  Eigen::VectorXd ad_star(const Eigen::VectorXd& x, const Eigen::VectorXd& a) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    for (int b = 0; b < dim_; ++b)
      for (int i = 0; i < dim_; ++i) {
        if (x[i] == 0.0) continue;
        for (int k = 0; k < dim_; ++k) out[b] += x[i] * a[k] * c(i, b, k);
      }
    return out;
  }

  double antisymmetry_defect() const {
    double m = 0;
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int k = 0; k < dim_; ++k) m = std::max(m, std::abs(c(a, b, k) + c(b, a, k)));
    return m;
  }

  double jacobi_defect() const {
    double m = 0;
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int d = 0; d < dim_; ++d) {
          Eigen::VectorXd ea = Eigen::VectorXd::Unit(dim_, a), eb = Eigen::VectorXd::Unit(dim_, b),
                          ed = Eigen::VectorXd::Unit(dim_, d);
          Eigen::VectorXd j = bracket(ea, bracket(eb, ed)) + bracket(eb, bracket(ed, ea)) + bracket(ed, bracket(ea, eb));
          m = std::max(m, j.lpNorm<Eigen::Infinity>());
        }
    return m;
  }

 private:
  LieAlgebra(int dim, std::vector<double> c, std::vector<std::string> labels)
      : dim_(dim), c_(std::move(c)), labels_(std::move(labels)) {}
  int dim_;
  std::vector<double> c_;
  std::vector<std::string> labels_;
};

namespace detail {
inline void require_same(const AlgebraHandle& a, const AlgebraHandle& b) {
  if (a.get() != b.get()) throw ContractError("algebra mismatch");
}
inline void require_finite(const Eigen::VectorXd& v) {
  if (!v.allFinite()) throw ContractError("non-finite algebra coefficients");
}
}  // namespace detail

/// Element of g in coordinates of the algebra's basis.
class LieAlgebraElement {
 public:
  LieAlgebraElement() = default;
  LieAlgebraElement(AlgebraHandle alg, Eigen::VectorXd coeffs) : alg_(std::move(alg)), x_(std::move(coeffs)) {
    if (!alg_) throw ContractError("null algebra handle");
    if (x_.size() != alg_->dim()) throw ContractError("coefficient vector has wrong length");
    detail::require_finite(x_);
  }
  static LieAlgebraElement zero(const AlgebraHandle& alg) { return {alg, Eigen::VectorXd::Zero(alg->dim())}; }

  const AlgebraHandle& algebra() const { return alg_; }
  const Eigen::VectorXd& coeffs() const { return x_; }
  double operator[](int i) const { return x_[i]; }

  LieAlgebraElement operator+(const LieAlgebraElement& o) const {
    detail::require_same(alg_, o.alg_);
    return {alg_, x_ + o.x_};
  }
  LieAlgebraElement operator-(const LieAlgebraElement& o) const {
    detail::require_same(alg_, o.alg_);
    return {alg_, x_ - o.x_};
  }
  LieAlgebraElement operator-() const { return {alg_, -x_}; }
  friend LieAlgebraElement operator*(double s, const LieAlgebraElement& x) { return {x.alg_, s * x.x_}; }

 private:
  AlgebraHandle alg_;
  Eigen::VectorXd x_;
};

/// Element of g* in the dual basis.
class DualAlgebraElement {
 public:
  DualAlgebraElement() = default;
  DualAlgebraElement(AlgebraHandle alg, Eigen::VectorXd coeffs) : alg_(std::move(alg)), a_(std::move(coeffs)) {
    if (!alg_) throw ContractError("null algebra handle");
    if (a_.size() != alg_->dim()) throw ContractError("coefficient vector has wrong length");
    detail::require_finite(a_);
  }
  static DualAlgebraElement zero(const AlgebraHandle& alg) { return {alg, Eigen::VectorXd::Zero(alg->dim())}; }

  const AlgebraHandle& algebra() const { return alg_; }
  const Eigen::VectorXd& coeffs() const { return a_; }
  double operator[](int i) const { return a_[i]; }

  DualAlgebraElement operator+(const DualAlgebraElement& o) const {
    detail::require_same(alg_, o.alg_);
    return {alg_, a_ + o.a_};
  }
  DualAlgebraElement operator-(const DualAlgebraElement& o) const {
    detail::require_same(alg_, o.alg_);
    return {alg_, a_ - o.a_};
  }
  DualAlgebraElement operator-() const { return {alg_, -a_}; }
  friend DualAlgebraElement operator*(double s, const DualAlgebraElement& a) { return {a.alg_, s * a.a_}; }

 private:
  AlgebraHandle alg_;
  Eigen::VectorXd a_;
};

inline double pair(const DualAlgebraElement& a, const LieAlgebraElement& x) {
  detail::require_same(a.algebra(), x.algebra());
  return a.coeffs().dot(x.coeffs());
}

inline LieAlgebraElement bracket(const LieAlgebraElement& x, const LieAlgebraElement& y) {
  detail::require_same(x.algebra(), y.algebra());
  return {x.algebra(), x.algebra()->bracket(x.coeffs(), y.coeffs())};
}

inline DualAlgebraElement ad_star(const LieAlgebraElement& x, const DualAlgebraElement& a) {
  detail::require_same(x.algebra(), a.algebra());
  return {x.algebra(), x.algebra()->ad_star(x.coeffs(), a.coeffs())};
}

/// so(3) with basis hat(e1), hat(e2), hat(e3); the bracket is the cross product.
inline AlgebraHandle so3_constants(double c123 = 1.0) {
  std::vector<double> c(27, 0.0);
  auto at = [&](int a, int b, int k) -> double& { return c[(a * 3 + b) * 3 + k]; };
  at(0, 1, 2) = c123;
  at(1, 0, 2) = -1;
  at(1, 2, 0) = 1;
  at(2, 1, 0) = -1;
  at(2, 0, 1) = 1;
  at(0, 2, 1) = -1;
  return c123 == 1.0 ? LieAlgebra::create(3, c, {"Lx", "Ly", "Lz"}) : LieAlgebra::unchecked(3, c, {"Lx", "Ly", "Lz"});
}

inline const AlgebraHandle& so3() {
  static const AlgebraHandle alg = so3_constants();
  return alg;
}

inline const AlgebraHandle& so2() {
  static const AlgebraHandle alg = LieAlgebra::create(1, {0.0}, {"J"});
  return alg;
}

// ---- so(3) vectors and SO(3) -------------------------------------------------

inline Eigen::Matrix3d hat(const Eigen::Vector3d& x) {
  Eigen::Matrix3d m;
  m << 0, -x.z(), x.y(), x.z(), 0, -x.x(), -x.y(), x.x(), 0;
  return m;
}

inline Eigen::Vector3d vee(const Eigen::Matrix3d& m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

/// Rodrigues formula; Taylor series below |x| < 1e-6.
inline Eigen::Matrix3d rodrigues(const Eigen::Vector3d& x) {
  const double th2 = x.squaredNorm();
  const double th = std::sqrt(th2);
  const Eigen::Matrix3d K = hat(x);
  double a, b;
  if (th < 1e-6) {
    a = 1.0 - th2 / 6.0;
    b = 0.5 - th2 / 24.0;
  } else {
    a = std::sin(th) / th;
    b = (1.0 - std::cos(th)) / th2;
  }
  return Eigen::Matrix3d::Identity() + a * K + b * K * K;
}

/// Rotation matrix (orthogonal, det +1).
class SO3 {
 public:
  SO3() : R_(Eigen::Matrix3d::Identity()) {}
  explicit SO3(const Eigen::Matrix3d& R) : R_(R) {
    if ((R.transpose() * R - Eigen::Matrix3d::Identity()).norm() > 1e-10 || std::abs(R.determinant() - 1.0) > 1e-10)
      throw ContractError("matrix is not in SO(3)");
  }
  static SO3 exp(const Eigen::Vector3d& x) { return SO3(rodrigues(x), 0); }
  static SO3 exp(const LieAlgebraElement& X) {
    if (X.algebra()->dim() != 3) throw ContractError("SO(3) exponential needs a 3-dimensional algebra");
    return exp(Eigen::Vector3d(X.coeffs()));
  }

  const Eigen::Matrix3d& matrix() const { return R_; }
  SO3 inverse() const { return SO3(R_.transpose(), 0); }
  SO3 operator*(const SO3& o) const { return SO3(R_ * o.R_, 0); }
  Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return R_ * v; }

 private:
  SO3(const Eigen::Matrix3d& R, int) : R_(R) {}
  Eigen::Matrix3d R_;
};

inline LieAlgebraElement Ad(const SO3& g, const LieAlgebraElement& X) {
  if (X.algebra()->dim() != 3) throw ContractError("Ad of SO(3) acts on a 3-dimensional algebra");
  return {X.algebra(), Eigen::VectorXd(g.matrix() * Eigen::Vector3d(X.coeffs()))};
}

// <Ad*_g A, X> = <A, Ad_g X>
inline DualAlgebraElement Ad_star(const SO3& g, const DualAlgebraElement& A) {
  if (A.algebra()->dim() != 3) throw ContractError("Ad* of SO(3) acts on a 3-dimensional dual");
  return {A.algebra(), Eigen::VectorXd(g.matrix().transpose() * Eigen::Vector3d(A.coeffs()))};
}

/// Planar rotation by an angle. Abelian, so Ad and Ad* are identities.
class SO2 {
 public:
  SO2() = default;
  explicit SO2(double angle) : th_(angle) {
    if (!std::isfinite(angle)) throw ContractError("non-finite SO(2) angle");
  }
  static SO2 exp(const LieAlgebraElement& x) {
    if (x.algebra()->dim() != 1) throw ContractError("SO(2) exponential needs a 1-dimensional algebra");
    return SO2(x[0]);
  }
  double angle() const { return th_; }
  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d m;
    m << std::cos(th_), -std::sin(th_), std::sin(th_), std::cos(th_);
    return m;
  }
  SO2 inverse() const { return SO2(-th_); }
  SO2 operator*(const SO2& o) const { return SO2(th_ + o.th_); }

 private:
  double th_ = 0.0;
};

inline LieAlgebraElement Ad(const SO2&, const LieAlgebraElement& X) { return X; }
inline DualAlgebraElement Ad_star(const SO2&, const DualAlgebraElement& A) { return A; }

}  // namespace tulczyjew
