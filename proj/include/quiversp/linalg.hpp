#pragma once

// Dense numerical linear algebra shared by the representation-level code.

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace quiversp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Threshold below which a singular value counts as zero.
///
/// The default is the usual convention σ ≤ max(rows, cols)·ε·σ_max. Relative
/// replaces max(rows, cols)·ε by a caller-chosen factor; Absolute compares
/// against a fixed value.
class RankTolerance {
 public:
  enum class Kind { Default, Relative, Absolute };

  RankTolerance() = default;
  static RankTolerance relative(double factor) { return {Kind::Relative, factor}; }
  static RankTolerance absolute(double value) { return {Kind::Absolute, value}; }

  Kind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

  double threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) const {
    switch (kind_) {
      case Kind::Absolute:
        return value_;
      case Kind::Relative:
        return value_ * sigma_max;
      case Kind::Default:
        break;
    }
    return static_cast<double>(std::max(rows, cols)) *
           std::numeric_limits<double>::epsilon() * sigma_max;
  }

 private:
  RankTolerance(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_ = Kind::Default;
  double value_ = 0.0;
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector(0);
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

inline Eigen::Index numerical_rank(const Matrix& m, const RankTolerance& tol = {}) {
  if (m.size() == 0) return 0;
  const Vector s = singular_values(m);
  const double cut = tol.threshold(m.rows(), m.cols(), s(0));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

/// Orthonormal basis (as columns) of the numerical null space of `m`.
inline Matrix null_space(const Matrix& m, const RankTolerance& tol = {}) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cut = tol.threshold(m.rows(), m.cols(), s(0));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return svd.matrixV().rightCols(n - r);
}

/// The `k` right singular vectors of `m` with the smallest singular values.
inline Matrix smallest_right_singular_vectors(const Matrix& m, Eigen::Index k) {
  const Eigen::Index n = m.cols();
  if (k == 0) return Matrix(n, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n).leftCols(k);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(k);
}

/// Square matrix with all singular values above the rank tolerance.
inline bool is_invertible(const Matrix& m, const RankTolerance& tol = {}) {
  if (m.rows() != m.cols()) return false;
  return numerical_rank(m, tol) == m.rows();
}

/// Block-diagonal [a 0; 0 b].
inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace quiversp
