#pragma once

// Intertwining maps T: π → ρ, i.e. families {Tᵢ : π(i) → ρ(i)} with
// T_{h(a)}·π(a) = ρ(a)·T_{t(a)} for every arrow a.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "linalg.hpp"
#include "representation.hpp"

namespace quiversp {

/// One block per node, block i of shape target.dims[i] × source.dims[i].
struct Intertwiner {
  std::vector<Matrix> blocks;
};

/// Largest commuting-square defect max_a ‖T_{h(a)}π(a) − ρ(a)T_{t(a)}‖_max.
inline double intertwiner_defect(const Representation& src, const Representation& dst,
                                 const Intertwiner& t) {
  if (!(src.quiver() == dst.quiver())) throw QuiverMismatch("intertwiner_defect");
  const Quiver& q = src.quiver();
  double worst = 0.0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Matrix d = t.blocks[q.head(a)] * src.map(a) - dst.map(a) * t.blocks[q.tail(a)];
    worst = std::max(worst, max_abs(d));
  }
  return worst;
}

/// Checks block shapes and every commuting square within
/// 1e-9·(1 + largest entry among the arrow maps and blocks).
inline bool is_intertwiner(const Representation& src, const Representation& dst,
                           const Intertwiner& t) {
  if (!(src.quiver() == dst.quiver())) throw QuiverMismatch("is_intertwiner");
  if (t.blocks.size() != src.dims().size()) return false;
  double scale = 0.0;
  for (std::size_t i = 0; i < t.blocks.size(); ++i) {
    if (t.blocks[i].rows() != dst.dim(i) || t.blocks[i].cols() != src.dim(i)) return false;
    scale = std::max(scale, max_abs(t.blocks[i]));
  }
  for (const auto& m : src.maps()) scale = std::max(scale, max_abs(m));
  for (const auto& m : dst.maps()) scale = std::max(scale, max_abs(m));
  return intertwiner_defect(src, dst, t) <= 1e-9 * (1.0 + scale);
}

namespace detail {

/// Column offsets of each vectorized Tᵢ (column-major) in the unknown vector.
inline std::vector<Eigen::Index> hom_offsets(const Representation& src,
                                             const Representation& dst) {
  std::vector<Eigen::Index> off(src.dims().size() + 1, 0);
  for (std::size_t i = 0; i < src.dims().size(); ++i) {
    off[i + 1] = off[i] + dst.dim(i) * src.dim(i);
  }
  return off;
}

/// Stacks the linear constraints vec(T_h π(a) − ρ(a) T_t) = 0 over all arrows.
inline Matrix hom_system(const Representation& src, const Representation& dst) {
  const Quiver& q = src.quiver();
  const auto off = hom_offsets(src, dst);
  Eigen::Index rows = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    rows += dst.dim(q.head(a)) * src.dim(q.tail(a));
  }
  Matrix sys = Matrix::Zero(rows, off.back());
  Eigen::Index row0 = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t h = q.head(a), t = q.tail(a);
    const Matrix& pi = src.map(a);
    const Matrix& rho = dst.map(a);
    const Eigen::Index dh = dst.dim(h), dt = dst.dim(t), st = src.dim(t), sh = src.dim(h);
    for (Eigen::Index c = 0; c < st; ++c) {
      for (Eigen::Index r = 0; r < dh; ++r) {
        const Eigen::Index row = row0 + r + c * dh;
        // (T_h π)(r, c) = Σ_k T_h(r, k) π(k, c)
        for (Eigen::Index k = 0; k < sh; ++k) sys(row, off[h] + r + k * dh) += pi(k, c);
        // (ρ T_t)(r, c) = Σ_k ρ(r, k) T_t(k, c)
        for (Eigen::Index k = 0; k < dt; ++k) sys(row, off[t] + k + c * dt) -= rho(r, k);
      }
    }
    row0 += dh * st;
  }
  return sys;
}

inline Intertwiner unvec(const Representation& src, const Representation& dst,
                         const Vector& v) {
  const auto off = hom_offsets(src, dst);
  Intertwiner t;
  for (std::size_t i = 0; i < src.dims().size(); ++i) {
    t.blocks.push_back(
        Eigen::Map<const Matrix>(v.data() + off[i], dst.dim(i), src.dim(i)));
  }
  return t;
}

}  // namespace detail

/// Basis of Hom(src, dst): the numerical null space of the commuting-square
/// system. Basis vectors are orthonormal in the stacked vec(Tᵢ) coordinates.
inline std::vector<Intertwiner> hom_basis(const Representation& src,
                                          const Representation& dst,
                                          const RankTolerance& tol = {}) {
  if (!(src.quiver() == dst.quiver())) throw QuiverMismatch("hom_basis");
  const Matrix ns = null_space(detail::hom_system(src, dst), tol);
  std::vector<Intertwiner> out;
  for (Eigen::Index k = 0; k < ns.cols(); ++k) {
    out.push_back(detail::unvec(src, dst, ns.col(k)));
  }
  return out;
}

/// dim End(rep).
inline std::size_t end_dim(const Representation& rep, const RankTolerance& tol = {}) {
  return hom_basis(rep, rep, tol).size();
}

/// Σₖ coeffs[k]·basis[k].
inline Intertwiner combine(const std::vector<Intertwiner>& basis, const Vector& coeffs,
                           const Representation& src, const Representation& dst) {
  Intertwiner t;
  for (std::size_t i = 0; i < src.dims().size(); ++i) {
    t.blocks.push_back(Matrix::Zero(dst.dim(i), src.dim(i)));
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
      t.blocks[i] += coeffs(static_cast<Eigen::Index>(k)) * basis[k].blocks[i];
    }
  }
  return t;
}

struct IsoResult {
  bool isomorphic = false;
  /// An intertwiner with every block invertible, present iff isomorphic.
  std::optional<Intertwiner> witness;
};

inline constexpr int kDefaultIsoTrials = 8;

/// Randomized isomorphism test. A positive answer is certified by the
/// witness; a negative one means no sampled element of Hom(a, b) was
/// invertible, which for generic coefficients happens only when a ≇ b.
inline IsoResult is_isomorphic(const Representation& a, const Representation& b,
                               int trials = kDefaultIsoTrials, std::uint64_t seed = 0,
                               const RankTolerance& tol = {}) {
  if (!(a.quiver() == b.quiver())) throw QuiverMismatch("is_isomorphic");
  if (a.dims() != b.dims()) return {};
  const auto basis = hom_basis(a, b, tol);
  if (a.is_zero()) return {true, combine(basis, Vector(0), a, b)};
  if (basis.empty()) return {};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < trials; ++trial) {
    Vector coeffs(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) = normal(rng);
    Intertwiner t = combine(basis, coeffs, a, b);
    bool invertible = true;
    for (const auto& block : t.blocks) {
      if (block.size() != 0 && !is_invertible(block, tol)) {
        invertible = false;
        break;
      }
    }
    if (invertible) return {true, std::move(t)};
  }
  return {};
}

}  // namespace quiversp
