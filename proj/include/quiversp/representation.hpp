#pragma once

// Quiver representations, signals on them, and the action ρ of the path
// algebra: y = ρ(c)x.
//
// Conventions: the matrix attached to arrow a acts on column vectors and has
// shape dims[h(a)] × dims[t(a)]. The flattened total space M = ⊕ᵢ Vᵢ stacks
// node blocks in quiver node order.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "path_algebra.hpp"
#include "quiver.hpp"

namespace quiversp {

class Representation {
 public:
  /// The zero representation of `q`.
  explicit Representation(Quiver q)
      : Representation(q, std::vector<Eigen::Index>(q.node_count(), 0)) {}

  /// All arrow maps zero.
  Representation(Quiver q, std::vector<Eigen::Index> dims)
      : quiver_(std::move(q)), dims_(std::move(dims)) {
    check_dims();
    maps_.reserve(quiver_.arrow_count());
    for (std::size_t a = 0; a < quiver_.arrow_count(); ++a) {
      maps_.push_back(Matrix::Zero(dims_[quiver_.head(a)], dims_[quiver_.tail(a)]));
    }
  }

  /// Dims indexed by node position, maps indexed by arrow position.
  Representation(Quiver q, std::vector<Eigen::Index> dims, std::vector<Matrix> maps)
      : quiver_(std::move(q)), dims_(std::move(dims)), maps_(std::move(maps)) {
    check_dims();
    if (maps_.size() != quiver_.arrow_count()) {
      throw ValidationError("expected " + std::to_string(quiver_.arrow_count()) +
                            " arrow matrices, got " + std::to_string(maps_.size()));
    }
    for (std::size_t a = 0; a < maps_.size(); ++a) check_map(a);
  }

  /// Dims and maps keyed by node / arrow id.
  Representation(Quiver q, const std::map<std::string, Eigen::Index>& dims,
                 const std::map<std::string, Matrix>& maps)
      : quiver_(std::move(q)) {
    dims_.assign(quiver_.node_count(), -1);
    for (const auto& [id, d] : dims) dims_[quiver_.node_index(id)] = d;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (dims_[i] < 0 && !dims.contains(quiver_.node_id(i))) {
        throw ValidationError("missing dimension for node '" + quiver_.node_id(i) + "'");
      }
    }
    check_dims();
    for (const auto& [id, m] : maps) quiver_.arrow_index(id);
    maps_.reserve(quiver_.arrow_count());
    for (std::size_t a = 0; a < quiver_.arrow_count(); ++a) {
      auto it = maps.find(quiver_.arrow(a).id);
      if (it == maps.end()) {
        throw ValidationError("missing matrix for arrow '" + quiver_.arrow(a).id + "'");
      }
      maps_.push_back(it->second);
      check_map(a);
    }
  }

  const Quiver& quiver() const noexcept { return quiver_; }
  const std::vector<Eigen::Index>& dims() const noexcept { return dims_; }
  Eigen::Index dim(std::size_t node) const { return dims_.at(node); }
  Eigen::Index dim(const std::string& node) const { return dims_.at(quiver_.node_index(node)); }

  const std::vector<Matrix>& maps() const noexcept { return maps_; }
  const Matrix& map(std::size_t arrow) const { return maps_.at(arrow); }
  const Matrix& map(const std::string& arrow) const {
    return maps_.at(quiver_.arrow_index(arrow));
  }

  /// dim M = Σᵢ dim Vᵢ.
  Eigen::Index total_dim() const {
    Eigen::Index n = 0;
    for (auto d : dims_) n += d;
    return n;
  }

  /// Offset of node block `i` in the flattened total space.
  std::vector<Eigen::Index> offsets() const {
    std::vector<Eigen::Index> off(dims_.size() + 1, 0);
    for (std::size_t i = 0; i < dims_.size(); ++i) off[i + 1] = off[i] + dims_[i];
    return off;
  }

  bool is_zero() const { return total_dim() == 0; }

 private:
  void check_dims() const {
    if (dims_.size() != quiver_.node_count()) {
      throw ValidationError("expected " + std::to_string(quiver_.node_count()) +
                            " node dimensions, got " + std::to_string(dims_.size()));
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (dims_[i] < 0) {
        throw ValidationError("negative dimension at node '" + quiver_.node_id(i) + "'");
      }
    }
  }

  void check_map(std::size_t a) const {
    const Eigen::Index rows = dims_[quiver_.head(a)];
    const Eigen::Index cols = dims_[quiver_.tail(a)];
    const Matrix& m = maps_[a];
    if (m.rows() != rows || m.cols() != cols) {
      throw ValidationError("matrix for arrow '" + quiver_.arrow(a).id + "' has shape " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            ", expected " + std::to_string(rows) + "x" +
                            std::to_string(cols));
    }
  }

  Quiver quiver_;
  std::vector<Eigen::Index> dims_;
  std::vector<Matrix> maps_;
};

/// x ∈ ⊕ᵢ Vᵢ, one block per node (in node order).
class QuiverSignal {
 public:
  /// Zero signal on `rep`.
  explicit QuiverSignal(const Representation& rep) : quiver_(rep.quiver()) {
    for (auto d : rep.dims()) blocks_.push_back(Vector::Zero(d));
  }

  QuiverSignal(const Representation& rep, std::vector<Vector> blocks)
      : quiver_(rep.quiver()), blocks_(std::move(blocks)) {
    check_against(rep);
  }

  /// Splits a flattened vector of length dim M into node blocks.
  static QuiverSignal unflatten(const Representation& rep, const Vector& flat) {
    if (flat.size() != rep.total_dim()) {
      throw ValidationError("flattened signal has length " + std::to_string(flat.size()) +
                            ", expected " + std::to_string(rep.total_dim()));
    }
    std::vector<Vector> blocks;
    const auto off = rep.offsets();
    for (std::size_t i = 0; i < rep.dims().size(); ++i) {
      blocks.push_back(flat.segment(off[i], rep.dim(i)));
    }
    return QuiverSignal(rep, std::move(blocks));
  }

  const Quiver& quiver() const noexcept { return quiver_; }
  const std::vector<Vector>& blocks() const noexcept { return blocks_; }
  const Vector& block(std::size_t node) const { return blocks_.at(node); }
  const Vector& block(const std::string& node) const {
    return blocks_.at(quiver_.node_index(node));
  }
  Vector& block(std::size_t node) { return blocks_.at(node); }

  Vector flatten() const {
    Eigen::Index n = 0;
    for (const auto& b : blocks_) n += b.size();
    Vector out(n);
    Eigen::Index off = 0;
    for (const auto& b : blocks_) {
      out.segment(off, b.size()) = b;
      off += b.size();
    }
    return out;
  }

  /// Throws unless block sizes match `rep`'s dimensions.
  void check_against(const Representation& rep) const {
    if (!(quiver_ == rep.quiver())) throw QuiverMismatch("signal");
    if (blocks_.size() != rep.dims().size()) {
      throw ValidationError("signal has " + std::to_string(blocks_.size()) +
                            " blocks, expected " + std::to_string(rep.dims().size()));
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i].size() != rep.dim(i)) {
        throw ValidationError("signal block at node '" + quiver_.node_id(i) +
                              "' has length " + std::to_string(blocks_[i].size()) +
                              ", expected " + std::to_string(rep.dim(i)));
      }
    }
  }

 private:
  Quiver quiver_;
  std::vector<Vector> blocks_;
};

/// ρ(p) materialized on the flattened total space. Its only nonzero block
/// sits at block-row h(p), block-column t(p).
struct ShiftMatrix {
  Matrix matrix;
  std::vector<Eigen::Index> offsets;
};

/// π(p) = π(a_ℓ)⋯π(a₁); the identity of size dims[i] for eᵢ.
inline Matrix eval_path(const Representation& rep, const Path& p) {
  if (!(p.quiver() == rep.quiver())) throw QuiverMismatch("eval_path");
  if (p.is_trivial()) {
    const auto d = rep.dim(p.tail());
    return Matrix::Identity(d, d);
  }
  Matrix out = rep.map(p.arrows().front());
  for (std::size_t k = 1; k < p.length(); ++k) out = rep.map(p.arrows()[k]) * out;
  return out;
}

/// y = ρ(c)x = Σ_p c_p·ρ(p)x, where ρ(p)x is zero except at block h(p), which
/// receives π(p)·x(t(p)).
inline QuiverSignal apply_filter(const Representation& rep, const FilterElement& c,
                                 const QuiverSignal& x) {
  if (!(c.quiver() == rep.quiver())) throw QuiverMismatch("apply_filter");
  x.check_against(rep);
  QuiverSignal y(rep);
  for (const auto& [p, coeff] : c.terms()) {
    y.block(p.head()) += coeff * (eval_path(rep, p) * x.block(p.tail()));
  }
  return y;
}

/// The shift operator ρ(p).
inline ShiftMatrix shift_operator(const Representation& rep, const Path& p) {
  if (!(p.quiver() == rep.quiver())) throw QuiverMismatch("shift_operator");
  ShiftMatrix out{Matrix::Zero(rep.total_dim(), rep.total_dim()), rep.offsets()};
  const auto& off = out.offsets;
  const Matrix block = eval_path(rep, p);
  out.matrix.block(off[p.head()], off[p.tail()], block.rows(), block.cols()) = block;
  return out;
}

/// The quiver filter ρ(c) = Σ_p c_p ρ(p) as a dense matrix.
inline Matrix filter_matrix(const Representation& rep, const FilterElement& c) {
  if (!(c.quiver() == rep.quiver())) throw QuiverMismatch("filter_matrix");
  Matrix out = Matrix::Zero(rep.total_dim(), rep.total_dim());
  const auto off = rep.offsets();
  for (const auto& [p, coeff] : c.terms()) {
    const Matrix block = eval_path(rep, p);
    out.block(off[p.head()], off[p.tail()], block.rows(), block.cols()) += coeff * block;
  }
  return out;
}

/// (π₁ ⊕ π₂)(i) = π₁(i) ⊕ π₂(i), arrow maps block-diagonal.
inline Representation direct_sum(const Representation& r1, const Representation& r2) {
  if (!(r1.quiver() == r2.quiver())) throw QuiverMismatch("direct_sum");
  std::vector<Eigen::Index> dims(r1.dims().size());
  for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = r1.dim(i) + r2.dim(i);
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < r1.maps().size(); ++a) {
    maps.push_back(block_diag(r1.map(a), r2.map(a)));
  }
  return Representation(r1.quiver(), std::move(dims), std::move(maps));
}

/// Base change by invertible per-node matrices P: arrow maps become
/// P_{h(a)}·π(a)·P_{t(a)}⁻¹. The result is isomorphic to `rep` via P.
///
/// The overload taking `p_inverse` uses the given inverses as-is, which keeps
/// integer unimodular changes of basis exact.
inline Representation change_basis(const Representation& rep, const std::vector<Matrix>& p,
                                   const std::vector<Matrix>& p_inverse) {
  if (p.size() != rep.dims().size() || p_inverse.size() != rep.dims().size()) {
    throw ValidationError("change_basis needs one matrix per node");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto d = rep.dim(i);
    if (p[i].rows() != d || p[i].cols() != d || p_inverse[i].rows() != d ||
        p_inverse[i].cols() != d) {
      throw ValidationError("change_basis matrix at node '" + rep.quiver().node_id(i) +
                            "' has the wrong shape");
    }
  }
  const Quiver& q = rep.quiver();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    maps.push_back(p[q.head(a)] * rep.map(a) * p_inverse[q.tail(a)]);
  }
  return Representation(q, rep.dims(), std::move(maps));
}

inline Representation change_basis(const Representation& rep, const std::vector<Matrix>& p) {
  std::vector<Matrix> inverses;
  for (const auto& m : p) {
    inverses.push_back(m.rows() == m.cols() && m.size() != 0 ? Matrix(m.inverse()) : m);
  }
  return change_basis(rep, p, inverses);
}

}  // namespace quiversp
