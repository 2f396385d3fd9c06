#pragma once

// Decompositions of quiver representations:
//  - interval barcodes of equioriented Aₙ representations,
//  - a randomized splitter into indecomposables for arbitrary quivers,
//  - composition factors and the Fourier map Δ for semisimple representations.

#include <algorithm>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "morphisms.hpp"
#include "representation.hpp"

namespace quiversp {

// ---------------------------------------------------------------------------
// Interval barcodes
// ---------------------------------------------------------------------------

/// Closed interval [a, b] of chain positions, 1 ≤ a ≤ b ≤ n.
struct Interval {
  std::size_t a;
  std::size_t b;

  friend auto operator<=>(const Interval&, const Interval&) = default;
  bool contains(std::size_t i) const noexcept { return a <= i && i <= b; }
};

/// Multiset of interval modules; zero multiplicities are never stored.
struct IntervalBarcode {
  std::size_t n = 0;
  std::map<Interval, std::size_t> bars;

  std::size_t multiplicity(std::size_t a, std::size_t b) const {
    auto it = bars.find({a, b});
    return it == bars.end() ? 0 : it->second;
  }

  /// Σ of multiplicities over intervals containing position i.
  std::size_t dim_at(std::size_t i) const {
    std::size_t d = 0;
    for (const auto& [iv, m] : bars) {
      if (iv.contains(i)) d += m;
    }
    return d;
  }

  friend bool operator==(const IntervalBarcode&, const IntervalBarcode&) = default;
};

/// Chain order of `q` or an UnsupportedQuiver error.
inline ChainOrder require_chain(const Quiver& q) {
  auto order = chain_order(q);
  if (!order) {
    throw UnsupportedQuiver("quiver is not an equioriented chain 1 -> 2 -> ... -> n");
  }
  return *order;
}

/// The interval module [a, b] on an equioriented chain: k at positions a..b,
/// identity maps inside the interval, zero elsewhere.
inline Representation interval_module(const Quiver& chain, std::size_t a, std::size_t b) {
  const ChainOrder order = require_chain(chain);
  const std::size_t n = order.nodes.size();
  if (a < 1 || a > b || b > n) throw ValidationError("interval out of range");
  std::vector<Eigen::Index> dims(n, 0);
  for (std::size_t pos = a; pos <= b; ++pos) dims[order.nodes[pos - 1]] = 1;
  std::vector<Matrix> maps(chain.arrow_count());
  for (std::size_t k = 0; k < order.arrows.size(); ++k) {
    const std::size_t arrow = order.arrows[k];
    const std::size_t from = k + 1, to = k + 2;  // chain positions
    maps[arrow] = Matrix::Zero(dims[chain.head(arrow)], dims[chain.tail(arrow)]);
    if (a <= from && to <= b) maps[arrow](0, 0) = 1.0;
  }
  return Representation(chain, std::move(dims), std::move(maps));
}

/// Barcode of a representation of an equioriented chain, from ranks of
/// composite maps: m[a,b] = rk(a,b) − rk(a−1,b) − rk(a,b+1) + rk(a−1,b+1),
/// with rk(a,a) = dims[a] and out-of-range ranks 0.
inline IntervalBarcode barcode_interval(const Representation& rep,
                                        const RankTolerance& tol = {}) {
  const ChainOrder order = require_chain(rep.quiver());
  const std::size_t n = order.nodes.size();
  IntervalBarcode out;
  out.n = n;
  if (n == 0) return out;

  // rk is indexed by positions 0..n+1 so that out-of-range lookups read 0.
  std::vector<std::vector<long>> rk(n + 2, std::vector<long>(n + 2, 0));
  for (std::size_t a = 1; a <= n; ++a) {
    rk[a][a] = rep.dim(order.nodes[a - 1]);
    Matrix composite = Matrix::Identity(rk[a][a], rk[a][a]);
    for (std::size_t b = a + 1; b <= n; ++b) {
      composite = rep.map(order.arrows[b - 2]) * composite;
      rk[a][b] = numerical_rank(composite, tol);
    }
  }

  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = a; b <= n; ++b) {
      const long m = rk[a][b] - rk[a - 1][b] - rk[a][b + 1] + rk[a - 1][b + 1];
      if (m < 0) {
        throw NumericalError("numerical ranks are inconsistent (negative multiplicity at [" +
                             std::to_string(a) + "," + std::to_string(b) +
                             "]); adjust the rank tolerance");
      }
      if (m > 0) out.bars[{a, b}] = static_cast<std::size_t>(m);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    if (out.dim_at(i) != static_cast<std::size_t>(rk[i][i])) {
      throw NumericalError("barcode does not account for the dimension at position " +
                           std::to_string(i) + "; adjust the rank tolerance");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic splitting into indecomposables
// ---------------------------------------------------------------------------

struct Summand {
  Representation rep;
  /// Per node, the columns spanning this summand inside the input space
  /// (shape input.dims[i] × rep.dims[i]).
  std::vector<Matrix> basis;
  /// No split was found within the round budget and dim End > 1, so the
  /// summand is not certified indecomposable.
  bool unsplit = false;
};

struct SummandList {
  std::vector<Summand> summands;
  /// Set when verification was requested and the stacked summand bases form
  /// an invertible intertwiner from the direct sum onto the input.
  std::optional<bool> verified;
};

struct GenericOptions {
  std::uint64_t seed = 0;
  int max_rounds = 8;
  /// Rank tolerance for End of the input representation.
  RankTolerance tol{};
  /// Rank tolerance for End of derived pieces, whose maps carry rounding
  /// from the eigenspace bases.
  RankTolerance piece_tol = RankTolerance::relative(1e-9);
  /// Eigenvalues closer than this (relative to the spectral radius) share a
  /// cluster.
  double cluster_gap = 1e-6;
  /// A split is accepted only if each arrow maps the candidate subspaces
  /// into themselves up to this relative residual.
  double invariance_tol = 1e-8;
  bool verify = false;
};

namespace detail {

struct Piece {
  Representation rep;
  std::vector<Matrix> basis;
};

/// Groups eigenvalues by single linkage on (Re λ, |Im λ|) so that conjugate
/// pairs always land in the same cluster. Returns one label per eigenvalue.
inline std::vector<std::size_t> cluster_eigenvalues(const std::vector<std::complex<double>>& ev,
                                                    double gap) {
  const std::size_t n = ev.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::complex<double> u(ev[i].real(), std::abs(ev[i].imag()));
      const std::complex<double> v(ev[j].real(), std::abs(ev[j].imag()));
      if (std::abs(u - v) <= gap) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::size_t> relabel;
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = relabel.emplace(find(i), relabel.size());
    labels[i] = it->second;
  }
  return labels;
}

/// Splits `piece` along the generalized eigenspaces of `e`, an endomorphism.
/// Returns std::nullopt when e has a single eigenvalue cluster or when the
/// candidate subspaces fail the invariance or independence checks.
inline std::optional<std::vector<Piece>> split_along(const Representation& rep,
                                                     const Intertwiner& e,
                                                     const GenericOptions& opts) {
  const Quiver& q = rep.quiver();
  const std::size_t nodes = q.node_count();

  std::vector<std::complex<double>> eigenvalues;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (rep.dim(i) == 0) continue;
    Eigen::EigenSolver<Matrix> solver(e.blocks[i], false);
    const auto& vals = solver.eigenvalues();
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
      eigenvalues.push_back(vals(k));
      owner.push_back(i);
    }
  }
  double radius = 0.0;
  for (const auto& v : eigenvalues) radius = std::max(radius, std::abs(v));
  const double gap = opts.cluster_gap * std::max(radius, 1.0);
  const auto labels = cluster_eigenvalues(eigenvalues, gap);
  const std::size_t clusters =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  if (clusters <= 1) return std::nullopt;

  // subspace[c][i]: orthonormal basis of the generalized eigenspace of e_i for
  // the eigenvalues in cluster c, computed as the null space of the real
  // polynomial Π (e_i − λ) over those eigenvalues.
  std::vector<std::vector<Matrix>> subspace(clusters, std::vector<Matrix>(nodes));
  for (std::size_t i = 0; i < nodes; ++i) {
    const Eigen::Index d = rep.dim(i);
    for (std::size_t c = 0; c < clusters; ++c) {
      Matrix poly = Matrix::Identity(d, d);
      Eigen::Index count = 0;
      for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        if (owner[k] != i || labels[k] != c) continue;
        ++count;
        const auto lambda = eigenvalues[k];
        const Matrix& ei = e.blocks[i];
        if (std::abs(lambda.imag()) <= gap) {
          poly = (ei - lambda.real() * Matrix::Identity(d, d)) * poly;
        } else if (lambda.imag() > 0) {
          poly = (ei * ei - 2.0 * lambda.real() * ei +
                  std::norm(lambda) * Matrix::Identity(d, d)) *
                 poly;
        }
      }
      subspace[c][i] = smallest_right_singular_vectors(poly, count);
    }
    if (d == 0) continue;
    Matrix stacked(d, d);
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < clusters; ++c) {
      stacked.middleCols(col, subspace[c][i].cols()) = subspace[c][i];
      col += subspace[c][i].cols();
    }
    if (col != d) return std::nullopt;
    const Vector s = singular_values(stacked);
    if (s(s.size() - 1) < 1e-8 * s(0)) return std::nullopt;
  }

  std::vector<Piece> out;
  for (std::size_t c = 0; c < clusters; ++c) {
    std::vector<Eigen::Index> dims(nodes);
    for (std::size_t i = 0; i < nodes; ++i) dims[i] = subspace[c][i].cols();
    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const Matrix& w_tail = subspace[c][q.tail(a)];
      const Matrix& w_head = subspace[c][q.head(a)];
      const Matrix image = rep.map(a) * w_tail;
      Matrix restricted = w_head.transpose() * image;
      const double residual = max_abs(image - w_head * restricted);
      if (residual > opts.invariance_tol * (1.0 + max_abs(rep.map(a)))) return std::nullopt;
      maps.push_back(std::move(restricted));
    }
    out.push_back({Representation(q, std::move(dims), std::move(maps)), subspace[c]});
  }
  return out;
}

}  // namespace detail

/// Splits `rep` into summands by repeatedly cutting along generalized
/// eigenspaces of random endomorphisms. A summand with dim End = 1 is
/// certified indecomposable; one that resists `max_rounds` random cuts while
/// dim End > 1 is reported with `unsplit` set.
inline SummandList generic_decompose(const Representation& rep,
                                     const GenericOptions& opts = {}) {
  const Quiver& q = rep.quiver();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  SummandList result;

  std::vector<Matrix> identity;
  for (auto d : rep.dims()) identity.push_back(Matrix::Identity(d, d));

  // Depth-first with an explicit stack; children are pushed in reverse so the
  // output order follows the cluster order at each level.
  std::vector<std::pair<detail::Piece, bool>> stack;
  stack.push_back({{rep, identity}, true});
  while (!stack.empty()) {
    auto [piece, top_level] = std::move(stack.back());
    stack.pop_back();
    if (piece.rep.is_zero()) continue;
    const auto end_basis = hom_basis(piece.rep, piece.rep, top_level ? opts.tol : opts.piece_tol);
    if (end_basis.size() <= 1) {
      result.summands.push_back({piece.rep, piece.basis, false});
      continue;
    }
    std::optional<std::vector<detail::Piece>> children;
    for (int round = 0; round < opts.max_rounds && !children; ++round) {
      Vector coeffs(static_cast<Eigen::Index>(end_basis.size()));
      for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) = normal(rng);
      const Intertwiner e = combine(end_basis, coeffs, piece.rep, piece.rep);
      children = detail::split_along(piece.rep, e, opts);
    }
    if (!children) {
      result.summands.push_back({piece.rep, piece.basis, true});
      continue;
    }
    for (auto it = children->rbegin(); it != children->rend(); ++it) {
      for (std::size_t i = 0; i < q.node_count(); ++i) {
        it->basis[i] = piece.basis[i] * it->basis[i];
      }
      stack.push_back({std::move(*it), false});
    }
  }

  if (opts.verify) {
    Representation sum(q);
    Intertwiner t;
    for (std::size_t i = 0; i < q.node_count(); ++i) t.blocks.push_back(Matrix(rep.dim(i), 0));
    for (const auto& s : result.summands) {
      sum = direct_sum(sum, s.rep);
      for (std::size_t i = 0; i < q.node_count(); ++i) {
        Matrix wider(rep.dim(i), t.blocks[i].cols() + s.basis[i].cols());
        wider << t.blocks[i], s.basis[i];
        t.blocks[i] = std::move(wider);
      }
    }
    bool ok = sum.dims() == rep.dims() && is_intertwiner(sum, rep, t);
    for (const auto& block : t.blocks) {
      if (ok && block.size() != 0) {
        const Vector s = singular_values(block);
        ok = s(s.size() - 1) > 1e-8 * s(0);
      }
    }
    result.verified = ok;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Semisimple case: composition factors and the Fourier map Δ
// ---------------------------------------------------------------------------

inline constexpr double kSemisimpleTolerance = 1e-12;

namespace detail {
inline void require_acyclic(const Quiver& q, const char* op) {
  if (!is_acyclic(q)) {
    throw UnsupportedQuiver(std::string(op) +
                            ": quiver has a directed cycle; only acyclic quivers are supported");
  }
}
}  // namespace detail

/// For acyclic quivers, semisimple ⇔ every arrow map vanishes.
inline bool is_semisimple(const Representation& rep) {
  detail::require_acyclic(rep.quiver(), "is_semisimple");
  return std::all_of(rep.maps().begin(), rep.maps().end(),
                     [](const Matrix& m) { return max_abs(m) <= kSemisimpleTolerance; });
}

/// Jordan–Hölder multiplicity of the simple at each node (node order). For an
/// acyclic quiver this is dims[i].
inline std::vector<Eigen::Index> composition_factors(const Representation& rep) {
  detail::require_acyclic(rep.quiver(), "composition_factors");
  return rep.dims();
}

/// x̂ = Δ(x). Simple types are the nodes; type i occurs dims[i] times and its
/// Fourier components are the coordinates of the block x(i).
struct FourierDecomposition {
  std::vector<Eigen::Index> multiplicities;
  std::vector<Vector> components;
};

namespace detail {
inline void require_semisimple(const Representation& rep) {
  detail::require_acyclic(rep.quiver(), "fourier_decompose");
  for (std::size_t a = 0; a < rep.maps().size(); ++a) {
    const double norm = max_abs(rep.map(a));
    if (norm > kSemisimpleTolerance) throw NotSemisimple(rep.quiver().arrow(a).id, norm);
  }
}
}  // namespace detail

inline FourierDecomposition fourier_decompose(const Representation& rep,
                                              const QuiverSignal& x) {
  detail::require_semisimple(rep);
  x.check_against(rep);
  return {rep.dims(), x.blocks()};
}

/// Δ⁻¹.
inline QuiverSignal fourier_inverse(const Representation& rep, const FourierDecomposition& xh) {
  detail::require_semisimple(rep);
  if (xh.multiplicities != rep.dims()) {
    throw ValidationError("Fourier multiplicities do not match the representation");
  }
  return QuiverSignal(rep, xh.components);
}

/// ρ(c) in decomposed coordinates: type i is scaled by the coefficient of eᵢ;
/// paths of positive length act as zero on every simple.
inline FourierDecomposition spectral_apply(const Representation& rep, const FilterElement& c,
                                           const FourierDecomposition& xh) {
  detail::require_semisimple(rep);
  if (!(c.quiver() == rep.quiver())) throw QuiverMismatch("spectral_apply");
  FourierDecomposition out = xh;
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    out.components[i] *= c.coeff(Path::trivial(rep.quiver(), i));
  }
  return out;
}

}  // namespace quiversp
