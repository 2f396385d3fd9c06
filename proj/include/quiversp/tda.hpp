#pragma once

// Persistent homology of filtered simplicial complexes X₀ ⊆ X₁ ⊆ ⋯ ⊆ Xₙ as a
// representation H_k(X₀) → H_k(X₁) → ⋯ → H_k(Xₙ) of the equioriented chain
// with n+1 nodes. Homology is computed exactly over ℚ.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "rational.hpp"
#include "representation.hpp"

namespace quiversp {

struct Simplex {
  /// Vertex ids; kept sorted, which fixes the orientation.
  std::vector<std::string> verts;
  std::size_t level = 0;

  std::size_t dim() const noexcept { return verts.size() - 1; }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < verts.size(); ++i) out += (i ? "," : "") + verts[i];
    return out + "}";
  }
};

class FilteredComplex {
 public:
  /// Validates closure under faces and monotone levels. When `n` is absent
  /// it defaults to the largest level present (0 for an empty complex).
  explicit FilteredComplex(std::vector<Simplex> simplices,
                           std::optional<std::size_t> n = std::nullopt)
      : simplices_(std::move(simplices)) {
    std::size_t top = 0;
    for (auto& s : simplices_) {
      if (s.verts.empty()) throw ValidationError("simplex with no vertices");
      std::sort(s.verts.begin(), s.verts.end());
      if (std::adjacent_find(s.verts.begin(), s.verts.end()) != s.verts.end()) {
        throw ValidationError("simplex " + s.to_string() + " repeats a vertex");
      }
      top = std::max(top, s.level);
    }
    n_ = n.value_or(top);
    if (top > n_) {
      throw ValidationError("simplex level " + std::to_string(top) +
                            " exceeds the number of filtration steps " + std::to_string(n_));
    }

    std::map<std::vector<std::string>, std::size_t> level_of;
    for (const auto& s : simplices_) {
      if (!level_of.emplace(s.verts, s.level).second) {
        throw ValidationError("duplicate simplex " + s.to_string());
      }
    }
    for (const auto& s : simplices_) {
      if (s.verts.size() < 2) continue;
      for (std::size_t drop = 0; drop < s.verts.size(); ++drop) {
        Simplex face{s.verts, 0};
        face.verts.erase(face.verts.begin() + static_cast<std::ptrdiff_t>(drop));
        auto it = level_of.find(face.verts);
        if (it == level_of.end()) {
          throw ValidationError("missing face " + face.to_string() + " of simplex " +
                                s.to_string());
        }
        if (it->second > s.level) {
          throw ValidationError("face " + face.to_string() + " enters at level " +
                                std::to_string(it->second) + " after its coface " +
                                s.to_string() + " at level " + std::to_string(s.level));
        }
      }
    }

    std::sort(simplices_.begin(), simplices_.end(), [](const Simplex& x, const Simplex& y) {
      if (x.level != y.level) return x.level < y.level;
      if (x.verts.size() != y.verts.size()) return x.verts.size() < y.verts.size();
      return x.verts < y.verts;
    });
  }

  std::size_t n() const noexcept { return n_; }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }

  /// k-simplices of X_level in basis order. Because simplices are sorted by
  /// level first, the basis of C_k(X_ℓ) is a prefix of that of C_k(X_{ℓ+1}).
  std::vector<const Simplex*> chain_basis(std::size_t k, std::size_t level) const {
    std::vector<const Simplex*> out;
    for (const auto& s : simplices_) {
      if (s.level <= level && s.dim() == k) out.push_back(&s);
    }
    return out;
  }

  std::size_t chain_dim(std::size_t k, std::size_t level) const {
    return chain_basis(k, level).size();
  }

 private:
  std::vector<Simplex> simplices_;
  std::size_t n_ = 0;
};

/// ∂_k : C_k(X_ℓ) → C_{k−1}(X_ℓ), ∂[v₀…v_k] = Σⱼ (−1)ʲ [v₀…v̂ⱼ…v_k].
inline RationalMatrix boundary_matrix(const FilteredComplex& c, std::size_t k,
                                      std::size_t level) {
  if (k == 0) throw ValidationError("boundary_matrix needs degree k >= 1");
  const auto rows = c.chain_basis(k - 1, level);
  const auto cols = c.chain_basis(k, level);
  std::map<std::vector<std::string>, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]->verts] = r;
  RationalMatrix d(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& verts = cols[j]->verts;
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      auto face = verts;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      d(row_of.at(face), j) = (drop % 2 == 0) ? 1 : -1;
    }
  }
  return d;
}

struct HomologyBasis {
  std::size_t level = 0;
  std::size_t degree = 0;
  /// Cycle representatives in C_k(X_ℓ) coordinates.
  std::vector<std::vector<Rational>> representatives;

  std::size_t betti() const noexcept { return representatives.size(); }
};

namespace detail {

/// Cycles Z_k(X_ℓ) as a list of vectors.
inline std::vector<std::vector<Rational>> cycles(const FilteredComplex& c, std::size_t k,
                                                 std::size_t level) {
  const std::size_t dim = c.chain_dim(k, level);
  if (k == 0) {
    std::vector<std::vector<Rational>> basis(dim, std::vector<Rational>(dim));
    for (std::size_t i = 0; i < dim; ++i) basis[i][i] = 1;
    return basis;
  }
  return null_space(boundary_matrix(c, k, level));
}

}  // namespace detail

/// Representatives of H_k(X_ℓ) = Z_k / B_k: the cycle basis vectors that
/// stay independent after the boundaries, chosen greedily by row reduction
/// of [∂_{k+1} | Z_k].
inline HomologyBasis homology_basis(const FilteredComplex& c, std::size_t k,
                                    std::size_t level) {
  HomologyBasis out{level, k, {}};
  const std::size_t dim = c.chain_dim(k, level);
  const auto z = detail::cycles(c, k, level);
  const RationalMatrix b = boundary_matrix(c, k + 1, level);
  const RationalMatrix stacked = RationalMatrix::hcat(b, RationalMatrix::from_columns(dim, z));
  for (std::size_t p : rref(stacked).pivots) {
    if (p >= b.cols()) out.representatives.push_back(z[p - b.cols()]);
  }
  return out;
}

/// Matrix of H_k(X_ℓ) → H_k(X_{ℓ+1}) in the bases chosen by homology_basis.
inline RationalMatrix induced_map(const FilteredComplex& c, std::size_t k,
                                  std::size_t level) {
  const HomologyBasis from = homology_basis(c, k, level);
  const HomologyBasis to = homology_basis(c, k, level + 1);
  const std::size_t dim = c.chain_dim(k, level + 1);
  const RationalMatrix b = boundary_matrix(c, k + 1, level + 1);

  // Inclusion pads with zeros: C_k(X_ℓ) is a prefix of C_k(X_{ℓ+1}).
  std::vector<std::vector<Rational>> included;
  for (auto v : from.representatives) {
    v.resize(dim);
    included.push_back(std::move(v));
  }
  const RationalMatrix system = RationalMatrix::hcat(
      RationalMatrix::hcat(b, RationalMatrix::from_columns(dim, to.representatives)),
      RationalMatrix::from_columns(dim, included));
  const RowEchelon e = rref(system);

  // Every target representative is a pivot column, and the right-hand sides
  // are consistent, so each coordinate sits on that pivot's row.
  RationalMatrix out(to.betti(), from.betti());
  for (std::size_t j = 0; j < to.betti(); ++j) {
    const std::size_t col = b.cols() + j;
    const auto row = std::find(e.pivots.begin(), e.pivots.end(), col) - e.pivots.begin();
    for (std::size_t i = 0; i < from.betti(); ++i) {
      out(j, i) = e.reduced(static_cast<std::size_t>(row), b.cols() + to.betti() + i);
    }
  }
  return out;
}

/// H_k along the filtration as a representation of the chain 1 → ⋯ → n+1;
/// node ℓ+1 carries H_k(X_ℓ).
inline Representation persistence_representation(const FilteredComplex& c, std::size_t k) {
  const std::size_t nodes = c.n() + 1;
  const Quiver chain = make_chain(nodes);
  std::vector<Eigen::Index> dims;
  for (std::size_t level = 0; level < nodes; ++level) {
    dims.push_back(static_cast<Eigen::Index>(homology_basis(c, k, level).betti()));
  }
  std::vector<Matrix> maps;
  for (std::size_t level = 0; level + 1 < nodes; ++level) {
    maps.push_back(induced_map(c, k, level).to_double());
  }
  return Representation(chain, std::move(dims), std::move(maps));
}

inline IntervalBarcode persistence_barcode(const FilteredComplex& c, std::size_t k,
                                           const RankTolerance& tol = {}) {
  return barcode_interval(persistence_representation(c, k), tol);
}

}  // namespace quiversp
