#pragma once

// Elements of the path algebra kQ over the reals: finite linear
// combinations of paths, multiplied by bilinear extension of concat.

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "quiver.hpp"

namespace quiversp {

/// Coefficients with |c| ≤ this are dropped after every operation.
inline constexpr double kDropTolerance = 1e-12;

/// An algebraic filter c ∈ kQ. Terms are kept in canonical path order so
/// iteration, serialization and equality are deterministic.
class FilterElement {
 public:
  using Terms = std::map<Path, double>;

  /// The zero element of kQ.
  explicit FilterElement(Quiver q) : quiver_(std::move(q)) {}

  FilterElement(Quiver q, const Path& p, double coeff = 1.0)
      : quiver_(std::move(q)) {
    add_term(p, coeff);
    normalize();
  }

  const Quiver& quiver() const noexcept { return quiver_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of `p`, 0 when absent.
  double coeff(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0.0 : it->second;
  }

  /// Accumulates `coeff · p` without cleanup; call normalize() afterwards.
  void add_term(const Path& p, double coeff) {
    if (!(p.quiver() == quiver_)) throw QuiverMismatch("FilterElement::add_term");
    terms_[p] += coeff;
  }

  void normalize() {
    std::erase_if(terms_, [](const auto& kv) {
      return std::abs(kv.second) <= kDropTolerance;
    });
  }

  friend bool operator==(const FilterElement& x, const FilterElement& y) {
    return x.quiver_ == y.quiver_ && x.terms_ == y.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [p, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += std::to_string(c) + "*" + p.to_string();
    }
    return out;
  }

 private:
  Quiver quiver_;
  Terms terms_;
};

/// The unit 1 = Σᵢ eᵢ.
inline FilterElement unit(const Quiver& q) {
  FilterElement out(q);
  for (std::size_t i = 0; i < q.node_count(); ++i) {
    out.add_term(Path::trivial(q, i), 1.0);
  }
  return out;
}

/// β·b + α·a.
inline FilterElement add(const FilterElement& b, const FilterElement& a,
                         double beta = 1.0, double alpha = 1.0) {
  if (!(b.quiver() == a.quiver())) throw QuiverMismatch("add");
  FilterElement out(b.quiver());
  for (const auto& [p, c] : b.terms()) out.add_term(p, beta * c);
  for (const auto& [p, c] : a.terms()) out.add_term(p, alpha * c);
  out.normalize();
  return out;
}

inline FilterElement scale(const FilterElement& a, double alpha) {
  FilterElement out(a.quiver());
  for (const auto& [p, c] : a.terms()) out.add_term(p, alpha * c);
  out.normalize();
  return out;
}

/// The product b·a ("apply a, then b").
inline FilterElement multiply(const FilterElement& b, const FilterElement& a) {
  if (!(b.quiver() == a.quiver())) throw QuiverMismatch("multiply");
  FilterElement out(b.quiver());
  for (const auto& [pb, cb] : b.terms()) {
    for (const auto& [pa, ca] : a.terms()) {
      if (auto p = concat(pb, pa)) out.add_term(*p, cb * ca);
    }
  }
  out.normalize();
  return out;
}

inline FilterElement operator+(const FilterElement& x, const FilterElement& y) {
  return add(x, y);
}
inline FilterElement operator-(const FilterElement& x, const FilterElement& y) {
  return add(x, y, 1.0, -1.0);
}
inline FilterElement operator*(const FilterElement& x, const FilterElement& y) {
  return multiply(x, y);
}
inline FilterElement operator*(double alpha, const FilterElement& x) {
  return scale(x, alpha);
}

}  // namespace quiversp
