#pragma once

// Directed multigraphs (loops and parallel arrows allowed) and their paths.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace quiversp {

struct Arrow {
  std::string id;
  std::string tail;
  std::string head;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A quiver Q = (Q₀, Q₁, h, t). Nodes and arrows are addressed either by
/// their string id or by their position in the construction order; the
/// construction order drives every deterministic enumeration.
///
/// Quiver is a cheap-to-copy immutable handle.
class Quiver {
 public:
  Quiver() : Quiver(std::vector<std::string>{}, std::vector<Arrow>{}) {}

  Quiver(std::vector<std::string> nodes, std::vector<Arrow> arrows) {
    auto impl = std::make_shared<Impl>();
    impl->nodes = std::move(nodes);
    impl->arrows = std::move(arrows);
    for (std::size_t i = 0; i < impl->nodes.size(); ++i) {
      if (!impl->node_index.emplace(impl->nodes[i], i).second) {
        throw ValidationError("duplicate node id '" + impl->nodes[i] + "'");
      }
    }
    impl->tails.reserve(impl->arrows.size());
    impl->heads.reserve(impl->arrows.size());
    for (std::size_t a = 0; a < impl->arrows.size(); ++a) {
      const Arrow& arrow = impl->arrows[a];
      if (!impl->arrow_index.emplace(arrow.id, a).second) {
        throw ValidationError("duplicate arrow id '" + arrow.id + "'");
      }
      auto t = impl->node_index.find(arrow.tail);
      auto h = impl->node_index.find(arrow.head);
      if (t == impl->node_index.end()) {
        throw ValidationError("arrow '" + arrow.id + "' has tail '" +
                              arrow.tail + "' which is not a node");
      }
      if (h == impl->node_index.end()) {
        throw ValidationError("arrow '" + arrow.id + "' has head '" +
                              arrow.head + "' which is not a node");
      }
      impl->tails.push_back(t->second);
      impl->heads.push_back(h->second);
    }
    impl_ = std::move(impl);
  }

  std::size_t node_count() const noexcept { return impl_->nodes.size(); }
  std::size_t arrow_count() const noexcept { return impl_->arrows.size(); }

  const std::vector<std::string>& nodes() const noexcept {
    return impl_->nodes;
  }
  const std::vector<Arrow>& arrows() const noexcept { return impl_->arrows; }

  const std::string& node_id(std::size_t i) const { return impl_->nodes.at(i); }
  const Arrow& arrow(std::size_t a) const { return impl_->arrows.at(a); }

  /// Node index of the tail t(a) / head h(a) of arrow `a`.
  std::size_t tail(std::size_t a) const { return impl_->tails.at(a); }
  std::size_t head(std::size_t a) const { return impl_->heads.at(a); }

  std::optional<std::size_t> find_node(const std::string& id) const {
    auto it = impl_->node_index.find(id);
    if (it == impl_->node_index.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_arrow(const std::string& id) const {
    auto it = impl_->arrow_index.find(id);
    if (it == impl_->arrow_index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t node_index(const std::string& id) const {
    if (auto i = find_node(id)) return *i;
    throw ValidationError("unknown node id '" + id + "'");
  }
  std::size_t arrow_index(const std::string& id) const {
    if (auto a = find_arrow(id)) return *a;
    throw ValidationError("unknown arrow id '" + id + "'");
  }

  /// Structural equality; handles to the same data compare equal cheaply.
  friend bool operator==(const Quiver& x, const Quiver& y) {
    if (x.impl_ == y.impl_) return true;
    return x.impl_->nodes == y.impl_->nodes && x.impl_->arrows == y.impl_->arrows;
  }

 private:
  struct Impl {
    std::vector<std::string> nodes;
    std::vector<Arrow> arrows;
    std::vector<std::size_t> tails;
    std::vector<std::size_t> heads;
    std::unordered_map<std::string, std::size_t> node_index;
    std::unordered_map<std::string, std::size_t> arrow_index;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Equioriented chain 1 → 2 → ⋯ → n with arrows named "a{i}_{i+1}".
inline Quiver make_chain(std::size_t n) {
  std::vector<std::string> nodes;
  std::vector<Arrow> arrows;
  for (std::size_t i = 1; i <= n; ++i) nodes.push_back(std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) {
    arrows.push_back({"a" + std::to_string(i) + "_" + std::to_string(i + 1),
                      std::to_string(i), std::to_string(i + 1)});
  }
  return Quiver(std::move(nodes), std::move(arrows));
}

/// A path a_ℓ⋯a₁ in a quiver. Arrows are stored in application order,
/// i.e. `arrows()[0]` is a₁, the first arrow traversed. A path of length 0
/// is the trivial path eᵢ at its base node.
class Path {
 public:
  static Path trivial(const Quiver& q, std::size_t node) {
    if (node >= q.node_count()) {
      throw ValidationError("trivial path at out-of-range node index");
    }
    return Path(q, {}, node);
  }
  static Path trivial(const Quiver& q, const std::string& node) {
    return trivial(q, q.node_index(node));
  }

  /// Builds a path from arrow indices in application order (a₁ first).
  static Path from_arrows(const Quiver& q, std::vector<std::size_t> arrows) {
    if (arrows.empty()) {
      throw ValidationError("empty arrow list; use Path::trivial");
    }
    for (std::size_t a : arrows) {
      if (a >= q.arrow_count()) {
        throw ValidationError("arrow index out of range");
      }
    }
    for (std::size_t i = 1; i < arrows.size(); ++i) {
      if (q.tail(arrows[i]) != q.head(arrows[i - 1])) {
        throw ValidationError("arrows '" + q.arrow(arrows[i - 1]).id +
                              "' then '" + q.arrow(arrows[i]).id +
                              "' do not compose");
      }
    }
    const std::size_t base = q.tail(arrows.front());
    return Path(q, std::move(arrows), base);
  }

  /// Builds a path from arrow ids in application order (a₁ first).
  static Path from_ids(const Quiver& q, const std::vector<std::string>& ids) {
    std::vector<std::size_t> arrows;
    arrows.reserve(ids.size());
    for (const auto& id : ids) arrows.push_back(q.arrow_index(id));
    return from_arrows(q, std::move(arrows));
  }

  static Path arrow(const Quiver& q, const std::string& id) {
    return from_ids(q, {id});
  }

  const Quiver& quiver() const noexcept { return quiver_; }
  const std::vector<std::size_t>& arrows() const noexcept { return arrows_; }
  std::size_t length() const noexcept { return arrows_.size(); }
  bool is_trivial() const noexcept { return arrows_.empty(); }

  std::size_t tail() const noexcept { return base_; }
  std::size_t head() const {
    return arrows_.empty() ? base_ : quiver_.head(arrows_.back());
  }

  std::vector<std::string> arrow_ids() const {
    std::vector<std::string> ids;
    ids.reserve(arrows_.size());
    for (std::size_t a : arrows_) ids.push_back(quiver_.arrow(a).id);
    return ids;
  }

  /// Human-readable form in the algebraic right-to-left order, e.g.
  /// "a51*a35"; trivial paths print as "e[3]".
  std::string to_string() const {
    if (arrows_.empty()) return "e[" + quiver_.node_id(base_) + "]";
    std::string out;
    for (auto it = arrows_.rbegin(); it != arrows_.rend(); ++it) {
      if (!out.empty()) out += '*';
      out += quiver_.arrow(*it).id;
    }
    return out;
  }

  friend bool operator==(const Path& x, const Path& y) {
    return x.base_ == y.base_ && x.arrows_ == y.arrows_ && x.quiver_ == y.quiver_;
  }

  /// Canonical order: by length, then lexicographic on arrow positions in
  /// application order; trivial paths by node position.
  friend bool operator<(const Path& x, const Path& y) {
    if (x.length() != y.length()) return x.length() < y.length();
    if (x.arrows_.empty()) return x.base_ < y.base_;
    return x.arrows_ < y.arrows_;
  }

 private:
  Path(Quiver q, std::vector<std::size_t> arrows, std::size_t base)
      : quiver_(std::move(q)), arrows_(std::move(arrows)), base_(base) {}

  Quiver quiver_;
  std::vector<std::size_t> arrows_;
  std::size_t base_;
};

/// Product `later · earlier` in the path algebra basis. Returns the
/// concatenated path when t(later) = h(earlier) and std::nullopt (the zero
/// element) otherwise.
inline std::optional<Path> concat(const Path& later, const Path& earlier) {
  if (!(later.quiver() == earlier.quiver())) throw QuiverMismatch("concat");
  if (later.tail() != earlier.head()) return std::nullopt;
  if (later.is_trivial()) return earlier;
  if (earlier.is_trivial()) return later;
  std::vector<std::size_t> arrows = earlier.arrows();
  arrows.insert(arrows.end(), later.arrows().begin(), later.arrows().end());
  return Path::from_arrows(later.quiver(), std::move(arrows));
}

/// All paths of length 0..max_len in canonical order.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len) {
  std::vector<Path> out;
  for (std::size_t i = 0; i < q.node_count(); ++i) out.push_back(Path::trivial(q, i));
  if (max_len == 0) return out;

  std::vector<Path> frontier;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    frontier.push_back(Path::from_arrows(q, {a}));
  }
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    if (len == max_len) break;
    std::vector<Path> next;
    for (const Path& p : frontier) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.tail(a) != p.head()) continue;
        auto arrows = p.arrows();
        arrows.push_back(a);
        next.push_back(Path::from_arrows(q, std::move(arrows)));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// True iff Q has no directed cycle. Loops count as cycles.
inline bool is_acyclic(const Quiver& q) {
  // Kahn's algorithm.
  std::vector<std::size_t> indegree(q.node_count(), 0);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) ++indegree[q.head(a)];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < q.node_count(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t i = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      if (q.tail(a) == i && --indegree[q.head(a)] == 0) ready.push_back(q.head(a));
    }
  }
  return removed == q.node_count();
}

/// If Q is an equioriented chain v₁ → v₂ → ⋯ → vₙ, returns the node indices
/// in chain order together with the arrow index leaving each vₖ, k < n.
struct ChainOrder {
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> arrows;
};

inline std::optional<ChainOrder> chain_order(const Quiver& q) {
  const std::size_t n = q.node_count();
  ChainOrder order;
  if (n == 0) return order;
  if (q.arrow_count() != n - 1) return std::nullopt;
  std::vector<std::optional<std::size_t>> out(n), in(n);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t t = q.tail(a), h = q.head(a);
    if (t == h || out[t] || in[h]) return std::nullopt;
    out[t] = a;
    in[h] = a;
  }
  std::optional<std::size_t> source;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in[i]) {
      if (source) return std::nullopt;
      source = i;
    }
  }
  if (!source) return std::nullopt;
  std::size_t cur = *source;
  order.nodes.push_back(cur);
  while (out[cur]) {
    order.arrows.push_back(*out[cur]);
    cur = q.head(*out[cur]);
    order.nodes.push_back(cur);
  }
  if (order.nodes.size() != n) return std::nullopt;
  return order;
}

}  // namespace quiversp
