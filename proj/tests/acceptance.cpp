// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "test_support.hpp"

using namespace quiversp;
using namespace quiversp::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Matrix naive_mul(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

double rel_err(const Vector& got, const Vector& want) {
  const double scale = want.cwiseAbs().maxCoeff();
  return (got - want).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1 -------------------------------------------------------------------------
Outcome filtering_golden() {
  Outcome o;
  const Quiver q = five_node_quiver();
  const FilterElement c = FilterElement(q, Path::from_ids(q, {"a35", "a51"}), 1.0) +
                          FilterElement(q, Path::from_ids(q, {"a34", "a41", "a12"}), 1.0);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const Representation rep = random_representation(q, kFiveNodeDims, rng);
    const QuiverSignal x = random_signal(rep, rng);
    const QuiverSignal y = apply_filter(rep, c, x);
    const Vector y1 = naive_mul(rep.map("a51"), naive_mul(rep.map("a35"), x.block("3")));
    const Vector y2 = naive_mul(
        rep.map("a12"), naive_mul(rep.map("a41"), naive_mul(rep.map("a34"), x.block("3"))));
    worst = std::max({worst, rel_err(y.block("1"), y1), rel_err(y.block("2"), y2)});
    for (const std::string node : {"3", "4", "5"}) {
      o.check((y.block(node).array() == 0.0).all(), "y(" + node + ") not exactly zero");
    }
  }
  o.check(worst <= 1e-12, "relative error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "10 seeds, max relative error " + fmt("%.2g", worst);
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome basic_decomposition() {
  Outcome o;
  Matrix phi = Matrix::Zero(3, 3);
  phi.topLeftCorner(2, 2).setIdentity();
  const Representation rep(make_chain(2), {3, 3}, {phi});
  IntervalBarcode want;
  want.n = 2;
  want.bars = {{{1, 2}, 2}, {{1, 1}, 1}, {{2, 2}, 1}};
  o.check(barcode_interval(rep) == want, "unconjugated barcode");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(100 + seed);
    o.check(barcode_interval(random_unimodular_conjugate(rep, rng)) == want,
            "barcode after integer basis change, seed " + std::to_string(seed));
    o.check(barcode_interval(random_gaussian_conjugate(rep, rng)) == want,
            "barcode after Gaussian basis change, seed " + std::to_string(seed));
  }
  if (o.pass) {
    o.detail = "{[1,2]:2, [1,1]:1, [2,2]:1} for the input and 10 seeds of integer and Gaussian "
               "basis changes";
  }
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome path_algebra_axioms() {
  Outcome o;
  const Quiver q = five_node_quiver();
  const FilterElement one = unit(q);
  const auto paths = enumerate_paths(q, 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
  std::uniform_int_distribution<std::size_t> node(0, q.node_count() - 1);
  for (int t = 0; t < 200; ++t) {
    const std::string where = "case " + std::to_string(t);
    const FilterElement a = random_filter(q, rng, 2, 3);
    const FilterElement b = random_filter(q, rng, 2, 3);
    const FilterElement c = random_filter(q, rng, 2, 3);
    o.check((a * b) * c == a * (b * c), where + ": associativity");
    o.check(one * a == a && a * one == a, where + ": unit");

    const std::size_t i = node(rng), j = node(rng);
    const FilterElement ei(q, Path::trivial(q, i), 1.0);
    const FilterElement ej(q, Path::trivial(q, j), 1.0);
    o.check(i == j ? ei * ej == ei : (ei * ej).is_zero(), where + ": e_i e_j");

    // Zero-composition rule on single paths, against the endpoint oracle.
    const Path& p1 = paths[pick(rng)];
    const Path& p2 = paths[pick(rng)];
    const FilterElement prod = FilterElement(q, p2, 1.0) * FilterElement(q, p1, 1.0);
    if (p2.tail() != p1.head()) {
      o.check(prod.is_zero(), where + ": non-composable product not zero");
    } else {
      std::vector<std::size_t> arrows = p1.arrows();
      arrows.insert(arrows.end(), p2.arrows().begin(), p2.arrows().end());
      const Path joined =
          arrows.empty() ? Path::trivial(q, p1.tail()) : Path::from_arrows(q, arrows);
      o.check(prod == FilterElement(q, joined, 1.0), where + ": composable product");
    }
  }
  if (o.pass) o.detail = "200 cases, exact";
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome homomorphism_property() {
  Outcome o;
  const Quiver q = five_node_quiver();
  std::mt19937_64 rng(4);
  const Representation rep = random_representation(q, kFiveNodeDims, rng);
  const auto paths = enumerate_paths(q, 2);
  std::size_t pairs = 0, composable = 0;
  double worst = 0.0;
  for (const auto& p1 : paths) {
    for (const auto& p2 : paths) {
      const Matrix lhs = shift_operator(rep, p2).matrix * shift_operator(rep, p1).matrix;
      const auto p21 = concat(p2, p1);
      const Matrix rhs = p21 ? shift_operator(rep, *p21).matrix
                             : Matrix::Zero(rep.total_dim(), rep.total_dim());
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      ++pairs;
      composable += p21.has_value();
    }
  }
  o.check(worst <= 1e-9, "max deviation " + fmt("%.3g", worst));
  if (o.pass) {
    o.detail = std::to_string(pairs) + " pairs (" + std::to_string(composable) +
               " composable), max deviation " + fmt("%.2g", worst);
  }
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome decomposer_cross_validation() {
  Outcome o;
  std::mt19937_64 rng(5);
  int flagged = 0;
  const int instances = 50;
  for (int t = 0; t < instances; ++t) {
    const PlantedChain planted = planted_chain(rng, 5, 4);
    const IntervalBarcode bc = barcode_interval(planted.rep);
    o.check(bc == planted.barcode, "barcode mismatch on instance " + std::to_string(t));
    GenericOptions opts;
    opts.seed = static_cast<std::uint64_t>(t);
    const SummandList list = generic_decompose(planted.rep, opts);
    bool unsplit = false;
    std::multiset<std::vector<Eigen::Index>> dims;
    for (const auto& s : list.summands) {
      unsplit = unsplit || s.unsplit;
      dims.insert(s.rep.dims());
    }
    if (unsplit) {
      ++flagged;
      continue;
    }
    o.check(dims == interval_dim_vectors(bc),
            "summand dimension vectors differ on instance " + std::to_string(t));
  }
  const double rate = static_cast<double>(flagged) / instances;
  o.check(rate < 0.10, "unsplit flag rate " + fmt("%.0f%%", 100 * rate));
  if (o.pass) {
    o.detail = "50 instances, barcodes exact, unsplit flag rate " + fmt("%.0f%%", 100 * rate);
  }
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome fourier_suite() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> nodes_dist(1, 5);
  std::uniform_int_distribution<Eigen::Index> dim_dist(0, 4);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::bernoulli_distribution coin(0.4);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    // Random acyclic quiver: arrows only from lower to higher node index.
    const int n = nodes_dist(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
    std::vector<Arrow> arrows;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) arrows.push_back({"b" + names[i] + names[j], names[i], names[j]});
    const Quiver q(names, arrows);
    std::vector<Eigen::Index> dims;
    for (int i = 0; i < n; ++i) dims.push_back(dim_dist(rng));
    const Representation rep(q, dims);

    FilterElement c(q);
    for (int i = 0; i < n; ++i) c.add_term(Path::trivial(q, static_cast<std::size_t>(i)), coeff(rng));
    c.normalize();
    const QuiverSignal x = random_signal(rep, rng);

    const FourierDecomposition xh = fourier_decompose(rep, x);
    o.check(fourier_inverse(rep, xh).flatten() == x.flatten(), "Δ⁻¹Δ ≠ id");
    const FourierDecomposition lhs = fourier_decompose(rep, apply_filter(rep, c, x));
    const FourierDecomposition rhs = spectral_apply(rep, c, xh);
    for (std::size_t i = 0; i < lhs.components.size(); ++i) {
      if (lhs.components[i].size() == 0) continue;
      worst = std::max(worst, (lhs.components[i] - rhs.components[i]).cwiseAbs().maxCoeff());
    }
  }
  o.check(worst <= 1e-12, "intertwining error " + fmt("%.3g", worst));

  const Representation bad = interval_module(make_chain(2), 1, 2);
  bool raised = false;
  try {
    fourier_decompose(bad, QuiverSignal(bad));
  } catch (const NotSemisimple& e) {
    raised = e.arrow() == "a1_2";
  }
  o.check(raised, "non-semisimple input did not raise NotSemisimple");
  if (o.pass) o.detail = "100 cases, max error " + fmt("%.2g", worst) + ", error path checked";
  return o;
}

// 7 -------------------------------------------------------------------------
Outcome tda_pipeline() {
  Outcome o;
  const FilteredComplex tri = filtered_triangle();
  IntervalBarcode h0, h1;
  h0.n = h1.n = 3;
  h0.bars = {{{1, 3}, 1}, {{1, 1}, 2}};
  h1.bars = {{{2, 2}, 1}};
  o.check(oracle_barcode(to_oracle(tri), 0, tri.n()) == h0, "oracle disagrees on k=0");
  o.check(oracle_barcode(to_oracle(tri), 1, tri.n()) == h1, "oracle disagrees on k=1");
  o.check(persistence_barcode(tri, 0) == h0, "triangle k=0 barcode");
  o.check(persistence_barcode(tri, 1) == h1, "triangle k=1 barcode");

  std::mt19937_64 rng(7);
  std::size_t top_dim = 0;
  for (int t = 0; t < 20; ++t) {
    const FilteredComplex c = random_complex(rng, 12, 3);
    const auto all = to_oracle(c);
    for (const auto& s : c.simplices()) top_dim = std::max(top_dim, s.dim());
    const std::string where = "complex " + std::to_string(t);
    for (std::size_t level = 0; level <= c.n(); ++level) {
      for (std::size_t k = 0; k <= 3; ++k) {
        if (k >= 1) {
          o.check((boundary_matrix(c, k, level) * boundary_matrix(c, k + 1, level)).is_zero(),
                  where + ": ∂∂ ≠ 0");
        }
        const auto in_level = [&](const OracleSimplex& s) { return s.level <= level; };
        const std::size_t rk = k == 0 ? 0 : exact_rank(oracle_boundary(all, k, level, in_level));
        const std::size_t rk1 = exact_rank(oracle_boundary(all, k + 1, level, in_level));
        o.check(homology_basis(c, k, level).betti() == c.chain_dim(k, level) - rk - rk1,
                where + ": Betti number");
      }
    }
    for (std::size_t k = 0; k <= 2; ++k) {
      o.check(persistence_barcode(c, k) == oracle_barcode(all, k, c.n()), where + ": barcode");
    }
  }
  if (o.pass) {
    o.detail = "triangle barcodes exact; 20 random complexes (up to dimension " +
               std::to_string(top_dim) + ") exact";
  }
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome hom_oracle() {
  Outcome o;
  const Quiver a3 = make_chain(3);
  const std::vector<Interval> ivs{{1, 2}, {2, 3}, {1, 3}};
  std::ostringstream dims;
  for (const auto& x : ivs) {
    for (const auto& y : ivs) {
      const Representation src = interval_module(a3, x.a, x.b);
      const Representation dst = interval_module(a3, y.a, y.b);
      const std::size_t got = hom_basis(src, dst).size();
      const std::size_t want = oracle_interval_hom_dim(src, dst);
      o.check(got == want, "hom([" + std::to_string(x.a) + "," + std::to_string(x.b) + "], [" +
                               std::to_string(y.a) + "," + std::to_string(y.b) + "])");
      dims << (dims.tellp() > 0 ? " " : "") << got;
    }
  }
  if (o.pass) o.detail = "9 pairs agree, dims " + dims.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"filtering golden example", filtering_golden},
      {"basic A2 decomposition", basic_decomposition},
      {"path algebra axioms", path_algebra_axioms},
      {"representation homomorphism", homomorphism_property},
      {"decomposer cross-validation", decomposer_cross_validation},
      {"Fourier transform", fourier_suite},
      {"TDA pipeline", tda_pipeline},
      {"hom-space oracle", hom_oracle},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first
              << ": " << o.detail << " (" << fmt("%.2f", secs) << "s)\n";
  }
  return failures == 0 ? 0 : 1;
}
