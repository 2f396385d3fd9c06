// Filters a random signal on the five-node quiver with loops at 2 and 4 and
// the cycle 1 -> 2 -> 3 -> 4 -> 1, using c = a51*a35 + a12*a41*a34.

#include <iostream>
#include <random>

#include <quiversp/quiversp.hpp>

using namespace quiversp;

int main() {
  const Quiver q({"1", "2", "3", "4", "5"},
                 {{"a12", "1", "2"}, {"a23", "2", "3"}, {"a22", "2", "2"}, {"a34", "3", "4"},
                  {"a35", "3", "5"}, {"a44", "4", "4"}, {"a41", "4", "1"}, {"a51", "5", "1"}});
  const std::vector<Eigen::Index> dims{2, 3, 2, 2, 1};

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  auto random_matrix = [&](Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(rng);
    return m;
  };

  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    maps.push_back(random_matrix(dims[q.head(a)], dims[q.tail(a)]));
  }
  const Representation rep(q, dims, maps);

  std::vector<Vector> blocks;
  for (auto d : dims) blocks.push_back(random_matrix(d, 1));
  const QuiverSignal x(rep, blocks);

  const FilterElement c = FilterElement(q, Path::from_ids(q, {"a35", "a51"})) +
                          FilterElement(q, Path::from_ids(q, {"a34", "a41", "a12"}));
  std::cout << "c = " << c.to_string() << "\n";

  const QuiverSignal y = apply_filter(rep, c, x);
  std::cout << canonical_dump(to_json(y));
  return 0;
}
