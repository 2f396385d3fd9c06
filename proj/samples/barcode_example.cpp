// Barcode of H_0 and H_1 for a triangle whose edges appear at step 1 and
// whose face fills in at step 2.

#include <iostream>

#include <quiversp/quiversp.hpp>

using namespace quiversp;

int main() {
  const FilteredComplex triangle({{{"a"}, 0},
                                  {{"b"}, 0},
                                  {{"c"}, 0},
                                  {{"a", "b"}, 1},
                                  {{"b", "c"}, 1},
                                  {{"a", "c"}, 1},
                                  {{"a", "b", "c"}, 2}});
  for (std::size_t k = 0; k <= 1; ++k) {
    std::cout << "H_" << k << ":\n" << canonical_dump(to_json(persistence_barcode(triangle, k)));
  }
  return 0;
}
