#pragma once

#include <vector>

#include <atlas/orbit.hpp>
#include <atlas/rng.hpp>

namespace atlas_test {

// Characteristics exercised across the suites: the full flag for n = 2, 3, 4
// and the partial flags obtained by merging the first two eigenvalues.
inline std::vector<atlas::Characteristic> acceptance_characteristics() {
  using atlas::characteristic_from_theta;
  using atlas::make_theta;
  return {
      characteristic_from_theta(make_theta(2, {})),
      characteristic_from_theta(make_theta(3, {})),
      characteristic_from_theta(make_theta(3, {1})),
      characteristic_from_theta(make_theta(4, {})),
      characteristic_from_theta(make_theta(4, {1})),
  };
}

inline int nplus_complex_dim(const atlas::Characteristic& ch) {
  int m = 0;
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] < ch.block_of[j]) ++m;
  return m;
}

}  // namespace atlas_test
