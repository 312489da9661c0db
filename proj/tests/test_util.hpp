#pragma once

#include <cmath>
#include <random>

#include "irsce/channel.hpp"
#include "irsce/tensor.hpp"

namespace irsce::testing {

inline ComplexMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex{re, im};
    }
  }
  return m;
}

inline ComplexVector random_vector(Rng& rng, Eigen::Index n) { return random_matrix(rng, n, 1); }

inline CPFactors random_factors(Rng& rng, Eigen::Index d1, Eigen::Index d2, Eigen::Index d3, Eigen::Index rank) {
  return {random_matrix(rng, d1, rank), random_matrix(rng, d2, rank), random_matrix(rng, rank, d3)};
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace irsce::testing
