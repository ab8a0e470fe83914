#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "karamata/operator_calculus.hpp"
#include "karamata/scalar_bounds.hpp"

namespace karamata {

/// splitmix64 finalizer; per-trial seeds are split_seed(seed, trial).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// 64-bit Mersenne twister with portable uniform/normal draws, so that a
/// seed reproduces the same instances on any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::complex<double> complex_normal();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Point on the simplex drawn from the flat Dirichlet distribution.
std::vector<double> random_simplex(std::size_t n, Rng& rng);

/// Columns of a complex Gaussian matrix orthonormalized by Gram-Schmidt;
/// rows >= cols.
ComplexMatrix random_isometry(int rows, int cols, Rng& rng);
ComplexMatrix random_unitary(int dim, Rng& rng);
ComplexVector random_unit_vector(int dim, Rng& rng);

/// U diag(spectrum) U* for a Haar unitary U.
HermitianMatrix random_hermitian_with_spectrum(std::span<const double> spectrum, Rng& rng);
/// Spectrum drawn uniformly from iv.
HermitianMatrix random_hermitian_in(int dim, const Interval& iv, Rng& rng);
/// Ginibre construction G G* / Tr(G G*).
DensityMatrix random_density(int dim, Rng& rng);

/// Sinkhorn normalization of a positive random matrix.
Eigen::MatrixXd random_doubly_stochastic(int n, Rng& rng, int iterations = 200);

}  // namespace karamata
