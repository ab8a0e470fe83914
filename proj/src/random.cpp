#include "karamata/random.hpp"

#include <cmath>
#include <numbers>

#include "karamata/error.hpp"

namespace karamata {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  while (u == 0.0) u = uniform();
  const double v = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw DomainError("Rng::index requires n > 0");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  double total = 0.0;
  for (double& x : out) {
    double u = 0.0;
    while (u == 0.0) u = rng.uniform();
    x = -std::log(u);
    total += x;
  }
  for (double& x : out) x /= total;
  return out;
}

ComplexMatrix random_isometry(int rows, int cols, Rng& rng) {
  if (cols < 1 || rows < cols) throw ShapeError("isometry needs rows >= cols >= 1");
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  // Modified Gram-Schmidt, two passes.
  for (int j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    const double nrm = g.col(j).norm();
    if (!(nrm > 1e-300)) throw NumericError("degenerate Gaussian draw", nrm);
    g.col(j) /= nrm;
  }
  return g;
}

ComplexMatrix random_unitary(int dim, Rng& rng) { return random_isometry(dim, dim, rng); }

ComplexVector random_unit_vector(int dim, Rng& rng) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

HermitianMatrix random_hermitian_with_spectrum(std::span<const double> spectrum, Rng& rng) {
  const int dim = static_cast<int>(spectrum.size());
  const ComplexMatrix u = random_unitary(dim, rng);
  Eigen::VectorXcd d(dim);
  for (int i = 0; i < dim; ++i) d(i) = spectrum[static_cast<std::size_t>(i)];
  return HermitianMatrix::from_arithmetic(u * d.asDiagonal() * u.adjoint());
}

HermitianMatrix random_hermitian_in(int dim, const Interval& iv, Rng& rng) {
  std::vector<double> spectrum(static_cast<std::size_t>(dim));
  for (double& x : spectrum) x = rng.uniform(iv.lower, iv.upper);
  return random_hermitian_with_spectrum(spectrum, rng);
}

DensityMatrix random_density(int dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianMatrix::from_arithmetic(rho));
}

Eigen::MatrixXd random_doubly_stochastic(int n, Rng& rng, int iterations) {
  Eigen::MatrixXd s(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) s(i, j) = 0.05 + rng.uniform();
  for (int it = 0; it < iterations; ++it) {
    s = s.array().colwise() / s.rowwise().sum().array();
    s = s.array().rowwise() / s.colwise().sum().array();
  }
  return s;
}

}  // namespace karamata
