#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "karamata/scalar_bounds.hpp"

namespace karamata {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Finite-dimensional self-adjoint matrix. Construction rejects inputs with
/// |A - A*|_F > 1e-12 max(1, |A|_F) and stores the exact Hermitian part.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix m);

  /// Hermitian part of the result of matrix arithmetic; drift beyond
  /// 1e-10 relative is reported as a ConsistencyError.
  static HermitianMatrix from_arithmetic(const ComplexMatrix& m);
  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(std::span<const double> entries);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }
  /// <A x, x> for a unit vector x.
  double expectation(const ComplexVector& x) const { return x.dot(m_ * x).real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix& operator+=(const HermitianMatrix& o);

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& a) { return a * s; }

/// Eigenvalues ascending; columns of unitary are the matching eigenvectors.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix unitary;
  int sweeps = 0;

  ComplexMatrix reconstruct() const;
  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius mass is at
/// most 1e-14 |A|_F; throws NumericError after 100 sweeps.
EigenDecomposition jacobi_eigh(const HermitianMatrix& a);

std::vector<double> eigenvalues(const HermitianMatrix& a);
double lambda_min(const HermitianMatrix& a);
double lambda_max(const HermitianMatrix& a);

/// Positive semidefinite (eigenvalues >= -1e-12), unit trace (within 1e-12).
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix base);
  const HermitianMatrix& base() const noexcept { return base_; }
  int dim() const noexcept { return base_.dim(); }

 private:
  HermitianMatrix base_;
};

/// U diag(f(lambda)) U*. Eigenvalues within 1e-12 below zero are clamped to
/// zero for functions defined on t >= 0.
HermitianMatrix apply_function(const FunctionSpec& f, const HermitianMatrix& a);
HermitianMatrix apply_function(const ScalarMap& f, const HermitianMatrix& a);
HermitianMatrix apply_function(const ScalarMap& f, const EigenDecomposition& eig);

bool spectrum_in(const HermitianMatrix& a, const Interval& iv);

/// S A S for Hermitian S, e.g. Z^{1/2} A Z^{1/2}.
HermitianMatrix congruence(const HermitianMatrix& s, const HermitianMatrix& a);

/// A^{1/2} and A^{-1/2}; both require lambda_min(A) > 1e-12.
HermitianMatrix sqrt_pd(const HermitianMatrix& a);
HermitianMatrix inv_sqrt_pd(const HermitianMatrix& a);

// ---------------------------------------------------------------------------
// Positive linear maps

/// X -> weight U* X U.
struct WeightedConjugation {
  double weight = 1.0;
  ComplexMatrix unitary;
};

/// X -> sum_k V_k* X V_k with each V_k of size dim_H x dim_K.
struct KrausMap {
  std::vector<ComplexMatrix> ops;
};

/// X -> weight Tr(X)/dim_H as a 1x1 matrix.
struct NormalizedTrace {
  double weight = 1.0;
};

using PositiveMap = std::variant<WeightedConjugation, KrausMap, NormalizedTrace>;

/// Maps Phi_i: B(H) -> B(K) with sum_i Phi_i(1_H) = 1_K (within 1e-10).
class MapFamily {
 public:
  MapFamily(std::vector<PositiveMap> maps, int input_dim);

  /// n copies of X -> X / n.
  static MapFamily uniform_identity(int n, int dim);
  /// Phi_i: X -> p_i X.
  static MapFamily scalar_weights(std::span<const double> p, int dim);

  std::size_t size() const noexcept { return maps_.size(); }
  int input_dim() const noexcept { return input_dim_; }
  int output_dim() const noexcept { return output_dim_; }
  const PositiveMap& operator[](std::size_t i) const { return maps_[i]; }

  HermitianMatrix apply_one(std::size_t i, const HermitianMatrix& a) const;

 private:
  std::vector<PositiveMap> maps_;
  int input_dim_;
  int output_dim_;
};

/// sum_i Phi_i(A_i).
HermitianMatrix apply_map_family(const MapFamily& family, std::span<const HermitianMatrix> as);

/// X^{1/2} (X^{-1/2} Y X^{-1/2})^r X^{1/2}; the weighted geometric mean for r in [0,1].
HermitianMatrix natural_power_mean(const HermitianMatrix& x, const HermitianMatrix& y, double r);

/// X^{1/2} ln_r(X^{-1/2} Y X^{-1/2}) X^{1/2}, which equals (X nat_r Y - X)/r;
/// the relative operator entropy at r = 0.
HermitianMatrix tsallis_relative_operator_entropy(const HermitianMatrix& x,
                                                  const HermitianMatrix& y, double r);

double von_neumann_entropy(const DensityMatrix& rho);
double quantum_tsallis_entropy(const DensityMatrix& rho, double r);

/// Tr|A - B|.
double trace_distance_l1(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace karamata
