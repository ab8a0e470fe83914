#include "karamata/operator_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "karamata/error.hpp"

namespace karamata {

namespace {

using cd = std::complex<double>;

constexpr double kInputHermitianTol = 1e-12;
constexpr double kArithmeticHermitianTol = 1e-10;
constexpr double kJacobiTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kPositiveFloor = 1e-12;
constexpr double kDensityTol = 1e-12;
constexpr double kUnitalTol = 1e-10;

double asymmetry(const ComplexMatrix& m) { return (m - m.adjoint()).norm(); }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ShapeError("matrix must be square and non-empty");
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ShapeError("matrix dimensions differ");
}

}  // namespace

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(ComplexMatrix m) {
  require_square(m);
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
  const double err = asymmetry(m);
  if (err > kInputHermitianTol * std::max(1.0, m.norm()))
    throw DomainError("matrix is not Hermitian", err);
  m_ = hermitian_part(m);
}

HermitianMatrix HermitianMatrix::from_arithmetic(const ComplexMatrix& m) {
  require_square(m);
  const double err = asymmetry(m);
  if (err > kArithmeticHermitianTol * std::max(1.0, m.norm()))
    throw ConsistencyError("Hermitian drift beyond tolerance: " + format_real(err));
  return HermitianMatrix(hermitian_part(m), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  if (dim < 1) throw ShapeError("dimension must be >= 1");
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  if (dim < 1) throw ShapeError("dimension must be >= 1");
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> entries) {
  if (entries.empty()) throw ShapeError("dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(entries[i])) throw DomainError("non-finite diagonal entry");
    m(i, i) = entries[i];
  }
  return HermitianMatrix(std::move(m), Trusted{});
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_dim(*this, o);
  return HermitianMatrix(m_ + o.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_dim(*this, o);
  return HermitianMatrix(m_ - o.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(m_ * s, Trusted{});
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  require_same_dim(*this, o);
  m_ += o.m_;
  return *this;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

ComplexMatrix EigenDecomposition::reconstruct() const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) d(static_cast<Eigen::Index>(i)) = eigenvalues[i];
  return unitary * d.cast<cd>().asDiagonal() * unitary.adjoint();
}

EigenDecomposition jacobi_eigh(const HermitianMatrix& input) {
  ComplexMatrix a = input.matrix();
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  const double target = kJacobiTol * scale;

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (sweep == kJacobiMaxSweeps)
      throw NumericError("jacobi_eigh did not converge", scale > 0 ? off / scale : off);
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cd apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // The phase e^{-i phi} on column q makes the (p,q) block real
        // symmetric; a real rotation then annihilates it.
        const cd phase = apq / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cd gpp = c, gpq = s, gqp = -s * std::conj(phase), gqq = c * std::conj(phase);

        ComplexVector cp = a.col(p), cq = a.col(q);
        a.col(p) = cp * gpp + cq * gqp;
        a.col(q) = cp * gpq + cq * gqq;
        Eigen::RowVectorXcd rp = a.row(p), rq = a.row(q);
        a.row(p) = std::conj(gpp) * rp + std::conj(gqp) * rq;
        a.row(q) = std::conj(gpq) * rp + std::conj(gqq) * rq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        ComplexVector vp = v.col(p), vq = v.col(q);
        v.col(p) = vp * gpp + vq * gqp;
        v.col(q) = vp * gpq + vq * gqq;
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenDecomposition out;
  out.sweeps = sweep;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.unitary.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[static_cast<std::size_t>(k)] = a(order[k], order[k]).real();
    out.unitary.col(k) = v.col(order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& a) { return jacobi_eigh(a).eigenvalues; }

double lambda_min(const HermitianMatrix& a) { return jacobi_eigh(a).min(); }

double lambda_max(const HermitianMatrix& a) { return jacobi_eigh(a).max(); }

DensityMatrix::DensityMatrix(HermitianMatrix base) : base_(std::move(base)) {
  if (std::abs(base_.trace() - 1.0) > kDensityTol)
    throw DomainError("density matrix must have unit trace", base_.trace());
  const double low = lambda_min(base_);
  if (low < -kDensityTol) throw DomainError("density matrix must be positive semidefinite", low);
}

// ---------------------------------------------------------------------------
// Functional calculus

HermitianMatrix apply_function(const ScalarMap& f, const EigenDecomposition& eig) {
  const auto n = static_cast<Eigen::Index>(eig.eigenvalues.size());
  Eigen::VectorXcd fv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues[static_cast<std::size_t>(i)];
    double value;
    try {
      value = f(lambda);
    } catch (const DomainError&) {
      if (lambda < 0.0 && lambda >= -kPositiveFloor) {
        value = f(0.0);
      } else {
        throw DomainError("spectrum outside the function's domain: eigenvalue", lambda);
      }
    }
    if (!std::isfinite(value)) throw DomainError("function is not finite at eigenvalue", lambda);
    fv(i) = value;
  }
  return HermitianMatrix::from_arithmetic(eig.unitary * fv.asDiagonal() * eig.unitary.adjoint());
}

HermitianMatrix apply_function(const ScalarMap& f, const HermitianMatrix& a) {
  return apply_function(f, jacobi_eigh(a));
}

HermitianMatrix apply_function(const FunctionSpec& f, const HermitianMatrix& a) {
  return apply_function([&f](double t) { return f(t); }, jacobi_eigh(a));
}

bool spectrum_in(const HermitianMatrix& a, const Interval& iv) {
  const EigenDecomposition eig = jacobi_eigh(a);
  return eig.min() >= iv.lower - 1e-10 && eig.max() <= iv.upper + 1e-10;
}

HermitianMatrix congruence(const HermitianMatrix& s, const HermitianMatrix& a) {
  require_same_dim(s, a);
  return HermitianMatrix::from_arithmetic(s.matrix() * a.matrix() * s.matrix());
}

namespace {

EigenDecomposition positive_definite_eig(const HermitianMatrix& a, const char* what) {
  EigenDecomposition eig = jacobi_eigh(a);
  if (!(eig.min() > kPositiveFloor))
    throw DomainError(std::string(what) + " requires a positive definite matrix; lambda_min",
                      eig.min());
  return eig;
}

}  // namespace

HermitianMatrix sqrt_pd(const HermitianMatrix& a) {
  return apply_function([](double t) { return std::sqrt(t); }, positive_definite_eig(a, "sqrt_pd"));
}

HermitianMatrix inv_sqrt_pd(const HermitianMatrix& a) {
  return apply_function([](double t) { return 1.0 / std::sqrt(t); },
                        positive_definite_eig(a, "inv_sqrt_pd"));
}

// ---------------------------------------------------------------------------
// Map families

MapFamily::MapFamily(std::vector<PositiveMap> maps, int input_dim)
    : maps_(std::move(maps)), input_dim_(input_dim), output_dim_(-1) {
  if (maps_.empty()) throw ShapeError("map family is empty");
  if (input_dim_ < 1) throw ShapeError("input dimension must be >= 1");
  for (const PositiveMap& m : maps_) {
    int out = -1;
    if (const auto* w = std::get_if<WeightedConjugation>(&m)) {
      if (!(w->weight > 0.0)) throw DomainError("conjugation weight must be positive", w->weight);
      if (w->unitary.rows() != input_dim_ || w->unitary.cols() != input_dim_)
        throw ShapeError("conjugation unitary has the wrong size");
      const double defect =
          (w->unitary.adjoint() * w->unitary - ComplexMatrix::Identity(input_dim_, input_dim_)).norm();
      if (defect > kUnitalTol) throw DomainError("conjugation matrix is not unitary", defect);
      out = input_dim_;
    } else if (const auto* k = std::get_if<KrausMap>(&m)) {
      if (k->ops.empty()) throw ShapeError("Kraus map without operators");
      out = static_cast<int>(k->ops.front().cols());
      for (const ComplexMatrix& v : k->ops)
        if (v.rows() != input_dim_ || v.cols() != out) throw ShapeError("Kraus operator has the wrong size");
    } else {
      const auto& t = std::get<NormalizedTrace>(m);
      if (!(t.weight > 0.0)) throw DomainError("trace weight must be positive", t.weight);
      out = 1;
    }
    if (output_dim_ == -1) output_dim_ = out;
    if (out != output_dim_) throw ShapeError("maps in a family must share the output dimension");
  }
  HermitianMatrix unit_sum = HermitianMatrix::zero(output_dim_);
  const HermitianMatrix unit = HermitianMatrix::identity(input_dim_);
  for (std::size_t i = 0; i < maps_.size(); ++i) unit_sum += apply_one(i, unit);
  const double defect = (unit_sum.matrix() - ComplexMatrix::Identity(output_dim_, output_dim_)).norm();
  if (defect > kUnitalTol)
    throw PreconditionError("map family violates sum Phi_i(1) = 1 (defect " + format_real(defect) + ")");
}

MapFamily MapFamily::uniform_identity(int n, int dim) {
  std::vector<PositiveMap> maps(static_cast<std::size_t>(n),
                                WeightedConjugation{1.0 / n, ComplexMatrix::Identity(dim, dim)});
  return MapFamily(std::move(maps), dim);
}

MapFamily MapFamily::scalar_weights(std::span<const double> p, int dim) {
  std::vector<PositiveMap> maps;
  maps.reserve(p.size());
  for (double w : p) maps.emplace_back(WeightedConjugation{w, ComplexMatrix::Identity(dim, dim)});
  return MapFamily(std::move(maps), dim);
}

HermitianMatrix MapFamily::apply_one(std::size_t i, const HermitianMatrix& a) const {
  if (a.dim() != input_dim_) throw ShapeError("operand dimension does not match the map family");
  const PositiveMap& m = maps_.at(i);
  if (const auto* w = std::get_if<WeightedConjugation>(&m))
    return HermitianMatrix::from_arithmetic(w->weight * (w->unitary.adjoint() * a.matrix() * w->unitary));
  if (const auto* k = std::get_if<KrausMap>(&m)) {
    ComplexMatrix acc = ComplexMatrix::Zero(output_dim_, output_dim_);
    for (const ComplexMatrix& v : k->ops) acc += v.adjoint() * a.matrix() * v;
    return HermitianMatrix::from_arithmetic(acc);
  }
  const auto& t = std::get<NormalizedTrace>(m);
  const double value = t.weight * a.trace() / input_dim_;
  return HermitianMatrix::diagonal(std::span<const double>(&value, 1));
}

HermitianMatrix apply_map_family(const MapFamily& family, std::span<const HermitianMatrix> as) {
  if (as.size() != family.size()) throw ShapeError("number of operands does not match the map family");
  HermitianMatrix out = HermitianMatrix::zero(family.output_dim());
  for (std::size_t i = 0; i < as.size(); ++i) out += family.apply_one(i, as[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Means and entropies

namespace {

struct Sandwich {
  HermitianMatrix root;
  EigenDecomposition middle;
};

Sandwich sandwich(const HermitianMatrix& x, const HermitianMatrix& y) {
  require_same_dim(x, y);
  const EigenDecomposition ex = positive_definite_eig(x, "operator mean (X)");
  positive_definite_eig(y, "operator mean (Y)");
  HermitianMatrix root = apply_function([](double t) { return std::sqrt(t); }, ex);
  HermitianMatrix inv_root = apply_function([](double t) { return 1.0 / std::sqrt(t); }, ex);
  EigenDecomposition middle = positive_definite_eig(congruence(inv_root, y), "operator mean");
  return {std::move(root), std::move(middle)};
}

}  // namespace

HermitianMatrix natural_power_mean(const HermitianMatrix& x, const HermitianMatrix& y, double r) {
  if (!std::isfinite(r)) throw DomainError("r must be finite");
  Sandwich s = sandwich(x, y);
  return congruence(s.root, apply_function([r](double t) { return std::pow(t, r); }, s.middle));
}

HermitianMatrix tsallis_relative_operator_entropy(const HermitianMatrix& x,
                                                  const HermitianMatrix& y, double r) {
  if (!std::isfinite(r)) throw DomainError("r must be finite");
  Sandwich s = sandwich(x, y);
  return congruence(s.root, apply_function([r](double t) { return ln_r(r, t); }, s.middle));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double h = 0.0;
  for (double lambda : eigenvalues(rho.base()))
    if (lambda > 0.0) h -= lambda * std::log(lambda);
  return h;
}

double quantum_tsallis_entropy(const DensityMatrix& rho, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("quantum Tsallis entropy requires r in (0,1]", r);
  // (Tr rho^{1-r} - 1)/r = sum lambda ln_r(1/lambda) for unit trace.
  double h = 0.0;
  for (double lambda : eigenvalues(rho.base()))
    if (lambda > 0.0) h += lambda * std::expm1(-r * std::log(lambda)) / r;
  return h;
}

double trace_distance_l1(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (double lambda : eigenvalues(a - b)) s += std::abs(lambda);
  return s;
}

}  // namespace karamata
