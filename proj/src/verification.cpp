#include "karamata/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "karamata/error.hpp"
#include "karamata/majorization.hpp"

namespace karamata {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGeneratorCap = 100000;
constexpr double kConstraintSlack = 1e-9;

bool is_convex_like(Curvature c) { return c == Curvature::Convex || c == Curvature::Linear; }

Curvature require_definite(const FunctionSpec& f, const Interval& iv) {
  const Curvature c = f.curvature_on(iv);
  if (c == Curvature::Indefinite)
    throw PreconditionError(f.name() + " is neither convex nor concave on the interval");
  return c;
}

void require_spectra(const std::vector<HermitianMatrix>& ops, const Interval& iv, const char* what) {
  for (const auto& a : ops)
    if (!spectrum_in(a, iv)) throw PreconditionError(std::string(what) + " has spectrum outside [m, M]");
}

double clamp_to(const Interval& iv, double t) { return std::clamp(t, iv.lower, iv.upper); }

HermitianMatrix weighted_sum(const std::vector<double>& p, const std::vector<HermitianMatrix>& ops) {
  if (p.size() != ops.size() || ops.empty()) throw ShapeError("weights and operators differ in length");
  HermitianMatrix acc = HermitianMatrix::zero(ops.front().dim());
  for (std::size_t i = 0; i < ops.size(); ++i) acc += ops[i] * p[i];
  return acc;
}

std::vector<HermitianMatrix> map_each(const std::vector<HermitianMatrix>& ops, const FunctionSpec& f) {
  std::vector<HermitianMatrix> out;
  out.reserve(ops.size());
  for (const auto& a : ops) out.push_back(apply_function(f, a));
  return out;
}

void require_probability(const std::vector<double>& p) {
  double total = 0.0;
  for (double w : p) {
    if (!(w > 0.0)) throw DomainError("weights must be positive", w);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("weights must sum to 1", total);
}

}  // namespace

InequalityVerdict scalar_verdict(std::string id, double lhs, double rhs, const ParamRecord& ctx) {
  InequalityVerdict v;
  v.inequality_id = std::move(id);
  v.lhs_summary = lhs;
  v.rhs_summary = rhs;
  v.margin = rhs - lhs;
  v.pass = v.margin >= -ctx.tol;
  v.context = ctx;
  return v;
}

InequalityVerdict operator_verdict(std::string id, const HermitianMatrix& lhs,
                                   const HermitianMatrix& rhs, const ParamRecord& ctx) {
  if (lhs.dim() != rhs.dim()) throw ShapeError("inequality sides differ in dimension");
  InequalityVerdict v;
  v.inequality_id = std::move(id);
  v.lhs_summary = lambda_max(lhs);
  v.rhs_summary = lambda_max(rhs);
  v.margin = lambda_min(rhs - lhs);
  v.pass = v.margin >= -ctx.tol;
  v.context = ctx;
  return v;
}

// ---------------------------------------------------------------------------
// Generators

ScalarInstance gen_equal_weighted_mean_scalars(std::size_t n, const Interval& iv, std::uint64_t seed) {
  if (n < 2) throw DomainError("equal-mean scalar instances need n >= 2", static_cast<double>(n));
  Rng rng(seed);
  ScalarInstance out;
  out.p = random_simplex(n, rng);
  out.y.resize(n);
  for (double& v : out.y) v = rng.uniform(iv.lower, iv.upper);
  const std::size_t k = static_cast<std::size_t>(
      std::max_element(out.p.begin(), out.p.end()) - out.p.begin());
  double target = 0.0;
  for (std::size_t i = 0; i < n; ++i) target += out.p[i] * out.y[i];

  out.x.resize(n);
  for (int attempt = 0; attempt < kGeneratorCap; ++attempt) {
    // Each free coordinate moves a random fraction of the way to a fresh draw.
    double rest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double lambda = rng.uniform();
      out.x[i] = out.y[i] + lambda * (rng.uniform(iv.lower, iv.upper) - out.y[i]);
      rest += out.p[i] * out.x[i];
    }
    const double xk = (target - rest) / out.p[k];
    if (iv.contains(xk)) {
      out.x[k] = xk;
      return out;
    }
  }
  throw GeneratorExhausted("no equal-mean completion found within the attempt cap");
}

const char* to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::UniformPermutation: return "uniform_permutation";
    case FamilyKind::DoublyStochasticMix: return "doubly_stochastic_mix";
    case FamilyKind::NormalizedTrace: return "normalized_trace";
    case FamilyKind::WeightedReduction: return "weighted_reduction";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& name) {
  for (FamilyKind k : {FamilyKind::UniformPermutation, FamilyKind::DoublyStochasticMix,
                       FamilyKind::NormalizedTrace, FamilyKind::WeightedReduction})
    if (name == to_string(k)) return k;
  throw DomainError("invalid family kind '" + name + "'");
}

namespace {

// n identical maps scaled by 1/n: a shared unitary conjugation or a shared
// Kraus map cut from one random isometry.
MapFamily identical_maps(int n, int dim, Rng& rng) {
  std::vector<PositiveMap> maps;
  if (rng.uniform() < 0.5) {
    const ComplexMatrix u = random_unitary(dim, rng);
    for (int i = 0; i < n; ++i) maps.emplace_back(WeightedConjugation{1.0 / n, u});
  } else {
    const int out_dim = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(dim)));
    const int count = 1 + static_cast<int>(rng.index(2));
    const ComplexMatrix w = random_isometry(count * dim, out_dim, rng) / std::sqrt(double(n));
    KrausMap k;
    for (int j = 0; j < count; ++j) k.ops.push_back(w.block(j * dim, 0, dim, out_dim));
    for (int i = 0; i < n; ++i) maps.emplace_back(k);
  }
  return MapFamily(std::move(maps), dim);
}

bool is_unit_interval(const Interval& iv) { return iv.lower == 0.0 && iv.upper == 1.0; }

// Spectrum in iv with the given sum, by shifting uniform draws.
std::vector<double> spectrum_with_sum(int dim, double sum, const Interval& iv, Rng& rng) {
  std::vector<double> s(static_cast<std::size_t>(dim));
  for (int attempt = 0; attempt < kGeneratorCap; ++attempt) {
    double total = 0.0;
    for (double& v : s) total += (v = rng.uniform(iv.lower, iv.upper));
    const double shift = (sum - total) / dim;
    bool ok = true;
    for (double& v : s) ok = ok && iv.contains(v += shift);
    if (ok) return s;
  }
  throw GeneratorExhausted("no spectrum with the required trace found within the attempt cap");
}

}  // namespace

OperatorInstance gen_equal_map_sum_operators(int n, int dim, const Interval& iv, FamilyKind kind,
                                             std::uint64_t seed) {
  if (n < 1 || dim < 1) throw ShapeError("need n >= 1 and dim >= 1");
  Rng rng(seed);
  std::vector<HermitianMatrix> as;
  std::vector<HermitianMatrix> bs;

  switch (kind) {
    case FamilyKind::UniformPermutation: {
      MapFamily family = identical_maps(n, dim, rng);
      for (int i = 0; i < n; ++i) as.push_back(random_hermitian_in(dim, iv, rng));
      std::vector<std::size_t> perm(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
      for (std::size_t i : perm) bs.push_back(as[i]);
      return {std::move(as), std::move(bs), std::move(family)};
    }
    case FamilyKind::DoublyStochasticMix: {
      MapFamily family = identical_maps(n, dim, rng);
      for (int i = 0; i < n; ++i) as.push_back(random_hermitian_in(dim, iv, rng));
      const Eigen::MatrixXd s = random_doubly_stochastic(n, rng);
      for (int i = 0; i < n; ++i) {
        HermitianMatrix b = HermitianMatrix::zero(dim);
        for (int j = 0; j < n; ++j) b += as[static_cast<std::size_t>(j)] * s(i, j);
        bs.push_back(std::move(b));
      }
      return {std::move(as), std::move(bs), std::move(family)};
    }
    case FamilyKind::NormalizedTrace: {
      const std::vector<double> p = random_simplex(static_cast<std::size_t>(n), rng);
      std::vector<PositiveMap> maps;
      for (double w : p) maps.emplace_back(NormalizedTrace{w});
      MapFamily family(std::move(maps), dim);
      for (int i = 0; i < n; ++i) {
        if (is_unit_interval(iv)) {
          as.push_back(random_density(dim, rng).base());
          bs.push_back(random_density(dim, rng).base());
        } else {
          as.push_back(random_hermitian_in(dim, iv, rng));
          const std::vector<double> spec = spectrum_with_sum(dim, as.back().trace(), iv, rng);
          bs.push_back(random_hermitian_with_spectrum(spec, rng));
        }
      }
      return {std::move(as), std::move(bs), std::move(family)};
    }
    case FamilyKind::WeightedReduction: {
      const std::vector<double> p = random_simplex(static_cast<std::size_t>(n), rng);
      const ComplexMatrix u = random_unitary(dim, rng);
      std::vector<PositiveMap> maps;
      for (double w : p) maps.emplace_back(WeightedConjugation{w, u});
      MapFamily family(std::move(maps), dim);
      for (int i = 0; i < n; ++i) as.push_back(random_hermitian_in(dim, iv, rng));
      const HermitianMatrix mean = weighted_sum(p, as);
      bs.assign(static_cast<std::size_t>(n), mean);
      return {std::move(as), std::move(bs), std::move(family)};
    }
  }
  throw DomainError("invalid family kind");
}

double map_sum_residual(const OperatorInstance& inst) {
  return (apply_map_family(inst.family, inst.as) - apply_map_family(inst.family, inst.bs))
      .frobenius_norm();
}

// ---------------------------------------------------------------------------
// Checkers

std::vector<InequalityVerdict> check_lemma_jensen(const MapFamily& family,
                                                  const std::vector<HermitianMatrix>& as,
                                                  const FunctionSpec& f, const Interval& iv,
                                                  const std::vector<ComplexVector>& xs, double tol) {
  if (as.size() != family.size()) throw ShapeError("one operator per map is required");
  require_spectra(as, iv, "A_i");
  const bool convex = is_convex_like(require_definite(f, iv));
  const std::vector<HermitianMatrix> fa = map_each(as, f);
  const HermitianMatrix lhs_op = apply_map_family(family, fa);
  const HermitianMatrix mean_op = apply_map_family(family, as);

  ParamRecord ctx;
  ctx.dim = family.output_dim();
  ctx.n = static_cast<int>(as.size());
  ctx.function = f.name();
  ctx.lower = iv.lower;
  ctx.upper = iv.upper;
  ctx.tol = tol;

  std::vector<InequalityVerdict> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    if (x.size() != family.output_dim()) throw ShapeError("test vector has the wrong dimension");
    if (std::abs(x.norm() - 1.0) > 1e-10) throw DomainError("test vector must have unit norm", x.norm());
    const double inner = lhs_op.expectation(x);
    const double outer = f(clamp_to(iv, mean_op.expectation(x)));
    out.push_back(convex ? scalar_verdict("lemma_jensen", outer, inner, ctx)
                         : scalar_verdict("lemma_jensen", inner, outer, ctx));
  }
  return out;
}

InequalityVerdict check_theorem_beta(const MapFamily& family, const std::vector<HermitianMatrix>& as,
                                     const std::vector<HermitianMatrix>& bs, const FunctionSpec& f,
                                     const Interval& iv, double alpha, double tol,
                                     double constant_scale) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative", alpha);
  if (as.size() != family.size() || bs.size() != family.size())
    throw ShapeError("one operator per map is required");
  require_spectra(as, iv, "A_i");
  require_spectra(bs, iv, "B_i");
  const HermitianMatrix sum_a = apply_map_family(family, as);
  const double residual = (sum_a - apply_map_family(family, bs)).frobenius_norm();
  if (residual > kConstraintSlack * std::max(1.0, sum_a.frobenius_norm()))
    throw PreconditionError("sum Phi_i(A_i) != sum Phi_i(B_i) (residual " + format_real(residual) + ")");
  const bool convex = is_convex_like(require_definite(f, iv));

  const double beta = beta_constant(f, iv, alpha) * constant_scale;
  const HermitianMatrix fa = apply_map_family(family, map_each(as, f));
  const HermitianMatrix fb = apply_map_family(family, map_each(bs, f));
  const HermitianMatrix bound = HermitianMatrix::identity(family.output_dim()) * beta + fb * alpha;

  ParamRecord ctx;
  ctx.dim = family.input_dim();
  ctx.n = static_cast<int>(as.size());
  ctx.alpha = alpha;
  ctx.lower = iv.lower;
  ctx.upper = iv.upper;
  ctx.function = f.name();
  ctx.tol = tol;
  return convex ? operator_verdict("theorem_beta", fa, bound, ctx)
                : operator_verdict("theorem_beta", bound, fa, ctx);
}

InequalityVerdict check_corollary_weighted(const std::vector<double>& p,
                                           const std::vector<HermitianMatrix>& as,
                                           const std::vector<HermitianMatrix>& bs,
                                           const FunctionSpec& f, const Interval& iv, double alpha,
                                           double tol, double constant_scale) {
  require_probability(p);
  if (as.empty()) throw ShapeError("at least one operator is required");
  const MapFamily family = MapFamily::scalar_weights(p, as.front().dim());
  InequalityVerdict v = check_theorem_beta(family, as, bs, f, iv, alpha, tol, constant_scale);
  v.inequality_id = "corollary_weighted";
  return v;
}

std::vector<InequalityVerdict> check_scalar_corollary(const std::vector<double>& p,
                                                      const std::vector<double>& x,
                                                      const std::vector<double>& y,
                                                      const FunctionSpec& f, const Interval& iv,
                                                      double alpha, MeanCondition mode, double tol,
                                                      double constant_scale) {
  if (p.size() != x.size() || p.size() != y.size() || p.empty())
    throw ShapeError("p, x and y must have the same positive length");
  require_probability(p);
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative", alpha);
  double xbar = 0.0, ybar = 0.0, fx = 0.0, fy = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!iv.contains(x[i], 1e-12) || !iv.contains(y[i], 1e-12))
      throw PreconditionError("entries must lie in [m, M]");
    xbar += p[i] * x[i];
    ybar += p[i] * y[i];
    fx += p[i] * f(clamp_to(iv, x[i]));
    fy += p[i] * f(clamp_to(iv, y[i]));
  }
  const double slack = 1e-10 * std::max({1.0, std::abs(xbar), std::abs(ybar)});
  const Curvature c = require_definite(f, iv);
  const bool convex = is_convex_like(c);
  if (mode == MeanCondition::Equal) {
    if (std::abs(xbar - ybar) > slack) throw PreconditionError("weighted means differ");
  } else {
    if (xbar > ybar + slack) throw PreconditionError("relaxed mode needs sum p x <= sum p y");
    if (!convex || !f.is_decreasing_on(iv))
      throw PreconditionError("relaxed mode needs a convex non-increasing f");
  }

  ParamRecord ctx;
  ctx.dim = 1;
  ctx.n = static_cast<int>(p.size());
  ctx.alpha = alpha;
  ctx.lower = iv.lower;
  ctx.upper = iv.upper;
  ctx.function = f.name();
  ctx.variant = mode == MeanCondition::Equal ? "equal" : "relaxed";
  ctx.tol = tol;

  auto verdict = [&](const char* id, double small, double large) {
    return convex ? scalar_verdict(id, small, large, ctx) : scalar_verdict(id, large, small, ctx);
  };

  std::vector<InequalityVerdict> out;
  const double beta = beta_constant(f, iv, alpha) * constant_scale;
  out.push_back(verdict("scalar_beta", fy, beta + alpha * fx));
  std::optional<double> k;
  try {
    k = ratio_constant(f, iv);
  } catch (const PreconditionError&) {
    k.reset();  // f changes sign on the interval
  }
  if (k) out.push_back(verdict("scalar_ratio", fy, *k * constant_scale * fx));
  const double cdiff = diff_constant(f, iv) * constant_scale;
  out.push_back(verdict("scalar_diff", fy, cdiff + fx));
  return out;
}

std::vector<InequalityVerdict> check_entropy_vonneumann(const DensityMatrix& a,
                                                        const DensityMatrix& b, double alpha,
                                                        double tol) {
  if (a.dim() != b.dim()) throw ShapeError("density matrices differ in dimension");
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative", alpha);
  const double ha = von_neumann_entropy(a);
  const double hb = von_neumann_entropy(b);
  const double d = a.dim() / std::numbers::e;
  ParamRecord ctx;
  ctx.dim = a.dim();
  ctx.alpha = alpha;
  ctx.tol = tol;
  return {scalar_verdict("vonneumann_alpha", alpha * hb, ha + alpha * d, ctx),
          scalar_verdict("vonneumann_symmetric", std::abs(ha - hb), d, ctx)};
}

std::vector<InequalityVerdict> check_entropy_tsallis(const DensityMatrix& a, const DensityMatrix& b,
                                                     double alpha, double r, double tol) {
  if (a.dim() != b.dim()) throw ShapeError("density matrices differ in dimension");
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative", alpha);
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("Tsallis parameter must lie in (0, 1]", r);
  const double ha = quantum_tsallis_entropy(a, r);
  const double hb = quantum_tsallis_entropy(b, r);
  const double c = std::pow(1.0 - r, (1.0 - r) / r) * a.dim();
  ParamRecord ctx;
  ctx.dim = a.dim();
  ctx.alpha = alpha;
  ctx.r = r;
  ctx.tol = tol;
  return {scalar_verdict("tsallis_alpha", alpha * hb, ha + alpha * c, ctx),
          scalar_verdict("tsallis_symmetric", std::abs(ha - hb), c, ctx)};
}

std::vector<FannesRow> check_fannes_comparison(int dim_from, int dim_to, double trace_distance) {
  if (dim_from < 1 || dim_to < dim_from) throw DomainError("need 1 <= dim_from <= dim_to");
  std::vector<FannesRow> rows;
  for (int d = dim_from; d <= dim_to; ++d) {
    FannesRow row;
    row.dim = d;
    row.ours = d / std::numbers::e;
    row.fannes_weak = trace_distance * std::log(double(d)) + 1.0 / std::numbers::e;
    const double gap = row.fannes_weak - row.ours;
    row.tighter = std::abs(gap) <= 1e-12 ? "equal" : (gap > 0 ? "ours" : "fannes_weak");
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

struct MeanSetup {
  HermitianMatrix z_sqrt;
  HermitianMatrix z_inv_sqrt;
  double h = 1.0;
};

MeanSetup prepare_means(const HermitianMatrix& z, const std::vector<HermitianMatrix>& xs,
                        const std::vector<HermitianMatrix>& ys, const std::vector<double>& p,
                        const Interval& iv) {
  if (xs.size() != p.size() || ys.size() != p.size() || p.empty())
    throw ShapeError("one weight per pair (X_i, Y_i) is required");
  require_probability(p);
  if (!(iv.lower > 0.0 && iv.upper > iv.lower)) throw DomainError("need 0 < m < M", iv.lower);
  MeanSetup s{sqrt_pd(z), inv_sqrt_pd(z), iv.upper / iv.lower};
  // mZ <= X <= MZ is checked on Z^{-1/2} X Z^{-1/2}.
  const Interval slack{iv.lower * (1 - 1e-9), iv.upper * (1 + 1e-9)};
  for (const auto* set : {&xs, &ys})
    for (const auto& x : *set)
      if (!spectrum_in(congruence(s.z_inv_sqrt, x), slack))
        throw PreconditionError("operators must satisfy mZ <= X <= MZ");
  const HermitianMatrix sx = weighted_sum(p, xs);
  const double residual = (sx - weighted_sum(p, ys)).frobenius_norm();
  if (residual > kConstraintSlack * std::max(1.0, sx.frobenius_norm()))
    throw PreconditionError("sum p X != sum p Y (residual " + format_real(residual) + ")");
  return s;
}

HermitianMatrix weighted_mean_sum(const HermitianMatrix& z, const std::vector<HermitianMatrix>& xs,
                                  const std::vector<double>& p, double r) {
  HermitianMatrix acc = HermitianMatrix::zero(z.dim());
  for (std::size_t i = 0; i < xs.size(); ++i) acc += natural_power_mean(z, xs[i], r) * p[i];
  return acc;
}

HermitianMatrix weighted_entropy_sum(const HermitianMatrix& z, const std::vector<HermitianMatrix>& xs,
                                     const std::vector<double>& p, double r) {
  HermitianMatrix acc = HermitianMatrix::zero(z.dim());
  for (std::size_t i = 0; i < xs.size(); ++i)
    acc += tsallis_relative_operator_entropy(z, xs[i], r) * p[i];
  return acc;
}

}  // namespace

std::vector<InequalityVerdict> check_operator_mean_bounds(const HermitianMatrix& z,
                                                          const std::vector<HermitianMatrix>& xs,
                                                          const std::vector<HermitianMatrix>& ys,
                                                          const std::vector<double>& p,
                                                          const Interval& iv, double r, double tol,
                                                          double constant_scale) {
  if (!std::isfinite(r) || std::abs(r) < kSingularBranch)
    throw DomainError("r must be finite and nonzero; the r -> 0 limit is checked separately", r);
  const MeanSetup s = prepare_means(z, xs, ys, p, iv);
  const double k = kantorovich(s.h, r) * constant_scale;
  const double c = c_of_hr(iv.lower, s.h, r) * constant_scale;
  const bool inner = r > 0.0 && r < 1.0;
  const bool upper_regime = r >= 1.0;  // the entropy bounds reverse for r < 1

  ParamRecord ctx;
  ctx.dim = z.dim();
  ctx.n = static_cast<int>(p.size());
  ctx.r = r;
  ctx.lower = iv.lower;
  ctx.upper = iv.upper;
  ctx.tol = tol;
  ctx.variant = r >= 1.0 ? "r>=1" : (r < 0.0 ? "r<0" : "0<r<1");

  const HermitianMatrix mx = weighted_mean_sum(z, xs, p, r);
  const HermitianMatrix my = weighted_mean_sum(z, ys, p, r);
  const HermitianMatrix sx = weighted_entropy_sum(z, xs, p, r);
  const HermitianMatrix sy = weighted_entropy_sum(z, ys, p, r);

  std::vector<InequalityVerdict> out;
  const HermitianMatrix mean_ratio = my * k;
  const HermitianMatrix mean_diff = z * c + my;
  if (inner) {
    out.push_back(operator_verdict("mean_ratio", mean_ratio, mx, ctx));
    out.push_back(operator_verdict("mean_diff", mean_diff, mx, ctx));
  } else {
    out.push_back(operator_verdict("mean_ratio", mx, mean_ratio, ctx));
    out.push_back(operator_verdict("mean_diff", mx, mean_diff, ctx));
  }

  const HermitianMatrix ent_ratio = (my * k - z) * (1.0 / r);
  const HermitianMatrix ent_diff = z * (c / r) + sy;
  if (upper_regime) {
    out.push_back(operator_verdict("entropy_ratio", sx, ent_ratio, ctx));
    out.push_back(operator_verdict("entropy_diff", sx, ent_diff, ctx));
  } else {
    out.push_back(operator_verdict("entropy_ratio", ent_ratio, sx, ctx));
    out.push_back(operator_verdict("entropy_diff", ent_diff, sx, ctx));
  }
  if (inner) {
    const HermitianMatrix same_side = (mx * k - z) * (1.0 / r);
    out.push_back(operator_verdict("entropy_ratio_same_side", same_side, sx, ctx));
    // S_r(Z|X) + (C/r) Z >= S_r(Z|Y) as printed; C < 0 here, so this is the
    // reflected form of entropy_diff and can fail.
    InequalityVerdict v = operator_verdict("entropy_diff_as_displayed", sy, sx + z * (c / r), ctx);
    v.informational = true;
    out.push_back(std::move(v));
  }

  // r -> 0 limit of the difference form: the constant tends to log S(h).
  const HermitianMatrix lx = weighted_entropy_sum(z, xs, p, 0.0);
  const HermitianMatrix ly = weighted_entropy_sum(z, ys, p, 0.0);
  out.push_back(operator_verdict("log_limit", ly, lx + z * (log_specht(s.h) * constant_scale), ctx));
  return out;
}

std::vector<InequalityVerdict> check_operator_mean_limits_as_stated(
    const HermitianMatrix& z, const std::vector<HermitianMatrix>& xs,
    const std::vector<HermitianMatrix>& ys, const std::vector<double>& p, const Interval& iv,
    double tol) {
  prepare_means(z, xs, ys, p, iv);
  ParamRecord ctx;
  ctx.dim = z.dim();
  ctx.n = static_cast<int>(p.size());
  ctx.r = 0.0;
  ctx.lower = iv.lower;
  ctx.upper = iv.upper;
  ctx.tol = tol;
  ctx.variant = "r->0";
  const HermitianMatrix lx = weighted_entropy_sum(z, xs, p, 0.0);
  const HermitianMatrix ly = weighted_entropy_sum(z, ys, p, 0.0);
  return {operator_verdict("limit_nonnegative", HermitianMatrix::zero(z.dim()), lx, ctx),
          operator_verdict("limit_sum", z, lx + ly, ctx)};
}

// ---------------------------------------------------------------------------
// Suites

void TrialReport::add(const TrialRecord& rec) {
  ++trials;
  if (!rec.pass) ++failures;
  informational_failures += static_cast<std::uint64_t>(rec.informational_failures);
  // A NaN margin is sticky: it is the worst possible outcome.
  const bool worse = !std::isnan(min_margin) && (std::isnan(rec.margin) || rec.margin < min_margin);
  if (trials == 1 || worse) {
    min_margin = rec.margin;
    worst_context = rec.context;
  }
}

namespace {

struct CatalogDraw {
  FunctionSpec f;
  Interval iv;
};

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"tlogt", "neglog", "power2", "tsallis05"};
  return names;
}

CatalogDraw draw_function(const std::string& name, Rng& rng, const SuiteParams& params) {
  auto bounded = [&](double lo, double hi) {
    return Interval::closed(params.lower.value_or(lo), params.upper.value_or(hi));
  };
  if (name == "tlogt") return {FunctionSpec::t_log_t(), bounded(0.0, 1.0)};
  if (name == "tsallis05") return {FunctionSpec::tsallis(0.5), bounded(0.0, 1.0)};
  if (name == "neglog") {
    const double eps = params.eps.value_or(rng.uniform(0.02, 0.5));
    return {FunctionSpec::neg_log(), bounded(eps, 1.0)};
  }
  if (name == "power2") {
    const double m = rng.uniform(0.1, 1.0);
    const double big_m = m + rng.uniform(0.5, 4.0);
    return {FunctionSpec::power(2.0), bounded(m, big_m)};
  }
  throw UsageError("unknown function '" + name + "' (expected tlogt, neglog, power2 or tsallis05)");
}

struct TrialSetup {
  int dim;
  std::string function;
};

TrialSetup pick(std::uint64_t trial, const SuiteParams& params) {
  if (params.dims.empty()) throw UsageError("dims must not be empty");
  const std::size_t nd = params.dims.size();
  TrialSetup s;
  s.dim = params.dims[trial % nd];
  s.function = params.function.value_or(catalog_names()[(trial / nd) % catalog_names().size()]);
  return s;
}

void fill_iv(ParamRecord& ctx, const Interval& iv) {
  ctx.lower = iv.lower;
  ctx.upper = iv.upper;
}

double draw_alpha(std::uint64_t trial, Rng& rng, const SuiteParams& params) {
  if (params.alpha) return *params.alpha;
  const double a = rng.uniform(0.0, 3.0);
  return trial % 5 == 0 ? 1.0 : a;
}

// Point where chord - alpha f is extremal, and the weight that puts the mean
// of {m, M} there.
double extremal_weight(const FunctionSpec& f, const Interval& iv, double alpha) {
  const ChordCoeffs chord = chord_coeffs(f, iv);
  const ScalarMap gap = [&](double t) { return chord(t) - alpha * f(t); };
  const Extremum e = is_convex_like(f.curvature_on(iv)) ? interval_max(gap, iv) : interval_min(gap, iv);
  const double lambda = (iv.upper - e.argmax) / (iv.upper - iv.lower);
  return std::clamp(lambda, 0.02, 0.98);
}

std::vector<double> extremal_weights(int n, double lambda) {
  std::vector<double> p(static_cast<std::size_t>(n), (1.0 - lambda) / (n - 1));
  p[0] = lambda;
  return p;
}

// Moves B toward the weighted mean; roles swapped on request.
void mix_toward_mean(const std::vector<double>& p, std::vector<HermitianMatrix>& as,
                     std::vector<HermitianMatrix>& bs, double lambda, bool swap) {
  const HermitianMatrix mean = weighted_sum(p, as);
  bs.clear();
  for (const auto& a : as) bs.push_back(a * (1.0 - lambda) + mean * lambda);
  if (swap) std::swap(as, bs);
}

using Verdicts = std::vector<InequalityVerdict>;
using TrialFn = Verdicts (*)(std::uint64_t, Rng&, ParamRecord&, const SuiteParams&);

std::vector<ComplexVector> lemma_vectors(int dim, Rng& rng) {
  std::vector<ComplexVector> xs;
  for (int i = 0; i < 16; ++i) xs.push_back(random_unit_vector(dim, rng));
  for (int i = 0; i < dim; ++i) xs.push_back(ComplexVector::Unit(dim, i));
  return xs;
}

Verdicts trial_lemma_jensen(std::uint64_t trial, Rng& rng, ParamRecord& ctx, const SuiteParams& params) {
  const TrialSetup s = pick(trial, params);
  const CatalogDraw d = draw_function(s.function, rng, params);
  const int n = 1 + static_cast<int>(rng.index(4));
  std::vector<PositiveMap> maps;
  switch (trial % 3) {
    case 0: {
      const int out_dim = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(s.dim)));
      const int count = 1 + static_cast<int>(rng.index(2));
      const ComplexMatrix w = random_isometry(n * count * s.dim, out_dim, rng);
      for (int i = 0; i < n; ++i) {
        KrausMap k;
        for (int j = 0; j < count; ++j) k.ops.push_back(w.block((i * count + j) * s.dim, 0, s.dim, out_dim));
        maps.emplace_back(std::move(k));
      }
      ctx.variant = "kraus";
      break;
    }
    case 1: {
      for (double w : random_simplex(static_cast<std::size_t>(n), rng))
        maps.emplace_back(WeightedConjugation{w, random_unitary(s.dim, rng)});
      ctx.variant = "conjugation";
      break;
    }
    default: {
      for (double w : random_simplex(static_cast<std::size_t>(n), rng)) maps.emplace_back(NormalizedTrace{w});
      ctx.variant = "normalized_trace";
      break;
    }
  }
  const MapFamily family(std::move(maps), s.dim);
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < n; ++i) as.push_back(random_hermitian_in(s.dim, d.iv, rng));
  ctx.dim = s.dim;
  ctx.n = n;
  ctx.function = d.f.name();
  fill_iv(ctx, d.iv);
  return check_lemma_jensen(family, as, d.f, d.iv, lemma_vectors(family.output_dim(), rng), ctx.tol);
}

OperatorInstance extremal_operator_instance(int n, int dim, const FunctionSpec& f, const Interval& iv,
                                            double alpha, Rng& rng) {
  n = std::max(n, 2);
  const std::vector<double> p = extremal_weights(n, extremal_weight(f, iv, alpha));
  const ComplexMatrix u = random_unitary(dim, rng);
  std::vector<PositiveMap> maps;
  for (double w : p) maps.emplace_back(WeightedConjugation{w, u});
  std::vector<HermitianMatrix> as;
  as.push_back(HermitianMatrix::identity(dim) * iv.lower);
  for (int i = 1; i < n; ++i) as.push_back(HermitianMatrix::identity(dim) * iv.upper);
  std::vector<HermitianMatrix> bs(static_cast<std::size_t>(n), weighted_sum(p, as));
  return {std::move(as), std::move(bs), MapFamily(std::move(maps), dim)};
}

Verdicts trial_theorem_beta(std::uint64_t trial, Rng& rng, ParamRecord& ctx, const SuiteParams& params) {
  const TrialSetup s = pick(trial, params);
  const CatalogDraw d = draw_function(s.function, rng, params);
  const double alpha = draw_alpha(trial, rng, params);
  const int n = 1 + static_cast<int>(rng.index(4));
  const std::uint64_t sub = split_seed(ctx.seed, 1);
  const std::uint64_t round = trial / (params.dims.size() * catalog_names().size());
  OperatorInstance inst = [&] {
    if (round % 5 == 4) {
      ctx.variant = "extremal";
      return extremal_operator_instance(n, s.dim, d.f, d.iv, alpha, rng);
    }
    const auto kind = static_cast<FamilyKind>(round % 4);
    ctx.variant = to_string(kind);
    return gen_equal_map_sum_operators(n, s.dim, d.iv, kind, sub);
  }();
  const std::string variant = ctx.variant;
  const std::uint64_t seed = ctx.seed;
  const InequalityVerdict v =
      check_theorem_beta(inst.family, inst.as, inst.bs, d.f, d.iv, alpha, ctx.tol, params.constant_scale);
  ctx = v.context;
  ctx.seed = seed;
  ctx.variant = variant;
  return {v};
}

Verdicts trial_corollary_weighted(std::uint64_t trial, Rng& rng, ParamRecord& ctx,
                                  const SuiteParams& params) {
  const TrialSetup s = pick(trial, params);
  const CatalogDraw d = draw_function(s.function, rng, params);
  const double alpha = draw_alpha(trial, rng, params);
  int n = 1 + static_cast<int>(rng.index(4));
  const std::uint64_t round = trial / (params.dims.size() * catalog_names().size());
  std::vector<double> p;
  std::vector<HermitianMatrix> as, bs;
  switch (round % 4) {
    case 0:
      ctx.variant = "reduction";
      p = random_simplex(static_cast<std::size_t>(n), rng);
      for (int i = 0; i < n; ++i) as.push_back(random_hermitian_in(s.dim, d.iv, rng));
      mix_toward_mean(p, as, bs, 1.0, false);
      break;
    case 3: {
      ctx.variant = "extremal";
      n = std::max(n, 2);
      p = extremal_weights(n, extremal_weight(d.f, d.iv, alpha));
      as.push_back(HermitianMatrix::identity(s.dim) * d.iv.lower);
      for (int i = 1; i < n; ++i) as.push_back(HermitianMatrix::identity(s.dim) * d.iv.upper);
      mix_toward_mean(p, as, bs, 1.0, false);
      break;
    }
    default: {
      ctx.variant = "mix";
      p = random_simplex(static_cast<std::size_t>(n), rng);
      for (int i = 0; i < n; ++i) as.push_back(random_hermitian_in(s.dim, d.iv, rng));
      const double lambda = rng.uniform();
      mix_toward_mean(p, as, bs, lambda, rng.uniform() < 0.5);
      break;
    }
  }
  const std::string variant = ctx.variant;
  const InequalityVerdict v =
      check_corollary_weighted(p, as, bs, d.f, d.iv, alpha, ctx.tol, params.constant_scale);
  const std::uint64_t seed = ctx.seed;
  ctx = v.context;
  ctx.seed = seed;
  ctx.variant = variant;
  return {v};
}

Verdicts trial_scalar_corollary(std::uint64_t trial, Rng& rng, ParamRecord& ctx,
                                const SuiteParams& params) {
  const TrialSetup s = pick(trial, params);
  const CatalogDraw d = draw_function(s.function, rng, params);
  const double alpha = draw_alpha(trial, rng, params);
  const std::size_t n = static_cast<std::size_t>(std::max(2, s.dim));
  const std::uint64_t round = trial / (params.dims.size() * catalog_names().size());
  ScalarInstance inst;
  if (round % 4 == 3) {
    inst.p = extremal_weights(static_cast<int>(n), extremal_weight(d.f, d.iv, alpha));
    inst.y.assign(n, d.iv.upper);
    inst.y[0] = d.iv.lower;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += inst.p[i] * inst.y[i];
    inst.x.assign(n, mean);
  } else {
    inst = gen_equal_weighted_mean_scalars(n, d.iv, split_seed(ctx.seed, 1));
    if (rng.uniform() < 0.5) std::swap(inst.x, inst.y);
  }
  MeanCondition mode = MeanCondition::Equal;
  if (d.f.is_decreasing_on(d.iv) && round % 2 == 1) {
    mode = MeanCondition::Relaxed;
    for (double& v : inst.x) v -= rng.uniform(0.0, 0.2) * (v - d.iv.lower);
  }
  const std::uint64_t seed = ctx.seed;
  Verdicts out = check_scalar_corollary(inst.p, inst.x, inst.y, d.f, d.iv, alpha, mode, ctx.tol,
                                        params.constant_scale);
  ctx = out.front().context;
  ctx.seed = seed;
  return out;
}

Verdicts trial_entropy_vonneumann(std::uint64_t trial, Rng& rng, ParamRecord& ctx,
                                  const SuiteParams& params) {
  const int dim = pick(trial, params).dim;
  const double alpha = draw_alpha(trial, rng, params);
  const DensityMatrix a = random_density(dim, rng);
  const DensityMatrix b = random_density(dim, rng);
  ctx.dim = dim;
  ctx.alpha = alpha;
  return check_entropy_vonneumann(a, b, alpha, ctx.tol);
}

Verdicts trial_entropy_tsallis(std::uint64_t trial, Rng& rng, ParamRecord& ctx,
                               const SuiteParams& params) {
  static const double kRs[] = {0.1, 0.5, 0.9};
  const int dim = pick(trial, params).dim;
  const double alpha = draw_alpha(trial, rng, params);
  const double r = params.r.value_or(kRs[trial % 3]);
  const DensityMatrix a = random_density(dim, rng);
  const DensityMatrix b = random_density(dim, rng);
  ctx.dim = dim;
  ctx.alpha = alpha;
  ctx.r = r;
  return check_entropy_tsallis(a, b, alpha, r, ctx.tol);
}

struct MeanInstance {
  HermitianMatrix z;
  std::vector<HermitianMatrix> xs, ys;
  std::vector<double> p;
  Interval iv;
};

MeanInstance draw_mean_instance(int dim, Rng& rng, const SuiteParams& params) {
  MeanInstance mi;
  const double m = params.lower.value_or(rng.uniform(0.2, 1.0));
  const double big_m = params.upper.value_or(m * rng.uniform(1.2, 5.0));
  mi.iv = Interval::closed(m, big_m);
  mi.z = random_hermitian_in(dim, Interval::closed(0.5, 2.0), rng);
  const int n = 1 + static_cast<int>(rng.index(3));
  mi.p = random_simplex(static_cast<std::size_t>(n), rng);
  std::vector<HermitianMatrix> as, bs;
  for (int i = 0; i < n; ++i) as.push_back(random_hermitian_in(dim, mi.iv, rng));
  mix_toward_mean(mi.p, as, bs, rng.uniform(), rng.uniform() < 0.5);
  const HermitianMatrix zs = sqrt_pd(mi.z);
  for (const auto& a : as) mi.xs.push_back(congruence(zs, a));
  for (const auto& b : bs) mi.ys.push_back(congruence(zs, b));
  return mi;
}

Verdicts trial_operator_mean(std::uint64_t trial, Rng& rng, ParamRecord& ctx, const SuiteParams& params) {
  const int dim = pick(trial, params).dim;
  double r = 0.0;
  if (params.r) {
    r = *params.r;
  } else {
    switch (trial % 3) {
      case 0: r = rng.uniform(1.0, 3.0); break;
      case 1: r = rng.uniform(-2.0, -0.05); break;
      default: r = rng.uniform(0.05, 0.95); break;
    }
  }
  const MeanInstance mi = draw_mean_instance(dim, rng, params);
  const std::uint64_t seed = ctx.seed;
  Verdicts out = check_operator_mean_bounds(mi.z, mi.xs, mi.ys, mi.p, mi.iv, r, ctx.tol,
                                            params.constant_scale);
  ctx = out.front().context;
  ctx.seed = seed;
  return out;
}

Verdicts trial_operator_mean_limits(std::uint64_t trial, Rng& rng, ParamRecord& ctx,
                                    const SuiteParams& params) {
  const int dim = pick(trial, params).dim;
  const MeanInstance mi = draw_mean_instance(dim, rng, params);
  const std::uint64_t seed = ctx.seed;
  Verdicts out = check_operator_mean_limits_as_stated(mi.z, mi.xs, mi.ys, mi.p, mi.iv, ctx.tol);
  ctx = out.front().context;
  ctx.seed = seed;
  return out;
}

std::vector<double> floored_simplex(std::size_t n, double eps, Rng& rng) {
  std::vector<double> p = random_simplex(n, rng);
  for (double& v : p) v = eps + (1.0 - n * eps) * v;
  return p;
}

std::pair<ProbVector, ProbVector> conditioned_pair(std::size_t n, double eps, ConditionTag tag, Rng& rng) {
  ProbVector p(floored_simplex(n, eps, rng), eps);
  for (int attempt = 0; attempt < kGeneratorCap; ++attempt) {
    ProbVector q(floored_simplex(n, eps, rng), eps);
    if (condition_holds(p, q, tag)) return {std::move(p), std::move(q)};
  }
  throw GeneratorExhausted("no probability pair satisfies the condition within the attempt cap");
}

double draw_eps(std::size_t n, Rng& rng, const SuiteParams& params) {
  const double eps = params.eps.value_or(rng.uniform(0.005, 0.9 / double(n)));
  if (!(eps > 0.0 && eps * double(n) < 1.0))
    throw UsageError("eps must satisfy 0 < eps < 1/n (n = " + std::to_string(n) + ")");
  return eps;
}

Verdicts reverse_common(std::uint64_t trial, Rng& rng, ParamRecord& ctx, const SuiteParams& params,
                        std::optional<double> r) {
  const std::size_t n = 2 + rng.index(5);
  const double eps = draw_eps(n, rng, params);
  const ConditionTag tag = trial % 2 == 0 ? ConditionTag::SelfDominated : ConditionTag::CrossDominated;
  const auto [p, q] = conditioned_pair(n, eps, tag, rng);
  ctx.dim = 1;
  ctx.n = static_cast<int>(n);
  ctx.eps = eps;
  ctx.r = r;
  ctx.variant = to_string(tag);
  const ReverseMargins m = r ? parametric_reverse_margins(p, q, eps, *r, tag)
                             : reverse_shannon_margins(p, q, eps, tag);
  const std::string prefix = r ? "parametric_reverse" : "reverse_shannon";
  auto verdict = [&](const std::string& id, double margin) {
    return scalar_verdict(prefix + "_" + id, 0.0, margin, ctx);
  };
  return {verdict("ratio", m.ratio), verdict("diff", m.diff)};
}

Verdicts trial_reverse_shannon(std::uint64_t trial, Rng& rng, ParamRecord& ctx, const SuiteParams& params) {
  return reverse_common(trial, rng, ctx, params, std::nullopt);
}

Verdicts trial_parametric_reverse(std::uint64_t trial, Rng& rng, ParamRecord& ctx,
                                  const SuiteParams& params) {
  const double r = params.r.value_or(rng.uniform(0.05, 3.0));
  return reverse_common(trial, rng, ctx, params, r);
}

FunctionSpec convex_test_function(std::size_t which, double c) {
  switch (which % 4) {
    case 0: return FunctionSpec::custom([](double t) { return t * t; }, Curvature::Convex, "square");
    case 1: return FunctionSpec::custom([](double t) { return std::exp(t); }, Curvature::Convex, "exp");
    case 2:
      return FunctionSpec::custom([c](double t) { return std::abs(t - c); }, Curvature::Convex, "abs_shift");
    default:
      return FunctionSpec::custom([c](double t) { return std::max(t - c, 0.0); }, Curvature::Convex, "hinge");
  }
}

Verdicts trial_fuchs(std::uint64_t, Rng& rng, ParamRecord& ctx, const SuiteParams&) {
  const std::size_t n = 2 + rng.index(7);
  std::vector<double> y(n), p(n);
  for (double& v : y) v = rng.uniform(-2.0, 2.0);
  std::sort(y.begin(), y.end(), std::greater<>());
  for (double& w : p) w = rng.uniform(0.1, 1.0);
  // Pairwise transfers toward the local weighted mean keep x p-majorized by y.
  std::vector<double> x = y;
  const int moves = 1 + static_cast<int>(rng.index(3 * n));
  for (int k = 0; k < moves; ++k) {
    const std::size_t i = rng.index(n - 1);
    const double mu = (p[i] * x[i] + p[i + 1] * x[i + 1]) / (p[i] + p[i + 1]);
    const double theta = rng.uniform();
    x[i] += theta * (mu - x[i]);
    x[i + 1] += theta * (mu - x[i + 1]);
    x[i + 1] = std::min(x[i + 1], x[i]);
  }
  const std::size_t which = rng.index(4);
  const FunctionSpec f = convex_test_function(which, rng.uniform(-2.0, 2.0));
  ctx.dim = 1;
  ctx.n = static_cast<int>(n);
  ctx.function = f.name();
  return {scalar_verdict("fuchs", 0.0, fuchs_margin(f, x, y, p), ctx)};
}

Verdicts trial_information(std::uint64_t, Rng& rng, ParamRecord& ctx, const SuiteParams& params) {
  const std::size_t n = 2 + rng.index(7);
  const double r = params.r.value_or(rng.uniform(0.05, 1.0));
  const ProbVector p(random_simplex(n, rng));
  const ProbVector q(random_simplex(n, rng));
  ctx.dim = 1;
  ctx.n = static_cast<int>(n);
  ctx.r = r;
  return {scalar_verdict("information_shannon", 0.0, information_inequality_margin(p, q), ctx),
          scalar_verdict("information_tsallis", 0.0, tsallis_information_margin(p, q, r), ctx)};
}

Verdicts trial_eigensolver(std::uint64_t trial, Rng& rng, ParamRecord& ctx, const SuiteParams& params) {
  const int dim = pick(trial, params).dim;
  ComplexMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
  const HermitianMatrix a = HermitianMatrix::from_arithmetic((g + g.adjoint()) * 0.5);
  const EigenDecomposition e = jacobi_eigh(a);
  const double recon = (e.reconstruct() - a.matrix()).norm() / std::max(1.0, a.frobenius_norm());
  const double unitarity = (e.unitary.adjoint() * e.unitary - ComplexMatrix::Identity(dim, dim)).norm();
  ctx.dim = dim;
  return {scalar_verdict("eigensolver_reconstruction", recon, 1e-10, ctx),
          scalar_verdict("eigensolver_unitarity", unitarity, 1e-10, ctx)};
}

Verdicts trial_generators(std::uint64_t trial, Rng& rng, ParamRecord& ctx, const SuiteParams& params) {
  const TrialSetup s = pick(trial, params);
  const CatalogDraw d = draw_function(s.function, rng, params);
  const ScalarInstance si =
      gen_equal_weighted_mean_scalars(static_cast<std::size_t>(std::max(2, s.dim)), d.iv, split_seed(ctx.seed, 1));
  double gap = 0.0;
  for (std::size_t i = 0; i < si.p.size(); ++i) gap += si.p[i] * (si.x[i] - si.y[i]);

  const auto kind = static_cast<FamilyKind>(trial % 4);
  const int n = 1 + static_cast<int>(rng.index(4));
  const OperatorInstance oi = gen_equal_map_sum_operators(n, s.dim, d.iv, kind, split_seed(ctx.seed, 2));
  double spread = 0.0;
  for (const auto* set : {&oi.as, &oi.bs})
    for (const auto& a : *set) {
      const std::vector<double> ev = eigenvalues(a);
      spread = std::max({spread, d.iv.lower - ev.front(), ev.back() - d.iv.upper});
    }
  ctx.dim = s.dim;
  ctx.n = n;
  ctx.function = d.f.name();
  ctx.variant = to_string(kind);
  fill_iv(ctx, d.iv);
  return {scalar_verdict("generator_scalar_means", std::abs(gap), 1e-12, ctx),
          scalar_verdict("generator_map_sum", map_sum_residual(oi), 1e-10, ctx),
          scalar_verdict("generator_spectra", spread, 1e-10, ctx)};
}

struct SuiteEntry {
  const char* id;
  TrialFn fn;
  double tol;
  bool standard;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries = {
      {"lemma_jensen", trial_lemma_jensen, kScalarTol, true},
      {"theorem_beta", trial_theorem_beta, kOperatorTol, true},
      {"corollary_weighted", trial_corollary_weighted, kOperatorTol, true},
      {"scalar_corollary", trial_scalar_corollary, kScalarTol, true},
      {"entropy_vonneumann", trial_entropy_vonneumann, kScalarTol, true},
      {"entropy_tsallis", trial_entropy_tsallis, kScalarTol, true},
      {"operator_mean", trial_operator_mean, kOperatorTol, true},
      {"reverse_shannon", trial_reverse_shannon, kScalarTol, true},
      {"parametric_reverse", trial_parametric_reverse, kScalarTol, true},
      {"fuchs", trial_fuchs, kScalarTol, true},
      {"information_inequality", trial_information, kScalarTol, true},
      {"eigensolver", trial_eigensolver, 0.0, true},
      {"generators", trial_generators, 0.0, true},
      {"operator_mean_limits_as_stated", trial_operator_mean_limits, kOperatorTol, false},
  };
  return entries;
}

const SuiteEntry& find_suite(const std::string& id) {
  for (const auto& e : registry())
    if (id == e.id) return e;
  throw UsageError("unknown suite '" + id + "'");
}

}  // namespace

const std::vector<std::string>& standard_suites() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : registry())
      if (e.standard) out.emplace_back(e.id);
    return out;
  }();
  return ids;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.id);
    return out;
  }();
  return ids;
}

TrialRecord run_trial(const std::string& suite_id, std::uint64_t trial, std::uint64_t seed,
                      const SuiteParams& params) {
  const SuiteEntry& entry = find_suite(suite_id);
  ParamRecord ctx;
  ctx.seed = split_seed(seed, trial);
  ctx.tol = entry.tol;
  Rng rng(ctx.seed);
  const std::vector<InequalityVerdict> verdicts = entry.fn(trial, rng, ctx, params);

  TrialRecord rec;
  rec.suite_id = suite_id;
  rec.trial = trial;
  rec.margin = kInf;
  rec.context = ctx;
  for (const auto& v : verdicts) {
    if (v.informational) {
      if (!v.pass) ++rec.informational_failures;
      continue;
    }
    if (!v.pass) rec.pass = false;
    if (std::isnan(v.margin) || v.margin < rec.margin) {
      rec.margin = v.margin;
      rec.context = ctx;
      rec.context.variant = ctx.variant.empty() ? v.inequality_id : ctx.variant + "/" + v.inequality_id;
    }
    if (std::isnan(v.margin)) break;
  }
  return rec;
}

TrialReport run_suite(const std::string& suite_id, std::uint64_t trials, std::uint64_t seed,
                      const SuiteParams& params, const TrialSink& sink) {
  const SuiteEntry& entry = find_suite(suite_id);
  const auto start = std::chrono::steady_clock::now();
  TrialReport report;
  report.suite_id = suite_id;
  report.min_margin = kInf;
  report.tol = entry.tol;

  const std::uint64_t workers = static_cast<std::uint64_t>(std::max(1, params.workers));
  const std::uint64_t block = 256 * workers;
  std::vector<TrialRecord> buffer;
  for (std::uint64_t first = 0; first < trials; first += block) {
    const std::uint64_t count = std::min(block, trials - first);
    buffer.assign(count, TrialRecord{});
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::uint64_t w) {
      try {
        for (std::uint64_t i = w; i < count; i += workers)
          buffer[i] = run_trial(suite_id, first + i, seed, params);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (const auto& rec : buffer) {
      if (sink) sink(rec);
      report.add(rec);
    }
  }
  if (trials == 0) report.min_margin = kInf;
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace karamata
