#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "karamata/classical_entropy.hpp"
#include "karamata/operator_calculus.hpp"
#include "karamata/random.hpp"
#include "karamata/scalar_bounds.hpp"

namespace karamata {

inline constexpr double kOperatorTol = 1e-8;
inline constexpr double kScalarTol = 1e-9;

/// Parameters that produced a verdict.
struct ParamRecord {
  int dim = 0;
  int n = 0;
  std::optional<double> r;
  std::optional<double> alpha;
  std::optional<double> eps;
  std::optional<double> lower;
  std::optional<double> upper;
  std::uint64_t seed = 0;
  std::string function;
  std::string variant;
  double tol = 0.0;
};

/// One inequality L <= R. margin is R - L for scalars and lambda_min(R - L)
/// for operators; pass iff margin >= -tol. Informational verdicts are
/// reported but never counted as failures.
struct InequalityVerdict {
  std::string inequality_id;
  double lhs_summary = 0.0;
  double rhs_summary = 0.0;
  double margin = 0.0;
  bool pass = true;
  bool informational = false;
  ParamRecord context;
};

InequalityVerdict scalar_verdict(std::string id, double lhs, double rhs, const ParamRecord& ctx);
InequalityVerdict operator_verdict(std::string id, const HermitianMatrix& lhs,
                                   const HermitianMatrix& rhs, const ParamRecord& ctx);

// ---------------------------------------------------------------------------
// Generators

struct ScalarInstance {
  std::vector<double> p;
  std::vector<double> x;
  std::vector<double> y;
};

/// p on the simplex, x and y in iv with sum p x = sum p y.
ScalarInstance gen_equal_weighted_mean_scalars(std::size_t n, const Interval& iv, std::uint64_t seed);

enum class FamilyKind {
  UniformPermutation,   // identical maps, uniform weights, B a permutation of A
  DoublyStochasticMix,  // identical maps, uniform weights, B_i = sum_j s_ij A_j
  NormalizedTrace,      // Phi_i = p_i Tr / dim with equal traces
  WeightedReduction,    // Phi_i = p_i Phi, B_i = sum_j p_j A_j
};

const char* to_string(FamilyKind kind) noexcept;
FamilyKind family_kind_from_string(const std::string& name);

struct OperatorInstance {
  std::vector<HermitianMatrix> as;
  std::vector<HermitianMatrix> bs;
  MapFamily family;
};

/// Operators with spectra in iv and sum Phi_i(A_i) = sum Phi_i(B_i).
OperatorInstance gen_equal_map_sum_operators(int n, int dim, const Interval& iv, FamilyKind kind,
                                             std::uint64_t seed);

/// |sum Phi_i(A_i) - sum Phi_i(B_i)|_F.
double map_sum_residual(const OperatorInstance& inst);

// ---------------------------------------------------------------------------
// Checkers

std::vector<InequalityVerdict> check_lemma_jensen(const MapFamily& family,
                                                  const std::vector<HermitianMatrix>& as,
                                                  const FunctionSpec& f, const Interval& iv,
                                                  const std::vector<ComplexVector>& xs,
                                                  double tol = kScalarTol);

/// sum Phi_i(f(A_i)) <= beta 1 + alpha sum Phi_i(f(B_i)); reversed with the
/// min-beta for concave f. constant_scale multiplies beta (soundness harness).
InequalityVerdict check_theorem_beta(const MapFamily& family, const std::vector<HermitianMatrix>& as,
                                     const std::vector<HermitianMatrix>& bs, const FunctionSpec& f,
                                     const Interval& iv, double alpha, double tol = kOperatorTol,
                                     double constant_scale = 1.0);

InequalityVerdict check_corollary_weighted(const std::vector<double>& p,
                                           const std::vector<HermitianMatrix>& as,
                                           const std::vector<HermitianMatrix>& bs,
                                           const FunctionSpec& f, const Interval& iv, double alpha,
                                           double tol = kOperatorTol, double constant_scale = 1.0);

enum class MeanCondition {
  Equal,    // sum p x = sum p y
  Relaxed,  // sum p x <= sum p y with f non-increasing
};

/// beta-, K- and C-forms of the commutative corollary. The K-form is
/// omitted when f is not positive on iv.
std::vector<InequalityVerdict> check_scalar_corollary(const std::vector<double>& p,
                                                      const std::vector<double>& x,
                                                      const std::vector<double>& y,
                                                      const FunctionSpec& f, const Interval& iv,
                                                      double alpha,
                                                      MeanCondition mode = MeanCondition::Equal,
                                                      double tol = kScalarTol,
                                                      double constant_scale = 1.0);

/// alpha H(B) <= H(A) + alpha dim/e and |H(A) - H(B)| <= dim/e.
std::vector<InequalityVerdict> check_entropy_vonneumann(const DensityMatrix& a,
                                                        const DensityMatrix& b, double alpha,
                                                        double tol = kScalarTol);

/// Quantum Tsallis analogue with the constant (1-r)^{(1-r)/r}.
std::vector<InequalityVerdict> check_entropy_tsallis(const DensityMatrix& a, const DensityMatrix& b,
                                                     double alpha, double r,
                                                     double tol = kScalarTol);

struct FannesRow {
  int dim = 1;
  double ours = 0.0;         // dim / e
  double fannes_weak = 0.0;  // T1 log dim + 1/e
  std::string tighter;       // "ours", "fannes_weak" or "equal"
};

std::vector<FannesRow> check_fannes_comparison(int dim_from, int dim_to, double trace_distance = 1.0);

/// Operator-mean and Tsallis relative operator entropy bounds for
/// m Z <= X_i, Y_i <= M Z with sum p X = sum p Y, where [m, M] = iv.
std::vector<InequalityVerdict> check_operator_mean_bounds(const HermitianMatrix& z,
                                                          const std::vector<HermitianMatrix>& xs,
                                                          const std::vector<HermitianMatrix>& ys,
                                                          const std::vector<double>& p,
                                                          const Interval& iv, double r,
                                                          double tol = kOperatorTol,
                                                          double constant_scale = 1.0);

/// The r -> 0 statements S_0(Z|X) >= 0 and S_0(Z|X) + S_0(Z|Y) >= Z, taken
/// literally (weighted sums over the family).
std::vector<InequalityVerdict> check_operator_mean_limits_as_stated(
    const HermitianMatrix& z, const std::vector<HermitianMatrix>& xs,
    const std::vector<HermitianMatrix>& ys, const std::vector<double>& p, const Interval& iv,
    double tol = kOperatorTol);

// ---------------------------------------------------------------------------
// Suites

struct SuiteParams {
  std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8};
  std::optional<double> r;
  std::optional<double> alpha;
  std::optional<double> eps;
  std::optional<double> lower;
  std::optional<double> upper;
  /// Restricts the suites that draw f from the catalog: tlogt, neglog,
  /// power2, tsallis05.
  std::optional<std::string> function;
  /// Multiplies beta, K and C in the checkers; 1 except in soundness tests.
  double constant_scale = 1.0;
  int workers = 1;
};

struct TrialRecord {
  std::string suite_id;
  std::uint64_t trial = 0;
  double margin = 0.0;
  bool pass = true;
  int informational_failures = 0;
  ParamRecord context;
};

struct TrialReport {
  std::string suite_id;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t informational_failures = 0;
  double min_margin = 0.0;  // +inf when trials == 0
  double tol = 0.0;
  std::optional<ParamRecord> worst_context;
  std::int64_t elapsed_ms = 0;

  /// Folds one trial in; associative over disjoint trial sets.
  void add(const TrialRecord& rec);
};

using TrialSink = std::function<void(const TrialRecord&)>;

/// Suites run by "all".
const std::vector<std::string>& standard_suites();
/// Every known suite, including the literal-statement ones not in "all".
const std::vector<std::string>& known_suites();

/// Runs trials of one suite; trial i is seeded with split_seed(seed, i).
/// The sink, when set, sees every trial in index order.
TrialReport run_suite(const std::string& suite_id, std::uint64_t trials, std::uint64_t seed,
                      const SuiteParams& params, const TrialSink& sink = nullptr);

/// Runs one trial of a suite.
TrialRecord run_trial(const std::string& suite_id, std::uint64_t trial, std::uint64_t seed,
                      const SuiteParams& params);

}  // namespace karamata
