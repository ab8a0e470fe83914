#pragma once

#include <functional>
#include <optional>
#include <string>

namespace karamata {

/// Finite interval [lower, upper]; either end may be flagged open, in which
/// case optimizers and samplers stay kOpenEndOffset inside it.
struct Interval {
  double lower = 0.0;
  double upper = 1.0;
  bool open_lower = false;
  bool open_upper = false;

  static Interval closed(double lower, double upper);
  static Interval left_open(double lower, double upper);

  double scan_lower() const;
  double scan_upper() const;
  double ratio() const { return upper / lower; }
  bool contains(double t, double slack = 0.0) const {
    return t >= lower - slack && t <= upper + slack;
  }
};

inline constexpr double kOpenEndOffset = 1e-12;
inline constexpr double kSingularBranch = 1e-12;

enum class Curvature { Convex, Concave, Linear, Indefinite };

const char* to_string(Curvature c) noexcept;

using ScalarMap = std::function<double(double)>;

/// A scalar function drawn from the catalog used by the inequalities, or a
/// user supplied map with a declared curvature.
class FunctionSpec {
 public:
  enum class Kind { TLogT, NegLog, Power, TsallisF, LnRReciprocal, CentralMoment, Custom };

  /// t log t with f(0) = 0.
  static FunctionSpec t_log_t();
  /// -log t on t > 0.
  static FunctionSpec neg_log();
  /// t^r.
  static FunctionSpec power(double r);
  /// (t - t^{1-r}) / r for 0 < r <= 1, with f(0) = 0.
  static FunctionSpec tsallis(double r);
  /// ln_r(1/t) = (t^{-r} - 1) / r for r > 0.
  static FunctionSpec lnr_reciprocal(double r);
  /// (t - mean)^order.
  static FunctionSpec central_moment(int order, double mean);
  static FunctionSpec custom(ScalarMap map, Curvature declared, std::string name = "custom");

  /// Evaluates f(t); throws DomainError outside the natural domain.
  double operator()(double t) const;

  Kind kind() const noexcept { return kind_; }
  double r() const noexcept { return r_; }
  int order() const noexcept { return order_; }
  double mean() const noexcept { return mean_; }
  const std::string& name() const noexcept { return name_; }

  /// Analytic curvature on iv for catalog kinds, the declared one for Custom.
  Curvature curvature_on(const Interval& iv) const;
  bool is_decreasing_on(const Interval& iv) const;

 private:
  FunctionSpec(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  double r_ = 0.0;
  int order_ = 0;
  double mean_ = 0.0;
  Curvature declared_ = Curvature::Convex;
  ScalarMap map_;
};

/// Secant of f over [lower, upper]: f(t) <= slope*t + intercept for convex f.
struct ChordCoeffs {
  double slope = 0.0;
  double intercept = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  double f_lower = 0.0;
  double f_upper = 0.0;

  /// Evaluated from the nearer anchor so that chord(t) - f(t) keeps its
  /// relative accuracy near the endpoints.
  double operator()(double t) const;
};

struct Extremum {
  double argmax = 0.0;
  double value = 0.0;
};

/// r-logarithm (t^r - 1)/r, log t in the r -> 0 limit.
double ln_r(double r, double t);

ChordCoeffs chord_coeffs(const FunctionSpec& f, const Interval& iv);

/// Dense-grid scan followed by golden-section refinement of the best bracket.
/// Ties resolve to the smaller abscissa.
Extremum interval_max(const ScalarMap& g, const Interval& iv, double tol = 1e-12);
Extremum interval_min(const ScalarMap& g, const Interval& iv, double tol = 1e-12);

/// max_t { a_f t + b_f - alpha f(t) } for convex f (min for concave f).
double beta_constant(const FunctionSpec& f, const Interval& iv, double alpha);
std::optional<double> beta_closed_form(const FunctionSpec& f, const Interval& iv, double alpha);
double beta_oracle(const FunctionSpec& f, const Interval& iv, double alpha);

/// max_t { (a_f t + b_f) / f(t) } for f > 0 (min for concave f).
double ratio_constant(const FunctionSpec& f, const Interval& iv);
std::optional<double> ratio_closed_form(const FunctionSpec& f, const Interval& iv);
double ratio_oracle(const FunctionSpec& f, const Interval& iv);

/// Difference constant; identical to beta_constant(f, iv, 1).
double diff_constant(const FunctionSpec& f, const Interval& iv);

/// Generalized Kantorovich constant K(h, r).
double kantorovich(double h, double r);
/// C(h, r) scaled by m^r.
double c_of_hr(double m, double h, double r);
/// Specht ratio S(h); S(1) = 1.
double specht(double h);
/// log S(h), evaluated without forming S(h).
double log_specht(double h);
/// log(eps) / (eps - 1): ratio constant of -log on [eps, 1].
double neglog_ratio_constant(double eps);
/// ln_r(1/eps) / (1 - eps): ratio constant of ln_r(1/t) on [eps, 1].
double lnr_ratio_constant(double eps, double r);
/// ls_r(eps): difference constant of ln_r(1/t) on [eps, 1].
double ls_r_constant(double eps, double r);

/// Midpoint convexity on all pairs of n_samples equispaced points.
bool convexity_check(const FunctionSpec& f, const Interval& iv, int n_samples);
bool convexity_check(const ScalarMap& f, const Interval& iv, int n_samples);

}  // namespace karamata
