#include "karamata/scalar_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "karamata/error.hpp"

namespace karamata {

namespace {

constexpr int kGridPoints = 4096;
constexpr int kGoldenIterations = 200;
constexpr int kValidationPoints = 257;
constexpr int kCustomConvexitySamples = 64;

bool near(double a, double b) { return std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(b)); }

bool is_integer(double r) { return std::floor(r) == r; }

double checked_eval(const ScalarMap& g, double t) {
  double value;
  try {
    value = g(t);
  } catch (const DomainError& e) {
    throw DomainError(std::string("evaluation failed: ") + e.what(), t);
  }
  if (!std::isfinite(value)) throw DomainError("evaluation produced a non-finite value", t);
  return value;
}

// Better of two candidates, preferring the smaller abscissa on ties.
void keep_best(Extremum& best, double t, double value) {
  if (value > best.value || (value == best.value && t < best.argmax)) best = {t, value};
}

void require_shape_for_bounds(const FunctionSpec& f, const Interval& iv) {
  Curvature c = f.curvature_on(iv);
  if (c == Curvature::Indefinite)
    throw PreconditionError("function " + f.name() + " is neither convex nor concave on the interval");
  if (f.kind() != FunctionSpec::Kind::Custom) return;
  const ScalarMap eval = [&f](double t) { return f(t); };
  const ScalarMap negated = [&f](double t) { return -f(t); };
  bool ok = true;
  if (c == Curvature::Convex) ok = convexity_check(eval, iv, kCustomConvexitySamples);
  if (c == Curvature::Concave) ok = convexity_check(negated, iv, kCustomConvexitySamples);
  if (c == Curvature::Linear)
    ok = convexity_check(eval, iv, kCustomConvexitySamples) &&
         convexity_check(negated, iv, kCustomConvexitySamples);
  if (!ok)
    throw PreconditionError("custom function " + f.name() + " fails its declared " +
                            to_string(c) + " check");
}

bool concave_side(const FunctionSpec& f, const Interval& iv) {
  return f.curvature_on(iv) == Curvature::Concave;
}

}  // namespace

Interval Interval::closed(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
    throw DomainError("interval requires finite lower < upper");
  return Interval{lower, upper, false, false};
}

Interval Interval::left_open(double lower, double upper) {
  Interval iv = closed(lower, upper);
  iv.open_lower = true;
  return iv;
}

double Interval::scan_lower() const {
  return open_lower ? lower + kOpenEndOffset * std::max(1.0, std::abs(lower)) : lower;
}

double Interval::scan_upper() const {
  return open_upper ? upper - kOpenEndOffset * std::max(1.0, std::abs(upper)) : upper;
}

const char* to_string(Curvature c) noexcept {
  switch (c) {
    case Curvature::Convex: return "convex";
    case Curvature::Concave: return "concave";
    case Curvature::Linear: return "linear";
    case Curvature::Indefinite: return "indefinite";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// FunctionSpec

FunctionSpec FunctionSpec::t_log_t() { return FunctionSpec(Kind::TLogT, "tlogt"); }

FunctionSpec FunctionSpec::neg_log() { return FunctionSpec(Kind::NegLog, "neglog"); }

FunctionSpec FunctionSpec::power(double r) {
  if (!std::isfinite(r)) throw DomainError("power exponent must be finite");
  FunctionSpec f(Kind::Power, "power(" + format_real(r) + ")");
  f.r_ = r;
  return f;
}

FunctionSpec FunctionSpec::tsallis(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("tsallis parameter must lie in (0,1]");
  FunctionSpec f(Kind::TsallisF, "tsallis(" + format_real(r) + ")");
  f.r_ = r;
  return f;
}

FunctionSpec FunctionSpec::lnr_reciprocal(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ln_r(1/t) requires r > 0");
  FunctionSpec f(Kind::LnRReciprocal, "lnr_reciprocal(" + format_real(r) + ")");
  f.r_ = r;
  return f;
}

FunctionSpec FunctionSpec::central_moment(int order, double mean) {
  if (order < 1) throw DomainError("moment order must be >= 1");
  FunctionSpec f(Kind::CentralMoment, "central_moment(" + std::to_string(order) + ")");
  f.order_ = order;
  f.mean_ = mean;
  return f;
}

FunctionSpec FunctionSpec::custom(ScalarMap map, Curvature declared, std::string name) {
  if (!map) throw DomainError("custom function requires a callable");
  if (declared == Curvature::Indefinite)
    throw DomainError("custom function must declare convex, concave or linear");
  FunctionSpec f(Kind::Custom, std::move(name));
  f.map_ = std::move(map);
  f.declared_ = declared;
  return f;
}

double FunctionSpec::operator()(double t) const {
  if (std::isnan(t)) throw DomainError(name_ + ": argument is NaN", t);
  switch (kind_) {
    case Kind::TLogT:
      if (t < 0.0) throw DomainError("t log t requires t >= 0", t);
      return t == 0.0 ? 0.0 : t * std::log(t);
    case Kind::NegLog:
      if (!(t > 0.0)) throw DomainError("-log t requires t > 0", t);
      return -std::log(t);
    case Kind::Power:
      if (r_ < 0.0 && !(t > 0.0)) throw DomainError("t^r with r < 0 requires t > 0", t);
      if (!is_integer(r_) && t < 0.0) throw DomainError("t^r with fractional r requires t >= 0", t);
      return std::pow(t, r_);
    case Kind::TsallisF:
      if (t < 0.0) throw DomainError("tsallis function requires t >= 0", t);
      if (t == 0.0) return 0.0;
      // (t - t^{1-r}) / r = -t ln_r(1/t)
      return -t * std::expm1(-r_ * std::log(t)) / r_;
    case Kind::LnRReciprocal:
      if (!(t > 0.0)) throw DomainError("ln_r(1/t) requires t > 0", t);
      return std::expm1(-r_ * std::log(t)) / r_;
    case Kind::CentralMoment: {
      double d = t - mean_;
      double out = 1.0;
      for (int i = 0; i < order_; ++i) out *= d;
      return out;
    }
    case Kind::Custom: {
      double v = map_(t);
      if (!std::isfinite(v)) throw DomainError(name_ + ": non-finite value", t);
      return v;
    }
  }
  return 0.0;
}

Curvature FunctionSpec::curvature_on(const Interval& iv) const {
  switch (kind_) {
    case Kind::TLogT:
    case Kind::TsallisF:
      return iv.lower >= 0.0 ? Curvature::Convex : Curvature::Indefinite;
    case Kind::NegLog:
    case Kind::LnRReciprocal:
      return iv.lower >= 0.0 ? Curvature::Convex : Curvature::Indefinite;
    case Kind::Power:
      if (r_ == 0.0 || r_ == 1.0) return Curvature::Linear;
      if (r_ > 0.0 && r_ < 1.0) return iv.lower >= 0.0 ? Curvature::Concave : Curvature::Indefinite;
      if (r_ > 1.0) {
        if (is_integer(r_) && std::fmod(r_, 2.0) == 0.0) return Curvature::Convex;
        return iv.lower >= 0.0 ? Curvature::Convex : Curvature::Indefinite;
      }
      return iv.lower >= 0.0 ? Curvature::Convex : Curvature::Indefinite;
    case Kind::CentralMoment:
      if (order_ == 1) return Curvature::Linear;
      if (order_ % 2 == 0) return Curvature::Convex;
      if (iv.lower >= mean_) return Curvature::Convex;
      if (iv.upper <= mean_) return Curvature::Concave;
      return Curvature::Indefinite;
    case Kind::Custom:
      return declared_;
  }
  return Curvature::Indefinite;
}

bool FunctionSpec::is_decreasing_on(const Interval& iv) const {
  double lo = iv.scan_lower(), hi = iv.scan_upper();
  double prev = (*this)(lo);
  for (int i = 1; i < kValidationPoints; ++i) {
    double t = i + 1 == kValidationPoints ? hi : lo + (hi - lo) * i / (kValidationPoints - 1);
    double v = (*this)(t);
    if (v > prev + 1e-12 * std::max(1.0, std::abs(prev))) return false;
    prev = v;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Chords and the interval optimizer

double ChordCoeffs::operator()(double t) const {
  if (t - lower <= upper - t) return f_lower + slope * (t - lower);
  return f_upper + slope * (t - upper);
}

double ln_r(double r, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("ln_r requires t > 0", t);
  if (std::abs(r) < kSingularBranch) return std::log(t);
  return std::expm1(r * std::log(t)) / r;
}

ChordCoeffs chord_coeffs(const FunctionSpec& f, const Interval& iv) {
  ChordCoeffs c;
  c.lower = iv.lower;
  c.upper = iv.upper;
  try {
    c.f_lower = f(iv.lower);
    c.f_upper = f(iv.upper);
  } catch (const DomainError& e) {
    throw DomainError(std::string("chord endpoint: ") + e.what());
  }
  double width = iv.upper - iv.lower;
  c.slope = (c.f_upper - c.f_lower) / width;
  c.intercept = (iv.upper * c.f_lower - iv.lower * c.f_upper) / width;
  return c;
}

Extremum interval_max(const ScalarMap& g, const Interval& iv, double tol) {
  if (!(tol > 0.0)) throw DomainError("interval_max requires tol > 0");
  const double lo = iv.scan_lower();
  const double hi = iv.scan_upper();
  const double step = (hi - lo) / (kGridPoints - 1);

  Extremum best{lo, checked_eval(g, lo)};
  int best_index = 0;
  for (int i = 1; i < kGridPoints; ++i) {
    double t = i + 1 == kGridPoints ? hi : lo + step * i;
    double v = checked_eval(g, t);
    if (v > best.value) {
      best = {t, v};
      best_index = i;
    }
  }

  double a = best_index == 0 ? lo : lo + step * (best_index - 1);
  double b = best_index + 1 >= kGridPoints ? hi : lo + step * (best_index + 1);
  const double width_tol = tol * std::max(1.0, std::abs(best.argmax));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = checked_eval(g, c);
  double gd = checked_eval(g, d);
  Extremum refined = best;
  keep_best(refined, c, gc);
  keep_best(refined, d, gd);
  for (int it = 0; it < kGoldenIterations && b - a > width_tol; ++it) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      if (!(c > a && c < d)) break;
      gc = checked_eval(g, c);
      keep_best(refined, c, gc);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      if (!(d > c && d < b)) break;
      gd = checked_eval(g, d);
      keep_best(refined, d, gd);
    }
  }
  return refined;
}

Extremum interval_min(const ScalarMap& g, const Interval& iv, double tol) {
  Extremum e = interval_max([&g](double t) { return -g(t); }, iv, tol);
  return {e.argmax, -e.value};
}

// ---------------------------------------------------------------------------
// Closed-form constants

double kantorovich(double h, double r) {
  if (!std::isfinite(h) || !std::isfinite(r) || h < 1.0)
    throw DomainError("kantorovich requires h >= 1", h);
  if (h - 1.0 < kSingularBranch || std::abs(r) < kSingularBranch ||
      std::abs(r - 1.0) < kSingularBranch)
    return 1.0;
  const double hr = std::pow(h, r);
  const double first = (hr - h) / ((r - 1.0) * (h - 1.0));
  const double inner = ((r - 1.0) / r) * ((hr - 1.0) / (hr - h));
  return first * std::pow(inner, r);
}

double c_of_hr(double m, double h, double r) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("C(h,r) requires m > 0", m);
  if (!std::isfinite(h) || !std::isfinite(r) || h < 1.0)
    throw DomainError("C(h,r) requires h >= 1", h);
  if (h - 1.0 < kSingularBranch || std::abs(r) < kSingularBranch ||
      std::abs(r - 1.0) < kSingularBranch)
    return 0.0;
  const double hr = std::pow(h, r);
  const double base = (hr - 1.0) / (r * (h - 1.0));
  return std::pow(m, r) * ((h - hr) / (h - 1.0) + (r - 1.0) * std::pow(base, r / (r - 1.0)));
}

double log_specht(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("specht requires h > 0", h);
  if (std::abs(h - 1.0) < kSingularBranch) return 0.0;
  // q = log h^{1/(h-1)}, S = e^q / (e q)
  const double q = std::log(h) / (h - 1.0);
  return q - 1.0 - std::log(q);
}

double specht(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("specht requires h > 0", h);
  if (std::abs(h - 1.0) < kSingularBranch) return 1.0;
  const double q = std::log(h) / (h - 1.0);
  return std::exp(q) / (std::numbers::e * q);
}

double neglog_ratio_constant(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)", eps);
  return std::log(eps) / (eps - 1.0);
}

double lnr_ratio_constant(double eps, double r) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)", eps);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive", r);
  return ln_r(r, 1.0 / eps) / (1.0 - eps);
}

double ls_r_constant(double eps, double r) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)", eps);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive", r);
  if (r < kSingularBranch) return log_specht(eps);
  const double c1 = lnr_ratio_constant(eps, r);
  // c1 - c1^{r/(r+1)} - ln_r c1^{1/(r+1)}, with u = c1^{r/(r+1)} - 1 kept accurate.
  const double u = std::expm1(r * std::log(c1) / (r + 1.0));
  return (c1 - 1.0) - u - u / r;
}

// ---------------------------------------------------------------------------
// beta / K / C

std::optional<double> beta_closed_form(const FunctionSpec& f, const Interval& iv, double alpha) {
  using Kind = FunctionSpec::Kind;
  const bool unit = near(iv.lower, 0.0) && near(iv.upper, 1.0);
  const Curvature curv = f.curvature_on(iv);
  if (alpha == 0.0) {
    ChordCoeffs c = chord_coeffs(f, iv);
    return curv == Curvature::Concave ? std::min(c.f_lower, c.f_upper)
                                      : std::max(c.f_lower, c.f_upper);
  }
  if (f.kind() == Kind::TLogT && unit) return alpha / std::numbers::e;
  if (f.kind() == Kind::TsallisF && unit) {
    const double r = f.r();
    return alpha * std::pow(1.0 - r, (1.0 - r) / r);
  }
  if (alpha != 1.0) return std::nullopt;
  if (curv == Curvature::Linear && f.kind() != Kind::Custom) return 0.0;
  switch (f.kind()) {
    case Kind::NegLog:
      if (iv.lower > 0.0) return log_specht(iv.upper / iv.lower);
      break;
    case Kind::LnRReciprocal:
      if (near(iv.upper, 1.0) && iv.lower > 0.0 && iv.lower < 1.0)
        return ls_r_constant(iv.lower, f.r());
      break;
    case Kind::Power:
      if (iv.lower > 0.0) return c_of_hr(iv.lower, iv.upper / iv.lower, f.r());
      break;
    default:
      break;
  }
  return std::nullopt;
}

double beta_oracle(const FunctionSpec& f, const Interval& iv, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 0", alpha);
  require_shape_for_bounds(f, iv);
  const ChordCoeffs chord = chord_coeffs(f, iv);
  ScalarMap g = [&](double t) { return chord(t) - alpha * f(t); };
  if (concave_side(f, iv)) return interval_min(g, iv).value;
  return interval_max(g, iv).value;
}

double beta_constant(const FunctionSpec& f, const Interval& iv, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 0", alpha);
  require_shape_for_bounds(f, iv);
  if (auto closed = beta_closed_form(f, iv, alpha)) return *closed;
  return beta_oracle(f, iv, alpha);
}

double diff_constant(const FunctionSpec& f, const Interval& iv) { return beta_constant(f, iv, 1.0); }

std::optional<double> ratio_closed_form(const FunctionSpec& f, const Interval& iv) {
  using Kind = FunctionSpec::Kind;
  switch (f.kind()) {
    case Kind::NegLog:
      if (near(iv.upper, 1.0) && iv.lower > 0.0 && iv.lower < 1.0)
        return neglog_ratio_constant(iv.lower);
      break;
    case Kind::LnRReciprocal:
      if (near(iv.upper, 1.0) && iv.lower > 0.0 && iv.lower < 1.0)
        return lnr_ratio_constant(iv.lower, f.r());
      break;
    case Kind::Power:
      if (iv.lower > 0.0) return kantorovich(iv.upper / iv.lower, f.r());
      break;
    default:
      break;
  }
  return std::nullopt;
}

double ratio_oracle(const FunctionSpec& f, const Interval& iv) {
  require_shape_for_bounds(f, iv);
  const ChordCoeffs chord = chord_coeffs(f, iv);
  // A zero of f at an endpoint is removable: the chord vanishes there too.
  // Chord and f both keep full relative accuracy a few ulps inside, so the
  // one-sided limit is taken there.
  auto inward = [](double t, double toward) {
    for (int k = 0; k < 4; ++k) t = std::nextafter(t, toward);
    return t;
  };
  Interval scan = iv;
  if (chord.f_lower == 0.0) scan.lower = inward(scan.scan_lower(), iv.upper);
  if (chord.f_upper == 0.0) scan.upper = inward(scan.scan_upper(), iv.lower);
  scan.open_lower = scan.open_upper = false;
  const double lo = scan.lower, hi = scan.upper;
  for (int i = 0; i < kValidationPoints; ++i) {
    double t = i + 1 == kValidationPoints ? hi : lo + (hi - lo) * i / (kValidationPoints - 1);
    if (!(f(t) > 0.0))
      throw PreconditionError("ratio constant requires f > 0 on the interval (violated at t=" +
                              format_real(t) + ")");
  }
  ScalarMap g = [&](double t) { return chord(t) / f(t); };
  if (concave_side(f, iv)) return interval_min(g, scan).value;
  return interval_max(g, scan).value;
}

double ratio_constant(const FunctionSpec& f, const Interval& iv) {
  require_shape_for_bounds(f, iv);
  if (auto closed = ratio_closed_form(f, iv)) return *closed;
  return ratio_oracle(f, iv);
}

// ---------------------------------------------------------------------------

bool convexity_check(const ScalarMap& f, const Interval& iv, int n_samples) {
  if (n_samples < 3) throw PreconditionError("convexity_check needs at least 3 samples");
  const double lo = iv.scan_lower(), hi = iv.scan_upper();
  // Midpoints of grid pairs (i, j) are the half-step points with index i + j.
  const int fine = 2 * n_samples - 1;
  std::vector<double> values(fine);
  for (int k = 0; k < fine; ++k) {
    double t = k + 1 == fine ? hi : lo + (hi - lo) * k / (fine - 1);
    values[k] = checked_eval(f, t);
  }
  for (int i = 0; i < n_samples; ++i)
    for (int j = i + 1; j < n_samples; ++j)
      if (values[i + j] > 0.5 * (values[2 * i] + values[2 * j]) + 1e-10) return false;
  return true;
}

bool convexity_check(const FunctionSpec& f, const Interval& iv, int n_samples) {
  return convexity_check([&f](double t) { return f(t); }, iv, n_samples);
}

}  // namespace karamata
