#include "karamata/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "karamata/error.hpp"

namespace karamata {

namespace {

constexpr double kPrefixTol = 1e-10;
constexpr double kWeightSumTol = 1e-12;

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ShapeError(std::string(what) + ": length mismatch");
  if (a == 0) throw ShapeError(std::string(what) + ": empty tuple");
}

double scale_of(std::span<const double> y) {
  double s = 1.0;
  for (double v : y) s = std::max(s, std::abs(v));
  return s;
}

bool non_increasing(std::span<const double> v) {
  return std::is_sorted(v.begin(), v.end(), std::greater<>());
}

void require_finite(std::span<const double> v, const char* what) {
  for (double e : v)
    if (!std::isfinite(e)) throw DomainError(std::string(what) + ": non-finite entry");
}

}  // namespace

bool is_majorized(std::span<const double> x, std::span<const double> y) {
  require_same_length(x.size(), y.size(), "is_majorized");
  require_finite(x, "is_majorized");
  require_finite(y, "is_majorized");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  const double tol = kPrefixTol * scale_of(ys);
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    if (k + 1 < xs.size() && sx > sy + tol) return false;
  }
  return std::abs(sx - sy) <= tol;
}

bool is_p_majorized(std::span<const double> x, std::span<const double> y,
                    std::span<const double> p) {
  require_same_length(x.size(), y.size(), "is_p_majorized");
  require_same_length(x.size(), p.size(), "is_p_majorized");
  require_finite(x, "is_p_majorized");
  require_finite(y, "is_p_majorized");
  require_finite(p, "is_p_majorized");
  if (!non_increasing(x) || !non_increasing(y))
    throw PreconditionError("p-majorization requires non-increasing tuples as given");
  const double tol = kPrefixTol * scale_of(y);
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += p[k] * x[k];
    sy += p[k] * y[k];
    if (k + 1 < x.size() && sx > sy + tol) return false;
  }
  return std::abs(sx - sy) <= tol;
}

double fuchs_margin(const FunctionSpec& f, std::span<const double> x, std::span<const double> y,
                    std::span<const double> p) {
  if (!is_p_majorized(x, y, p))
    throw PreconditionError("fuchs_margin: y does not p-majorize x");
  auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
  auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
  const double lo = std::min(*xlo, *ylo), hi = std::max(*xhi, *yhi);
  if (hi > lo) {
    Curvature c = f.curvature_on(Interval::closed(lo, hi));
    if (c != Curvature::Convex && c != Curvature::Linear)
      throw PreconditionError("fuchs_margin: " + f.name() + " is not convex on the entries' hull");
  }
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lhs += p[i] * f(x[i]);
    rhs += p[i] * f(y[i]);
  }
  return rhs - lhs;
}

double moment_margin(std::span<const double> p, std::span<const double> x,
                     std::span<const double> y, int m) {
  require_same_length(x.size(), y.size(), "moment_margin");
  require_same_length(x.size(), p.size(), "moment_margin");
  if (m < 1) throw DomainError("moment order must be >= 1");
  double total = 0.0;
  for (double w : p) {
    if (!(w > 0.0)) throw PreconditionError("moment_margin: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol)
    throw PreconditionError("moment_margin: weights must sum to 1");

  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  const bool uniform = std::all_of(p.begin(), p.end(), [&](double w) {
    return std::abs(w - p[0]) <= kWeightSumTol;
  });
  if (uniform) {
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::sort(ys.begin(), ys.end(), std::greater<>());
  } else if (!non_increasing(xs) || !non_increasing(ys)) {
    throw PreconditionError("moment_margin: non-uniform weights need non-increasing tuples");
  }
  const double xbar = std::inner_product(p.begin(), p.end(), xs.begin(), 0.0);
  const double ybar = std::inner_product(p.begin(), p.end(), ys.begin(), 0.0);
  for (double& v : xs) v -= xbar;
  for (double& v : ys) v -= ybar;
  if (!is_p_majorized(xs, ys, p))
    throw PreconditionError("moment_margin: centered tuples violate the p-majorization conditions");
  return fuchs_margin(FunctionSpec::power(m), xs, ys, p);
}

}  // namespace karamata
