#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "karamata/error.hpp"
#include "karamata/scalar_bounds.hpp"

using namespace karamata;
using doctest::Approx;

namespace {

const double kE = std::numbers::e;

// Brute-force maximum on a fine grid with a local parabola-free polish; kept
// independent of interval_max.
double brute_max(const ScalarMap& g, double lo, double hi, int n = 200000) {
  double best = -INFINITY, arg = lo;
  for (int i = 0; i <= n; ++i) {
    double t = lo + (hi - lo) * i / n;
    double v = g(t);
    if (v > best) best = v, arg = t;
  }
  double step = (hi - lo) / n;
  for (int it = 0; it < 60; ++it) {
    for (double t : {arg - step, arg + step}) {
      if (t < lo || t > hi) continue;
      double v = g(t);
      if (v > best) best = v, arg = t;
    }
    step *= 0.5;
  }
  return best;
}

double specht_direct(double h) {
  double q = std::pow(h, 1.0 / (h - 1.0));
  return q / (kE * std::log(q));
}

}  // namespace

TEST_CASE("ln_r values") {
  CHECK(ln_r(0.0, 2.0) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(ln_r(1.0, 2.0) == Approx(1.0));
  CHECK(ln_r(0.5, 1.0) == 0.0);
  for (double t = 0.01; t <= 100.0; t *= 1.3) CHECK(std::abs(ln_r(1e-8, t) - std::log(t)) <= 1e-6);
  CHECK_THROWS_AS(ln_r(0.5, 0.0), DomainError);
}

TEST_CASE("chord coefficients") {
  auto c = chord_coeffs(FunctionSpec::t_log_t(), Interval::closed(0, 1));
  CHECK(c.slope == Approx(0.0));
  CHECK(c.intercept == Approx(0.0));
  auto ts = chord_coeffs(FunctionSpec::tsallis(0.3), Interval::closed(0, 1));
  CHECK(std::abs(ts.slope) < 1e-15);
  CHECK(std::abs(ts.intercept) < 1e-15);
  auto sq = chord_coeffs(FunctionSpec::custom([](double t) { return t * t; }, Curvature::Convex),
                         Interval::closed(0, 1));
  CHECK(sq.slope == Approx(1.0));
  CHECK(sq.intercept == Approx(0.0));

  auto f = FunctionSpec::neg_log();
  for (double m : {0.01, 0.3, 0.9}) {
    auto k = chord_coeffs(f, Interval::closed(m, 1.0));
    CHECK(k.slope * m + k.intercept == Approx(f(m)).epsilon(1e-12));
    CHECK(k.slope * 1.0 + k.intercept == Approx(f(1.0)).epsilon(1e-12));
  }
}

TEST_CASE("interval_max") {
  auto e = interval_max([](double t) { return -t * std::log(t); }, Interval::left_open(0, 1), 1e-10);
  CHECK(e.argmax == Approx(1.0 / kE).epsilon(1e-6));
  CHECK(e.value == Approx(1.0 / kE).epsilon(1e-12));

  auto c = interval_max([](double) { return 3.25; }, Interval::closed(-2, 5));
  CHECK(c.argmax == -2.0);
  CHECK(c.value == 3.25);

  for (double eps : {0.05, 0.2, 0.6}) {
    auto f = FunctionSpec::neg_log();
    auto ch = chord_coeffs(f, Interval::closed(eps, 1));
    auto g = interval_max([&](double t) { return ch.slope * t + ch.intercept - f(t); },
                          Interval::closed(eps, 1));
    CHECK(g.value == Approx(std::log(specht_direct(eps))).epsilon(1e-9));
  }
}

TEST_CASE("beta constant") {
  for (double alpha : {0.0, 0.5, 1.0, 3.0}) {
    CHECK(beta_constant(FunctionSpec::t_log_t(), Interval::left_open(0, 1), alpha) ==
          Approx(alpha / kE).epsilon(1e-12));
    for (double r : {0.1, 0.5, 0.9}) {
      double want = alpha * std::pow(1 - r, (1 - r) / r);
      CHECK(beta_constant(FunctionSpec::tsallis(r), Interval::left_open(0, 1), alpha) ==
            Approx(want).epsilon(1e-12));
    }
  }
  auto lin = FunctionSpec::custom([](double t) { return 2 * t + 1; }, Curvature::Linear);
  CHECK(std::abs(beta_constant(lin, Interval::closed(0, 1), 1.0)) < 1e-12);
  CHECK_THROWS_AS(beta_constant(FunctionSpec::t_log_t(), Interval::closed(0, 1), -1.0), DomainError);
}

TEST_CASE("beta at alpha 0 is the larger endpoint value") {
  auto f = FunctionSpec::power(2.0);
  for (auto iv : {Interval::closed(0.5, 3.0), Interval::closed(-2.0, 1.0)}) {
    double want = std::max(f(iv.lower), f(iv.upper));
    CHECK(beta_constant(f, iv, 0.0) == Approx(want).epsilon(1e-10));
  }
  auto nl = FunctionSpec::neg_log();
  CHECK(beta_constant(nl, Interval::closed(0.1, 1.0), 0.0) == Approx(-std::log(0.1)).epsilon(1e-10));
}

TEST_CASE("ratio constant") {
  for (double eps : {0.01, 0.1, 0.5, 0.9}) {
    CHECK(ratio_constant(FunctionSpec::neg_log(), Interval::closed(eps, 1)) ==
          Approx(std::log(eps) / (eps - 1)).epsilon(1e-12));
    for (double r : {0.25, 1.0, 2.0}) {
      double want = (std::pow(1 / eps, r) - 1) / r / (1 - eps);
      CHECK(ratio_constant(FunctionSpec::lnr_reciprocal(r), Interval::closed(eps, 1)) ==
            Approx(want).epsilon(1e-12));
    }
  }
  auto lin = FunctionSpec::custom([](double t) { return t + 1; }, Curvature::Linear);
  CHECK(ratio_constant(lin, Interval::closed(1, 2)) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ratio constant of -log decreases in eps and exceeds 1") {
  double prev = INFINITY;
  for (double eps = 0.01; eps < 0.995; eps += 0.01) {
    double k = ratio_constant(FunctionSpec::neg_log(), Interval::closed(eps, 1));
    CHECK(k > 1.0);
    CHECK(k < prev);
    prev = k;
  }
}

TEST_CASE("diff constant") {
  for (double eps : {0.01, 0.1, 0.5}) {
    Interval iv = Interval::closed(eps, 1);
    CHECK(diff_constant(FunctionSpec::neg_log(), iv) ==
          Approx(std::log(specht_direct(eps))).epsilon(1e-10));
    for (double r : {0.1, 0.5, 2.0})
      CHECK(diff_constant(FunctionSpec::lnr_reciprocal(r), iv) ==
            Approx(ls_r_constant(eps, r)).epsilon(1e-9));
  }
  auto lin = FunctionSpec::custom([](double t) { return -3 * t + 2; }, Curvature::Linear);
  CHECK(std::abs(diff_constant(lin, Interval::closed(-4, 7))) < 1e-12);
  auto f = FunctionSpec::power(3.0);
  Interval iv = Interval::closed(0.2, 2.0);
  CHECK(diff_constant(f, iv) == beta_constant(f, iv, 1.0));
}

TEST_CASE("kantorovich") {
  for (double h : {1.1, 2.0, 10.0, 100.0}) {
    CHECK(kantorovich(h, 1e-13) == 1.0);
    CHECK(kantorovich(h, 1e-7) == Approx(1.0).epsilon(1e-5));
    CHECK(kantorovich(h, 2.0) == Approx((h + 1) * (h + 1) / (4 * h)).epsilon(1e-12));
    // chord of t^2 on [1,h] over t^2
    double oracle = brute_max([h](double t) { return ((1 + h) * t - h) / (t * t); }, 1.0, h);
    CHECK(kantorovich(h, 2.0) == Approx(oracle).epsilon(1e-9));
  }
  for (double r : {-2.0, -0.5, 1.5, 3.0}) {
    double h = 1 + 1e-6;
    double oracle = brute_max(
        [&](double t) {
          double slope = (std::pow(h, r) - 1) / (h - 1);
          return (1 + slope * (t - 1)) / std::pow(t, r);
        },
        1.0, h, 1000);
    CHECK(kantorovich(h, r) == Approx(1.0).epsilon(1e-6));
    CHECK(oracle == Approx(1.0).epsilon(1e-6));
  }
  for (double h : {1.5, 4.0, 20.0})
    for (double r : {-1.0, 1.5, 3.0}) CHECK(kantorovich(h, r) >= 1.0);
}

TEST_CASE("C(h,r)") {
  for (double h : {1.1, 2.0, 10.0}) {
    CHECK(c_of_hr(0.7, h, 1e-13) == 0.0);
    CHECK(std::abs(c_of_hr(0.7, h, 1e-8)) < 1e-6);
    double oracle = brute_max([h](double t) { return (1 + h) * t - h - t * t; }, 1.0, h);
    CHECK(c_of_hr(1.0, h, 2.0) == Approx(oracle).epsilon(1e-8));
    CHECK(c_of_hr(1.0, h, 2.0) == Approx((h - 1) * (h - 1) / 4).epsilon(1e-12));
  }
  CHECK(std::abs(c_of_hr(2.0, 1 + 1e-9, 3.0)) < 1e-6);
}

TEST_CASE("specht ratio") {
  CHECK(specht(1.0) == 1.0);
  for (double h = 1.0 / 64; h <= 64.0; h *= 1.37) {
    double a = specht(h), b = specht(1 / h);
    CHECK(std::abs(a - b) <= 1e-12 * a);
  }
  double want = std::exp(1 / (kE - 1)) / (kE / (kE - 1));
  CHECK(specht(kE) == Approx(want).epsilon(1e-14));
  CHECK(diff_constant(FunctionSpec::neg_log(), Interval::closed(1 / kE, 1)) ==
        Approx(std::log(want)).epsilon(1e-10));
  CHECK(log_specht(7.5) == Approx(std::log(specht(7.5))).epsilon(1e-13));
}

TEST_CASE("ls_r") {
  for (double eps : {0.05, 0.3, 0.8}) {
    CHECK(ls_r_constant(eps, 1e-6) == Approx(log_specht(eps)).epsilon(1e-4));
    for (double r : {0.1, 0.5, 1.0, 3.0}) CHECK(ls_r_constant(eps, r) >= 0.0);
  }
  for (double r : {0.1, 1.0, 3.0}) CHECK(std::abs(ls_r_constant(1 - 1e-8, r)) < 1e-7);
}

TEST_CASE("closed forms agree with the oracle") {
  for (double eps : {0.01, 0.05, 0.2, 0.5, 0.9}) {
    Interval iv = Interval::closed(eps, 1);
    auto nl = FunctionSpec::neg_log();
    CHECK(std::abs(*ratio_closed_form(nl, iv) - ratio_oracle(nl, iv)) <= 1e-7);
    CHECK(std::abs(*beta_closed_form(nl, iv, 1.0) - beta_oracle(nl, iv, 1.0)) <= 1e-7);
    for (double r : {0.1, 0.5, 1.0, 3.0}) {
      auto f = FunctionSpec::lnr_reciprocal(r);
      CHECK(std::abs(*ratio_closed_form(f, iv) - ratio_oracle(f, iv)) <= 1e-7);
      CHECK(std::abs(*beta_closed_form(f, iv, 1.0) - beta_oracle(f, iv, 1.0)) <= 1e-7);
    }
  }
  for (double alpha : {0.0, 0.5, 2.0}) {
    auto f = FunctionSpec::t_log_t();
    Interval iv = Interval::left_open(0, 1);
    CHECK(std::abs(*beta_closed_form(f, iv, alpha) - beta_oracle(f, iv, alpha)) <= 1e-7);
  }
}

TEST_CASE("convexity check") {
  CHECK(convexity_check(FunctionSpec::t_log_t(), Interval::closed(0, 1), 1000));
  CHECK(convexity_check(FunctionSpec::neg_log(), Interval::closed(0.1, 1), 1000));
  CHECK_FALSE(convexity_check([](double t) { return -t * t; }, Interval::closed(0, 1), 1000));
}

TEST_CASE("curvature preconditions") {
  auto cube = FunctionSpec::custom([](double t) { return t * t * t; }, Curvature::Convex);
  CHECK_FALSE(convexity_check(cube, Interval::closed(-1, 1), 200));
  CHECK_THROWS_AS(ratio_constant(FunctionSpec::t_log_t(), Interval::closed(0.5, 2.0)),
                  PreconditionError);
  CHECK_THROWS_AS(FunctionSpec::neg_log()(0.0), DomainError);
}
