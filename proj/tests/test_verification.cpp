#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "karamata/error.hpp"
#include "karamata/io.hpp"
#include "karamata/random.hpp"
#include "karamata/verification.hpp"

using namespace karamata;
using doctest::Approx;
using Vec = std::vector<double>;

namespace {

double weighted_mean(const Vec& p, const Vec& v) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * v[i];
  return s;
}

const InequalityVerdict& find(const std::vector<InequalityVerdict>& vs, const std::string& id) {
  for (const auto& v : vs)
    if (v.inequality_id == id) return v;
  FAIL("missing verdict " << id);
  return vs.front();
}

}  // namespace

TEST_CASE("scalar generator contract") {
  Interval iv = Interval::closed(0.2, 3.0);
  for (int i = 0; i < 10000; ++i) {
    std::size_t n = 2 + i % 7;
    auto inst = gen_equal_weighted_mean_scalars(n, iv, split_seed(1, i));
    double ps = 0;
    for (double v : inst.p) {
      ps += v;
      CHECK(v > 0);
    }
    CHECK(std::abs(ps - 1) <= 1e-12);
    for (double v : inst.x) CHECK(iv.contains(v));
    for (double v : inst.y) CHECK(iv.contains(v));
    CHECK(std::abs(weighted_mean(inst.p, inst.x) - weighted_mean(inst.p, inst.y)) <= 1e-12);
  }
  CHECK_THROWS(gen_equal_weighted_mean_scalars(1, iv, 0));
}

TEST_CASE("operator generator contract") {
  Interval iv = Interval::closed(0.5, 2.0);
  for (auto kind : {FamilyKind::UniformPermutation, FamilyKind::DoublyStochasticMix,
                    FamilyKind::NormalizedTrace, FamilyKind::WeightedReduction}) {
    for (int i = 0; i < 2500; ++i) {
      int n = 1 + i % 4, dim = 1 + i % 5;
      auto inst = gen_equal_map_sum_operators(n, dim, iv, kind, split_seed(2, i));
      CHECK(map_sum_residual(inst) <= 1e-10);
      for (const auto& a : inst.as) CHECK(spectrum_in(a, iv));
      for (const auto& b : inst.bs) CHECK(spectrum_in(b, iv));
    }
  }
  auto single = gen_equal_map_sum_operators(1, 3, iv, FamilyKind::UniformPermutation, 5);
  CHECK((single.as[0].matrix() - single.bs[0].matrix()).norm() == 0.0);
  auto dens = gen_equal_map_sum_operators(3, 4, Interval::closed(0, 1), FamilyKind::NormalizedTrace, 9);
  for (const auto& a : dens.as) CHECK(a.trace() == Approx(1.0).epsilon(1e-12));
  CHECK(family_kind_from_string("doubly_stochastic_mix") == FamilyKind::DoublyStochasticMix);
  CHECK_THROWS_AS(family_kind_from_string("kraus"), Error);
}

TEST_CASE("lemma examples") {
  Vec d{0.2, 0.7, 1.5};
  auto a = HermitianMatrix::diagonal(d);
  auto fam = MapFamily::uniform_identity(1, 3);
  std::vector<ComplexVector> basis;
  for (int k = 0; k < 3; ++k) basis.push_back(ComplexVector::Unit(3, k));
  for (const auto& v : check_lemma_jensen(fam, {a}, FunctionSpec::t_log_t(), Interval::closed(0, 2), basis))
    CHECK(std::abs(v.margin) <= 1e-14);
  Rng rng(4);
  std::vector<ComplexVector> xs{random_unit_vector(3, rng), random_unit_vector(3, rng)};
  auto lin = FunctionSpec::custom([](double t) { return 3 * t - 1; }, Curvature::Linear);
  auto fam3 = MapFamily::uniform_identity(2, 3);
  auto b = random_hermitian_in(3, Interval::closed(0, 2), rng);
  for (const auto& v : check_lemma_jensen(fam3, {a, b}, lin, Interval::closed(0, 2), xs))
    CHECK(std::abs(v.margin) <= 1e-12);
  for (const auto& v : check_lemma_jensen(fam3, {a, b}, FunctionSpec::power(2), Interval::closed(0, 2), xs))
    CHECK(v.pass);
}

TEST_CASE("theorem examples") {
  Interval iv = Interval::closed(0.5, 2.0);
  auto f = FunctionSpec::power(2.0);
  auto inst = gen_equal_map_sum_operators(3, 4, iv, FamilyKind::DoublyStochasticMix, 12);
  auto same = check_theorem_beta(inst.family, inst.as, inst.as, f, iv, 1.0);
  CHECK(same.margin == Approx(beta_constant(f, iv, 1.0)).epsilon(1e-10));
  CHECK(same.margin >= 0);

  auto v0 = check_theorem_beta(inst.family, inst.as, inst.bs, f, iv, 0.0);
  double direct = lambda_min(std::max(f(iv.lower), f(iv.upper)) * HermitianMatrix::identity(4) -
                             apply_map_family(inst.family, [&] {
                               std::vector<HermitianMatrix> fa;
                               for (const auto& a : inst.as) fa.push_back(apply_function(f, a));
                               return fa;
                             }()));
  CHECK(v0.margin == Approx(direct).epsilon(1e-10));
  CHECK(v0.pass);

  auto bad = FunctionSpec::custom([](double t) { return std::sin(3 * t); }, Curvature::Convex);
  CHECK_THROWS_AS(check_theorem_beta(inst.family, inst.as, inst.bs, bad, iv, 1.0), PreconditionError);
  auto other = gen_equal_map_sum_operators(3, 4, iv, FamilyKind::DoublyStochasticMix, 13);
  CHECK_THROWS_AS(check_theorem_beta(inst.family, inst.as, other.bs, f, iv, 1.0), PreconditionError);
}

TEST_CASE("weighted corollary and its scalar reduction") {
  Interval iv = Interval::closed(0.1, 1.0);
  auto f = FunctionSpec::neg_log();
  Rng rng(14);
  Vec p{0.2, 0.3, 0.5};
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < 3; ++i) as.push_back(random_hermitian_in(3, iv, rng));
  auto mean = 0.2 * as[0] + 0.3 * as[1] + 0.5 * as[2];
  auto v = check_corollary_weighted(p, as, {mean, mean, mean}, f, iv, 1.0);
  CHECK(v.margin >= -1e-8);

  auto one = check_corollary_weighted({1.0}, {as[0]}, {as[0]}, f, iv, 1.0);
  CHECK(one.margin == Approx(beta_constant(f, iv, 1.0)).epsilon(1e-10));

  auto inst = gen_equal_weighted_mean_scalars(4, iv, 77);
  std::vector<HermitianMatrix> xa, ya;
  for (std::size_t i = 0; i < 4; ++i) {
    xa.push_back(HermitianMatrix::diagonal(Vec{inst.x[i]}));
    ya.push_back(HermitianMatrix::diagonal(Vec{inst.y[i]}));
  }
  // y sits on the left of the commutative form, so it plays the role of A.
  auto op = check_corollary_weighted(inst.p, ya, xa, f, iv, 0.7);
  auto sc = check_scalar_corollary(inst.p, inst.x, inst.y, f, iv, 0.7);
  CHECK(op.margin == Approx(find(sc, "scalar_beta").margin).epsilon(1e-12));
}

TEST_CASE("scalar corollary examples") {
  Interval iv = Interval::closed(1.0 / 6, 1.0);
  Vec p{1.0 / 3, 1.0 / 3, 1.0 / 3}, q{1.0 / 6, 1.0 / 3, 0.5};
  auto vs = check_scalar_corollary(p, p, q, FunctionSpec::neg_log(), iv, 1.0);
  CHECK(vs.size() == 3);
  for (const auto& v : vs) CHECK(v.pass);

  Vec y{0.2, 0.9, 0.6};
  double ybar = weighted_mean(p, y);
  auto reduce = check_scalar_corollary(p, Vec(3, ybar), y, FunctionSpec::neg_log(), iv, 1.0);
  for (const auto& v : reduce) CHECK(v.pass);

  auto tl = check_scalar_corollary(p, p, q, FunctionSpec::t_log_t(), Interval::closed(0, 1), 1.0);
  CHECK(tl.size() == 2);

  Vec x{0.2, 0.3, 0.4};
  CHECK_THROWS_AS(check_scalar_corollary(p, x, q, FunctionSpec::neg_log(), iv, 1.0), PreconditionError);
  CHECK_NOTHROW(check_scalar_corollary(p, x, q, FunctionSpec::neg_log(), iv, 1.0, MeanCondition::Relaxed));
  CHECK_THROWS_AS(check_scalar_corollary(p, x, q, FunctionSpec::power(2), Interval::closed(0.1, 1),
                                         1.0, MeanCondition::Relaxed),
                  PreconditionError);
}

TEST_CASE("entropy examples") {
  Rng rng(20);
  for (int dim : {2, 5}) {
    auto a = random_density(dim, rng), b = random_density(dim, rng);
    auto zero = check_entropy_vonneumann(a, b, 0.0);
    CHECK(zero.front().margin == Approx(von_neumann_entropy(a)).epsilon(1e-12));
    auto same = check_entropy_vonneumann(a, a, 1.0);
    CHECK(same.front().margin == Approx(dim / std::numbers::e).epsilon(1e-12));
    auto ts0 = check_entropy_tsallis(a, b, 0.0, 0.4);
    CHECK(ts0.front().margin == Approx(quantum_tsallis_entropy(a, 0.4)).epsilon(1e-12));
    auto vn = check_entropy_vonneumann(a, b, 1.3);
    auto ts = check_entropy_tsallis(a, b, 1.3, 1e-6);
    REQUIRE(vn.size() == ts.size());
    for (std::size_t i = 0; i < vn.size(); ++i) CHECK(std::abs(vn[i].margin - ts[i].margin) <= 1e-3);
  }
  auto a = random_density(3, rng);
  CHECK_THROWS(check_entropy_tsallis(a, a, 1.0, 1.5));
  CHECK_THROWS(check_entropy_vonneumann(a, random_density(2, rng), 1.0));
}

TEST_CASE("fannes comparison") {
  auto rows = check_fannes_comparison(1, 10);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].ours == Approx(1 / std::numbers::e));
  CHECK(rows[0].fannes_weak == Approx(1 / std::numbers::e));
  CHECK(rows[0].tighter == "equal");
  for (const auto& r : rows) {
    CHECK(r.ours == Approx(r.dim / std::numbers::e));
    CHECK(r.fannes_weak == Approx(std::log(double(r.dim)) + 1 / std::numbers::e));
    if (r.dim >= 2 && r.dim <= 5) CHECK(r.tighter == "ours");
    if (r.dim >= 6) CHECK(r.tighter == "fannes_weak");
  }
  CHECK(rows[4].ours == Approx(1.839).epsilon(1e-3));
  CHECK(rows[5].fannes_weak == Approx(2.160).epsilon(1e-3));
}

TEST_CASE("operator mean examples") {
  Rng rng(23);
  Interval iv = Interval::closed(0.5, 2.0);
  auto z = random_hermitian_in(3, Interval::closed(0.5, 2.0), rng);
  auto a = random_hermitian_in(3, iv, rng);
  auto zh = sqrt_pd(z);
  auto x = congruence(zh, a);
  for (double r : {2.0, -1.0}) {
    auto vs = check_operator_mean_bounds(z, {x}, {x}, {1.0}, iv, r);
    auto& mr = find(vs, "mean_ratio");
    double k = kantorovich(4.0, r);
    CHECK(k >= 1.0);
    CHECK(mr.margin == Approx(lambda_min((k - 1) * natural_power_mean(z, x, r))).epsilon(1e-9));
    for (const auto& v : vs)
      if (!v.informational) CHECK(v.pass);
  }
  auto lim = check_operator_mean_limits_as_stated(z, {x}, {x}, {1.0}, iv);
  auto& nonneg = find(lim, "limit_nonnegative");
  CHECK(nonneg.margin == Approx(lambda_min(tsallis_relative_operator_entropy(z, x, 0.0))).epsilon(1e-12));

  auto outside = congruence(zh, 3.0 * HermitianMatrix::identity(3));
  CHECK_THROWS_AS(check_operator_mean_bounds(z, {outside}, {outside}, {1.0}, iv, 2.0), PreconditionError);
}

TEST_CASE("run_suite basics") {
  SuiteParams params;
  auto empty = run_suite("theorem_beta", 0, 1, params);
  CHECK(empty.trials == 0);
  CHECK(empty.failures == 0);
  CHECK(std::isinf(empty.min_margin));
  CHECK_THROWS_AS(run_suite("no_such_suite", 1, 1, params), UsageError);

  params.dims = {4};
  auto rep = run_suite("theorem_beta", 1000, 42, params);
  CHECK(rep.failures == 0);
  CHECK(rep.trials == 1000);

  SuiteParams small;
  small.dims = {2, 3};
  for (const auto& id : standard_suites()) {
    auto r1 = run_suite(id, 40, 9, small), r2 = run_suite(id, 40, 9, small);
    CHECK(to_json(r1).dump() == to_json(r2).dump());
    CHECK(r1.failures == 0);
  }
}

TEST_CASE("aggregation does not depend on the worker count") {
  SuiteParams one, four;
  one.dims = four.dims = {2, 3, 4};
  four.workers = 4;
  for (const char* id : {"corollary_weighted", "operator_mean", "fuchs"}) {
    CHECK(to_json(run_suite(id, 600, 5, one)).dump() == to_json(run_suite(id, 600, 5, four)).dump());
  }
}

TEST_CASE("trial report folding") {
  TrialReport rep;
  rep.tol = 1e-8;
  TrialRecord a{"s", 0, 0.5, true, 0, {}}, b{"s", 1, -1.0, false, 2, {}}, c{"s", 2, 0.1, true, 0, {}};
  rep.add(a), rep.add(b), rep.add(c);
  CHECK(rep.trials == 3);
  CHECK(rep.failures == 1);
  CHECK(rep.informational_failures == 2);
  CHECK(rep.min_margin == -1.0);
  REQUIRE(rep.worst_context.has_value());
}

TEST_CASE("halved constants are caught") {
  SuiteParams params;
  params.dims = {2, 3, 4};
  params.constant_scale = 0.5;
  for (const char* id : {"theorem_beta", "corollary_weighted", "scalar_corollary", "operator_mean"}) {
    auto rep = run_suite(id, 400, 3, params);
    INFO(id);
    CHECK(rep.failures > 0);
  }
}
