#include "karamata/classical_entropy.hpp"

#include <cmath>
#include <limits>

#include "karamata/error.hpp"
#include "karamata/scalar_bounds.hpp"

namespace karamata {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kFloorSlack = 1e-15;
constexpr double kTagTol = 1e-12;

void require_same_size(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) throw ShapeError("probability vectors differ in length");
}

void require_floor(const ProbVector& v, double eps, const char* which) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)", eps);
  for (double x : v.probs())
    if (x < eps - kFloorSlack || x > 1.0 + kFloorSlack)
      throw PreconditionError(std::string(which) + " has a component outside [eps, 1]");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_tag(const ProbVector& p, const ProbVector& q, ConditionTag tag) {
  if (!condition_holds(p, q, tag))
    throw PreconditionError(std::string("declared condition ") + to_string(tag) +
                            " does not hold for the given pair");
}

}  // namespace

ProbVector::ProbVector(std::vector<double> probs, std::optional<double> floor)
    : probs_(std::move(probs)), floor_(floor) {
  if (probs_.empty()) throw DomainError("probability vector is empty");
  double total = 0.0;
  for (double x : probs_) {
    if (!std::isfinite(x) || x < 0.0) throw DomainError("probabilities must be finite and >= 0", x);
    total += x;
  }
  if (std::abs(total - 1.0) > kSumTol)
    throw DomainError("probabilities must sum to 1", total);
  if (floor_) require_floor(*this, *floor_, "probability vector");
}

const char* to_string(ConditionTag tag) noexcept {
  return tag == ConditionTag::SelfDominated ? "self_dominated" : "cross_dominated";
}

bool condition_holds(const ProbVector& p, const ProbVector& q, ConditionTag tag) {
  require_same_size(p, q);
  const double self = dot(p.probs(), p.probs());
  const double cross = dot(p.probs(), q.probs());
  if (tag == ConditionTag::SelfDominated) return cross <= self + kTagTol;
  return self <= cross + kTagTol;
}

double shannon_entropy(const ProbVector& p) {
  double h = 0.0;
  for (double x : p.probs())
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

double cross_term(const ProbVector& p, const ProbVector& q) {
  require_same_size(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    s -= p[i] * std::log(q[i]);
  }
  return s;
}

double tsallis_entropy(const ProbVector& p, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("tsallis entropy requires r in (0,1]", r);
  double deformed = 0.0;    // -sum p^{1-r} ln_r p
  double reciprocal = 0.0;  // sum p ln_r(1/p)
  for (double x : p.probs()) {
    if (x == 0.0) continue;
    deformed -= std::pow(x, 1.0 - r) * ln_r(r, x);
    reciprocal += x * ln_r(r, 1.0 / x);
  }
  if (std::abs(deformed - reciprocal) > 1e-8)
    throw ConsistencyError("tsallis entropy forms disagree: " + format_real(deformed) + " vs " +
                           format_real(reciprocal));
  return deformed;
}

TsallisCrossTerms tsallis_cross_terms(const ProbVector& p, const ProbVector& q, double r) {
  require_same_size(p, q);
  if (!std::isfinite(r)) throw DomainError("r must be finite");
  const double inf = std::numeric_limits<double>::infinity();
  TsallisCrossTerms out{0.0, 0.0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      // ln_r(0) = -1/r for r > 0; ln_r(1/0) diverges.
      out.weighted = r > 0.0 ? out.weighted + std::pow(p[i], 1.0 - r) / r : inf;
      out.naive = inf;
      continue;
    }
    out.weighted -= std::pow(p[i], 1.0 - r) * ln_r(r, q[i]);
    out.naive += p[i] * ln_r(r, 1.0 / q[i]);
  }
  return out;
}

double information_inequality_margin(const ProbVector& p, const ProbVector& q) {
  return cross_term(p, q) - shannon_entropy(p);
}

double tsallis_information_margin(const ProbVector& p, const ProbVector& q, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("r must lie in (0,1]", r);
  return tsallis_cross_terms(p, q, r).weighted - tsallis_entropy(p, r);
}

ReverseMargins reverse_shannon_margins(const ProbVector& p, const ProbVector& q, double eps,
                                       ConditionTag direction) {
  require_same_size(p, q);
  require_floor(p, eps, "p");
  require_floor(q, eps, "q");
  require_tag(p, q, direction);
  const double k = neglog_ratio_constant(eps);
  const double log_s = log_specht(eps);
  const double h = shannon_entropy(p);
  const double cross = cross_term(p, q);
  if (direction == ConditionTag::CrossDominated) return {h - cross / k, h - (cross - log_s)};
  return {k * cross - h, log_s + cross - h};
}

ReverseMargins parametric_reverse_margins(const ProbVector& p, const ProbVector& q, double eps,
                                          double r, ConditionTag direction) {
  require_same_size(p, q);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive", r);
  require_floor(p, eps, "p");
  require_floor(q, eps, "q");
  require_tag(p, q, direction);
  const double c1 = lnr_ratio_constant(eps, r);
  const double c2 = ls_r_constant(eps, r);
  double self = 0.0, cross = 0.0;  // sum p ln_r(1/p), sum p ln_r(1/q)
  for (std::size_t i = 0; i < p.size(); ++i) {
    self += p[i] * ln_r(r, 1.0 / p[i]);
    cross += p[i] * ln_r(r, 1.0 / q[i]);
  }
  if (direction == ConditionTag::CrossDominated) return {self - cross / c1, self - (cross - c2)};
  return {c1 * cross - self, c2 + cross - self};
}

}  // namespace karamata
