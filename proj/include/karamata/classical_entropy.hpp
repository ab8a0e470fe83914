#pragma once

#include <optional>
#include <span>
#include <vector>

namespace karamata {

/// Probability vector, optionally with a floor eps such that every entry
/// lies in [eps, 1].
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> probs, std::optional<double> floor = std::nullopt);

  std::span<const double> probs() const noexcept { return probs_; }
  std::optional<double> floor() const noexcept { return floor_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  ProbVector with_floor(double eps) const { return ProbVector(probs_, eps); }

 private:
  std::vector<double> probs_;
  std::optional<double> floor_;
};

enum class ConditionTag {
  SelfDominated,   // sum p_i q_i <= sum p_i^2
  CrossDominated,  // sum p_i^2 <= sum p_i q_i
};

const char* to_string(ConditionTag tag) noexcept;

/// Whether the inner-product condition named by tag holds (within 1e-12).
bool condition_holds(const ProbVector& p, const ProbVector& q, ConditionTag tag);

double shannon_entropy(const ProbVector& p);

/// -sum p_i log q_i; +infinity when some q_i = 0 with p_i > 0.
double cross_term(const ProbVector& p, const ProbVector& q);

/// Tsallis entropy, computed as -sum p^{1-r} ln_r p and as sum p ln_r(1/p).
/// Throws ConsistencyError when the two disagree beyond 1e-8.
double tsallis_entropy(const ProbVector& p, double r);

struct TsallisCrossTerms {
  double weighted;  // -sum p_i^{1-r} ln_r q_i
  double naive;     // sum p_i ln_r(1/q_i)
};

TsallisCrossTerms tsallis_cross_terms(const ProbVector& p, const ProbVector& q, double r);

/// cross_term(p, q) - shannon_entropy(p).
double information_inequality_margin(const ProbVector& p, const ProbVector& q);

/// -sum p^{1-r} ln_r q + sum p^{1-r} ln_r p, the r-deformed information
/// inequality margin.
double tsallis_information_margin(const ProbVector& p, const ProbVector& q, double r);

struct ReverseMargins {
  double ratio = 0.0;
  double diff = 0.0;
};

/// Ratio- and difference-type reverses of the information inequality for
/// p, q with entries in [eps, 1]. The tag selects which pair is checked and
/// must hold.
ReverseMargins reverse_shannon_margins(const ProbVector& p, const ProbVector& q, double eps,
                                       ConditionTag direction);

/// r-deformed analogue of reverse_shannon_margins with c1 = ln_r(1/eps)/(1-eps)
/// and c2 = ls_r(eps).
ReverseMargins parametric_reverse_margins(const ProbVector& p, const ProbVector& q, double eps,
                                          double r, ConditionTag direction);

}  // namespace karamata
