#pragma once

#include <span>
#include <vector>

#include "karamata/scalar_bounds.hpp"

namespace karamata {

/// x is majorized by y: prefix sums of the decreasing rearrangements are
/// dominated and the totals agree. Comparisons use 1e-10 relative to
/// max(1, |y|_inf).
bool is_majorized(std::span<const double> x, std::span<const double> y);

/// Weighted, order-sensitive majorization for non-increasing x and y.
/// The weights may be signed. Throws PreconditionError when x or y is not
/// non-increasing as given.
bool is_p_majorized(std::span<const double> x, std::span<const double> y,
                    std::span<const double> p);

/// sum p_i f(y_i) - sum p_i f(x_i); non-negative whenever y p-majorizes x and
/// f is convex on the hull of the entries.
double fuchs_margin(const FunctionSpec& f, std::span<const double> x, std::span<const double> y,
                    std::span<const double> p);

/// sum p_i (y_i - ybar)^m - sum p_i (x_i - xbar)^m for a probability vector p.
/// With uniform p the tuples are sorted first; otherwise they must already be
/// non-increasing. The centered tuples must satisfy the p-majorization
/// conditions and t^m must be convex on their hull.
double moment_margin(std::span<const double> p, std::span<const double> x,
                     std::span<const double> y, int m);

}  // namespace karamata
