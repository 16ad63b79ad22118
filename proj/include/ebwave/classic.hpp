#ifndef EBWAVE_CLASSIC_HPP
#define EBWAVE_CLASSIC_HPP

// Baseline threshold selectors for a unit-noise sequence: Stein's unbiased
// risk estimate for soft thresholding, the level-wise false discovery rate
// rule, and the universal threshold sqrt(2 log n).

#include <cstddef>
#include <span>

namespace ebwave {

struct SureResult {
    double t_hat = 0.0;   // minimizing threshold
    double u_min = 0.0;   // minimized risk estimate U(t_hat)
};

// The unbiased risk estimate for soft thresholding at t:
//   U(t) = n + sum(Z_k^2 ^ t^2) - 2 #{Z_k^2 <= t^2}.
double sure_risk(std::span<const double> data, double t);

// Minimize U(t) over t in [0, sqrt(2 log n)].  U only changes value at the
// |Z_k|, so the minimum is attained on {0} u {|Z_k|} u {sqrt(2 log n)};
// ties resolve to the smallest threshold.
SureResult sure_threshold(std::span<const double> data);

struct FdrParams {
    double q = 0.05;
    explicit FdrParams(double q_);
};

// Order |Z| decreasingly, compare with the quantile boundary
// t_k = z(q/2 * k/n), and return t at the last crossing (ties count).
// With no crossing returns max|Z| + 1, which kills every coefficient.
double fdr_threshold(std::span<const double> data, FdrParams params);

// sqrt(2 log n), n >= 2.
double universal_threshold(std::size_t n);

} // namespace ebwave

#endif
