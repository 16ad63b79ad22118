#include "ebwave/normal.hpp"

#include <cmath>
#include <limits>

namespace ebwave {

namespace {

// Crossover between erfc-based evaluation and the asymptotic series for the
// Mills ratio.  phi(35) ~ 8e-267 is still a normal double, and five terms of
// the series at x=35 are accurate to ~1e-16, so the two branches agree there.
constexpr double mills_switch = 35.0;

// Asymptotic series x*M(x) = 1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...
double mills_series_over_x(double x) {
    const double ix2 = 1.0 / (x * x);
    return 1.0 + ix2 * (-1.0 + ix2 * (3.0 + ix2 * (-15.0 + ix2 * 105.0)));
}

} // namespace

double phi(double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double log_phi(double x) {
    return -0.5 * x * x - log_sqrt_2pi;
}

double Phi(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double phi_bar(double x) {
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

double mills_ratio(double x) {
    if (x > mills_switch)
        return mills_series_over_x(x) / x;
    if (x >= -mills_switch)
        return phi_bar(x) / phi(x);
    // deep lower tail: phi_bar ~ 1, ratio ~ exp(x^2/2)*sqrt(2pi); may overflow
    return std::exp(log_mills(x));
}

double log_mills(double x) {
    if (x > mills_switch)
        return std::log(mills_series_over_x(x)) - std::log(x);
    if (x >= -mills_switch)
        return std::log(phi_bar(x)) - log_phi(x);
    // log phi_bar(x) = log(1 - phi_bar(-x)) with phi_bar(-x) tiny
    return std::log1p(-phi_bar(-x)) + 0.5 * x * x + log_sqrt_2pi;
}

double log_Phi(double x) {
    return log_phi_bar(-x);
}

double log_phi_bar(double x) {
    if (x > mills_switch)
        return log_phi(x) + log_mills(x);
    if (x >= -mills_switch)
        return std::log(phi_bar(x));
    return std::log1p(-phi_bar(-x));
}

namespace {

// Rational approximation for Phi^{-1} (Acklam's coefficients), |rel err| < 1.2e-9
double quantile_estimate(double p) {
    static const double a[6] = {
        -3.969683028665376e+01,  2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01,  2.506628277459239e+00 };
    static const double b[5] = {
        -5.447609879822406e+01,  1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01 };
    static const double c[6] = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00,  4.374664141464968e+00,  2.938163982698783e+00 };
    static const double d[4] = {
         7.784695709041462e-03,  3.224671290700398e-01,  2.445134137142996e+00,
         3.754408661907416e+00 };
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0]*q+c[1])*q+c[2])*q+c[3])*q+c[4])*q+c[5]) /
               ((((d[0]*q+d[1])*q+d[2])*q+d[3])*q+1.0);
    }
    if (p > phigh) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0]*q+c[1])*q+c[2])*q+c[3])*q+c[4])*q+c[5]) /
                ((((d[0]*q+d[1])*q+d[2])*q+d[3])*q+1.0);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0]*r+a[1])*r+a[2])*r+a[3])*r+a[4])*r+a[5])*q /
           (((((b[0]*r+b[1])*r+b[2])*r+b[3])*r+b[4])*r+1.0);
}

} // namespace

double quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return  std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    double x = quantile_estimate(p);
    // One Halley step.  Evaluate the CDF through whichever tail is small so
    // the residual keeps relative accuracy.
    double cdf = (x < 0.0) ? phi_bar(-x) : Phi(x);
    double pdf = phi(x);
    if (pdf > 0.0) {
        double u = (cdf - p) / pdf;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double upper_quantile(double p) {
    return -quantile(p);
}

double upper_quantile_log(double logp) {
    if (logp >= 0.0) return -std::numeric_limits<double>::infinity();
    if (logp > -600.0)
        return -quantile(std::exp(logp));
    // Newton on log_phi_bar(y) = logp; d/dy log_phi_bar = -1/M(y)
    double y = std::sqrt(-2.0 * logp);
    for (int i = 0; i < 6; ++i) {
        double step = (log_phi_bar(y) - logp) * mills_ratio(y);
        y += step;
        if (std::fabs(step) < 1e-14 * y) break;
    }
    return y;
}

double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double hi = a > b ? a : b;
    double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace ebwave
