#include "ebwave/signals.hpp"
#include "ebwave/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ebwave {

namespace {

constexpr double pos[11] = {0.1, 0.13, 0.15, 0.23, 0.25, 0.40,
                            0.44, 0.65, 0.76, 0.78, 0.81};
constexpr double blocks_h[11] = {4.0, -5.0, 3.0, -4.0, 5.0, -4.2,
                                 2.1, 4.3, -3.1, 2.1, -4.2};
constexpr double bumps_h[11] = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                2.1, 4.3, 3.1, 5.1, 4.2};
constexpr double bumps_w[11] = {0.005, 0.005, 0.006, 0.01, 0.01, 0.03,
                                0.01, 0.01, 0.005, 0.008, 0.005};

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double blocks_at(double t) {
    double s = 0.0;
    for (int j = 0; j < 11; ++j)
        s += blocks_h[j] * 0.5 * (1.0 + sgn(t - pos[j]));
    return s;
}

double bumps_at(double t) {
    double s = 0.0;
    for (int j = 0; j < 11; ++j) {
        double u = std::fabs((t - pos[j]) / bumps_w[j]);
        double b = 1.0 + u;
        b *= b;
        s += bumps_h[j] / (b * b);
    }
    return s;
}

double heavisine_at(double t) {
    return 4.0 * std::sin(4.0 * std::numbers::pi * t)
           - sgn(t - 0.3) - sgn(0.72 - t);
}

double doppler_at(double t) {
    return std::sqrt(t * (1.0 - t)) *
           std::sin(2.0 * std::numbers::pi * 1.05 / (t + 0.05));
}

} // namespace

std::vector<double> test_function(std::string_view name, std::size_t n) {
    if (n < 16)
        throw std::invalid_argument("test signal needs n >= 16");
    double (*f)(double) = nullptr;
    if (name == "blocks") f = blocks_at;
    else if (name == "bumps") f = bumps_at;
    else if (name == "doppler") f = doppler_at;
    else if (name == "heavisine") f = heavisine_at;
    else
        throw std::invalid_argument("unknown test signal: " + std::string(name));

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = f(double(i + 1) / double(n));

    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / double(n - 1));
    for (double& x : v) x /= sd;
    return v;
}

double scaled_sse(std::span<const double> estimate,
                  std::span<const double> truth, double sigma_e) {
    if (estimate.size() != truth.size())
        throw DataError("length mismatch");
    if (!(sigma_e > 0.0))
        throw std::invalid_argument("sigma_e must be positive");
    double s = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        double d = estimate[i] - truth[i];
        s += d * d;
    }
    return s / (sigma_e * sigma_e);
}

} // namespace ebwave
