#include "ebwave/classic.hpp"
#include "ebwave/normal.hpp"
#include "ebwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ebwave {

double sure_risk(std::span<const double> data, double t) {
    if (data.empty())
        throw DataError("empty sequence");
    const double t2 = t * t;
    double acc = double(data.size());
    for (double z : data) {
        if (!std::isfinite(z))
            throw DataError("non-finite value in input");
        const double z2 = z * z;
        acc += std::min(z2, t2);
        if (z2 <= t2) acc -= 2.0;
    }
    return acc;
}

SureResult sure_threshold(std::span<const double> data) {
    if (data.empty())
        throw DataError("empty sequence");
    const std::size_t n = data.size();
    const double tmax = std::sqrt(2.0 * std::log(double(n)));

    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(data[i]))
            throw DataError("non-finite value in input");
        a[i] = std::fabs(data[i]);
    }
    std::sort(a.begin(), a.end());

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + a[i] * a[i];

    auto risk = [&](double t) {
        // k = #{|Z| <= t}; sum min(Z^2, t^2) = prefix[k] + (n-k) t^2
        std::size_t k = std::upper_bound(a.begin(), a.end(), t) - a.begin();
        return double(n) + prefix[k] + double(n - k) * t * t - 2.0 * double(k);
    };

    SureResult best{0.0, risk(0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] > tmax) break;
        double u = risk(a[i]);
        if (u < best.u_min) best = {a[i], u};
    }
    double u_end = risk(tmax);
    if (u_end < best.u_min) best = {tmax, u_end};
    return best;
}

FdrParams::FdrParams(double q_) : q(q_) {
    if (!(q > 0.0 && q <= 0.5))
        throw std::invalid_argument("fdr parameter q must lie in (0, 1/2]");
}

double fdr_threshold(std::span<const double> data, FdrParams params) {
    if (data.empty())
        throw DataError("empty sequence");
    const std::size_t n = data.size();
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(data[i]))
            throw DataError("non-finite value in input");
        a[i] = std::fabs(data[i]);
    }
    std::sort(a.begin(), a.end(), std::greater<>());

    // largest k with |Z|_(k) >= t_k; scanning from k = n down stops at the
    // first qualifying k
    for (std::size_t k = n; k >= 1; --k) {
        double tk = upper_quantile(0.5 * params.q * double(k) / double(n));
        if (a[k - 1] >= tk)
            return tk;
    }
    return a[0] + 1.0;   // no crossing: kill everything
}

double universal_threshold(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("universal threshold needs n >= 2");
    return std::sqrt(2.0 * std::log(double(n)));
}

} // namespace ebwave
