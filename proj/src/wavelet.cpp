#include "ebwave/wavelet.hpp"
#include "ebwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebwave {

namespace {

// Scaling (lowpass) coefficients.  Obtained by spectral factorization of the
// Daubechies half-band polynomial in extended precision and checked against
// the orthonormality identities; daub* are the extremal-phase family, sym8
// the 8-tap least-asymmetric filter.
const double haar_c[2] = {
    0.70710678118654752, 0.70710678118654752 };
const double daub4_c[4] = {
    0.48296291314453414, 0.83651630373780791,
    0.22414386804201338, -0.12940952255126038 };
const double daub6_c[6] = {
    0.33267055295008262, 0.80689150931109258, 0.45987750211849157,
    -0.13501102001025459, -0.085441273882026662, 0.035226291885709537 };
const double daub8_c[8] = {
    0.23037781330889650, 0.71484657055291565, 0.63088076792985891,
    -0.027983769416859854, -0.18703481171909308, 0.030841381835560764,
    0.032883011666885200, -0.010597401785069032 };
const double daub10_c[10] = {
    0.16010239797419291, 0.60382926979718967, 0.72430852843777293,
    0.13842814590132073, -0.24229488706638203, -0.032244869584638375,
    0.077571493840045714, -0.0062414902127982743, -0.012580751999081999,
    0.0033357252854737713 };
const double sym8_c[8] = {
    -0.075765714789502213, -0.029635527646002492, 0.49761866763277499,
    0.80373875180513208, 0.29785779560530605, -0.099219543576633533,
    -0.012603967262031304, 0.032223100604051468 };

FilterBank make_bank(const char* name, const double* c, std::size_t len) {
    FilterBank fb;
    fb.name = name;
    fb.lowpass.assign(c, c + len);
    fb.highpass.resize(len);
    for (std::size_t m = 0; m < len; ++m) {
        double v = c[len - 1 - m];
        fb.highpass[m] = (m % 2 == 0) ? v : -v;
    }
    return fb;
}

const std::vector<FilterBank>& all_banks() {
    static const std::vector<FilterBank> banks = [] {
        std::vector<FilterBank> v;
        v.push_back(make_bank("haar", haar_c, 2));
        v.push_back(make_bank("daub4", daub4_c, 4));
        v.push_back(make_bank("daub6", daub6_c, 6));
        v.push_back(make_bank("daub8", daub8_c, 8));
        v.push_back(make_bank("daub10", daub10_c, 10));
        v.push_back(make_bank("sym8", sym8_c, 8));
        return v;
    }();
    return banks;
}

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

int log2_size(std::size_t n) {
    int j = 0;
    while ((std::size_t(1) << j) < n) ++j;
    return j;
}

void check_transform_args(std::size_t n, int coarsest) {
    if (!is_pow2(n))
        throw DataError("signal length must be a power of two >= 2");
    const int J = log2_size(n);
    if (coarsest < 0 || coarsest >= J)
        throw std::invalid_argument("coarsest level out of range");
}

// one decimated analysis step: x (length m) -> approx, detail (length m/2)
void step_analysis(const std::vector<double>& x, const FilterBank& fb,
                   std::vector<double>& approx, std::vector<double>& detail) {
    const std::size_t m = x.size(), half = m / 2, len = fb.lowpass.size();
    approx.assign(half, 0.0);
    detail.assign(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (std::size_t t = 0; t < len; ++t) {
            double v = x[(2 * k + t) % m];
            a += fb.lowpass[t] * v;
            d += fb.highpass[t] * v;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

// adjoint step: approx, detail (length m/2) -> x (length m)
std::vector<double> step_synthesis(const std::vector<double>& approx,
                                   const std::vector<double>& detail,
                                   const FilterBank& fb) {
    const std::size_t half = approx.size(), m = 2 * half,
                      len = fb.lowpass.size();
    std::vector<double> x(m, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        for (std::size_t t = 0; t < len; ++t) {
            x[(2 * k + t) % m] +=
                fb.lowpass[t] * approx[k] + fb.highpass[t] * detail[k];
        }
    }
    return x;
}

} // namespace

const FilterBank& FilterBank::get(std::string_view name) {
    for (const auto& fb : all_banks())
        if (fb.name == name) return fb;
    if (name == "daub2")   // the Haar filter under its family name
        return all_banks()[0];
    throw std::invalid_argument("unknown wavelet filter: " + std::string(name));
}

std::vector<std::string> FilterBank::available() {
    std::vector<std::string> names;
    for (const auto& fb : all_banks()) names.push_back(fb.name);
    return names;
}

Pyramid dwt_periodic(std::span<const double> signal, const FilterBank& fb,
                     int coarsest) {
    check_transform_args(signal.size(), coarsest);
    const int J = log2_size(signal.size());

    Pyramid p;
    p.coarsest = coarsest;
    p.n = signal.size();
    p.filter = &fb;
    p.detail.resize(J - coarsest);

    std::vector<double> cur(signal.begin(), signal.end());
    std::vector<double> approx, detail;
    for (int j = J - 1; j >= coarsest; --j) {
        step_analysis(cur, fb, approx, detail);
        p.detail[j - coarsest] = detail;
        cur.swap(approx);
    }
    p.scaling = cur;
    return p;
}

std::vector<double> idwt_periodic(const Pyramid& p) {
    if (!p.filter || !is_pow2(p.n))
        throw DataError("inconsistent pyramid");
    const int J = log2_size(p.n);
    if (p.levels() != J - p.coarsest ||
        p.scaling.size() != (std::size_t(1) << p.coarsest))
        throw DataError("inconsistent pyramid");
    for (int i = 0; i < p.levels(); ++i)
        if (p.detail[i].size() != (std::size_t(1) << p.level_of(i)))
            throw DataError("inconsistent level lengths");

    std::vector<double> cur = p.scaling;
    for (int i = 0; i < p.levels(); ++i)
        cur = step_synthesis(cur, p.detail[i], *p.filter);
    return cur;
}

TIPyramid ti_dwt(std::span<const double> signal, const FilterBank& fb,
                 int coarsest) {
    check_transform_args(signal.size(), coarsest);
    const std::size_t n = signal.size();
    const int J = log2_size(n);

    TIPyramid p;
    p.coarsest = coarsest;
    p.n = n;
    p.filter = &fb;
    p.detail.resize(J - coarsest);

    const std::size_t len = fb.lowpass.size();
    std::vector<double> cur(signal.begin(), signal.end());
    std::vector<double> next(n), det(n);
    for (int j = J - 1; j >= coarsest; --j) {
        const std::size_t dilation = std::size_t(1) << (J - 1 - j);
        for (std::size_t i = 0; i < n; ++i) {
            double a = 0.0, d = 0.0;
            for (std::size_t t = 0; t < len; ++t) {
                double v = cur[(i + t * dilation) % n];
                a += fb.lowpass[t] * v;
                d += fb.highpass[t] * v;
            }
            next[i] = a;
            det[i] = d;
        }
        p.detail[j - coarsest] = det;
        cur.swap(next);
    }
    p.scaling = cur;
    return p;
}

std::vector<double> ti_idwt_average_basis(const TIPyramid& p) {
    if (!p.filter || !is_pow2(p.n))
        throw DataError("inconsistent pyramid");
    const int J = log2_size(p.n);
    if (p.levels() != J - p.coarsest || p.scaling.size() != p.n)
        throw DataError("inconsistent pyramid");
    for (const auto& plane : p.detail)
        if (plane.size() != p.n)
            throw DataError("inconsistent level lengths");

    const std::size_t n = p.n, len = p.filter->lowpass.size();
    std::vector<double> cur = p.scaling, next(n);
    // walk stages from coarsest detail up; each stage averages the two
    // interleaved adjoint reconstructions, which collectively realizes the
    // mean over all 2^{J-L} time origins
    for (int i = 0; i < p.levels(); ++i) {
        const int j = p.level_of(i);
        const std::size_t dilation = std::size_t(1) << (J - 1 - j);
        const auto& det = p.detail[i];
        for (std::size_t u = 0; u < n; ++u) {
            double s = 0.0;
            for (std::size_t t = 0; t < len; ++t) {
                std::size_t idx = (u + n - (t * dilation) % n) % n;
                s += p.filter->lowpass[t] * cur[idx] +
                     p.filter->highpass[t] * det[idx];
            }
            next[u] = 0.5 * s;
        }
        cur.swap(next);
    }
    return cur;
}

double mad_sigma(std::span<const double> coeffs) {
    if (coeffs.size() < 2)
        throw DataError("need at least two coefficients");
    std::vector<double> a(coeffs.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::fabs(coeffs[i]);
    const std::size_t n = a.size();
    std::nth_element(a.begin(), a.begin() + n / 2, a.end());
    double med = a[n / 2];
    if (n % 2 == 0) {
        // even length: mean of the two central order statistics
        double lower = *std::max_element(a.begin(), a.begin() + n / 2);
        med = 0.5 * (med + lower);
    }
    const double sigma = med / 0.6745;
    if (!(sigma > 0.0))
        throw NumericError("degenerate noise estimate");
    return sigma;
}

} // namespace ebwave
