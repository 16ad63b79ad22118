#include "ebwave/ebayes.hpp"
#include "ebwave/normal.hpp"
#include "ebwave/wavelet.hpp"
#include "ebwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace ebwave {

namespace {

// Weight floor when the universal-threshold cap is disabled.  Far below any
// weight reachable from real data; keeps t(w) finite.
constexpr double uncapped_weight_floor = 1e-12;

constexpr double a_min = 0.04, a_max = 3.0;

void check_finite(std::span<const double> data) {
    if (data.empty())
        throw DataError("empty sequence");
    for (double v : data)
        if (!std::isfinite(v))
            throw DataError("non-finite value in input");
}

// Likelihood ratios r_i = g(|z|_(i))/phi(|z|_(i)) in ascending |z| order.
// Sorting fixes the summation order of the score so the fit is invariant
// under permutation of the input (cyclic shifts in particular).  Ratios are
// clamped where exp would overflow; beta saturates at 1/w there anyway.
std::vector<double> ratio_table(const Prior& p, std::span<const double> data) {
    std::vector<double> z(data.begin(), data.end());
    for (double& v : z) v = std::fabs(v);
    std::sort(z.begin(), z.end());
    std::vector<double> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        double lr = log_marginal_ratio(p, z[i]);
        r[i] = std::exp(lr < 644.0 ? lr : 644.0);
    }
    return r;
}

double score_from_ratios(const std::vector<double>& r, double w) {
    double s = 0.0;
    for (double ri : r)
        s += (ri - 1.0) / ((1.0 - w) + w * ri);
    return s;
}

double loglik_from_ratios(const std::vector<double>& r, double w) {
    double s = 0.0;
    for (double ri : r)
        s += std::log((1.0 - w) + w * ri);
    return s;
}

// Common boundary-and-bisection logic for the weight given fixed ratios.
// S is nonincreasing in w, so a sign bracket is enough.
void fit_weight(const std::vector<double>& r, double w_lo, MixtureFit& fit) {
    double s_lo = score_from_ratios(r, w_lo);
    if (s_lo <= 0.0) {
        fit.w_hat = w_lo;
        fit.hit_lower_bound = true;
        return;
    }
    double s_hi = score_from_ratios(r, 1.0);
    if (s_hi >= 0.0) {
        fit.w_hat = 1.0;
        fit.hit_upper_bound = true;
        return;
    }
    double lo = w_lo, hi = 1.0;
    for (int i = 0; i < 60 && (hi - lo) > 1e-12 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (score_from_ratios(r, mid) > 0.0 ? lo : hi) = mid;
    }
    fit.w_hat = 0.5 * (lo + hi);
}

} // namespace

double score(const Prior& p, std::span<const double> data, double w) {
    check_finite(data);
    if (!(w > 0.0 && w <= 1.0))
        throw std::invalid_argument("weight must lie in (0,1]");
    double s = 0.0;
    for (double z : data)
        s += beta_weight_score(p, z, w);
    return s;
}

double threshold_from_weight(const Prior& p, double w) {
    if (w == 0.0)
        throw std::invalid_argument("threshold infinite");
    if (!(w > 0.0 && w <= 1.0))
        throw std::invalid_argument("weight must lie in (0,1]");
    if (w == 1.0)
        return 0.0;
    auto boundary = [&](double z) {
        return posterior_nonzero_prob(p, w, z) * nonzero_tail_prob(p, 0.0, z)
               - 0.5;
    };
    double lo = 0.0;
    double hi = std::sqrt(2.0 * std::log(1e9)) + 2.0;
    // extend the bracket for weights below any universal weight in range
    while (boundary(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e5) return hi;
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (boundary(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double weight_from_threshold(const Prior& p, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("threshold must be finite and nonnegative");
    if (t == 0.0)
        return 1.0;
    // zero-boundary condition w_post(t) F1bar(0|t) = 1/2 solved for w:
    //   w = 1 / (r(t) (2c - 1) + 1),  c = F1bar(0|t)
    const double c = nonzero_tail_prob(p, 0.0, t);
    if (2.0 * c - 1.0 <= 0.0)
        return 1.0;
    const double x = log_marginal_ratio(p, t) + std::log(2.0 * c - 1.0);
    if (x > 690.0)
        throw NumericError("weight underflow");
    return 1.0 / (1.0 + std::exp(x));
}

double universal_weight(const Prior& p, std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("universal weight needs n >= 2");
    return weight_from_threshold(p, std::sqrt(2.0 * std::log(double(n))));
}

MixtureFit estimate_weight(const Prior& p, std::span<const double> data,
                           bool cap) {
    check_finite(data);
    MixtureFit fit;
    fit.n = data.size();
    auto ratios = ratio_table(p, data);
    double w_lo = cap ? universal_weight(p, fit.n) : uncapped_weight_floor;
    fit_weight(ratios, w_lo, fit);
    fit.threshold = threshold_from_weight(p, fit.w_hat);
    return fit;
}

namespace {

// Minimal Nelder-Mead in two dimensions.
struct Simplex2 {
    double x[3][2];
    double f[3];
};

void nelder_mead_2d(const std::function<double(const double*)>& fn,
                    double x0, double x1, double step, int max_iter,
                    double best[2], double& best_f) {
    Simplex2 s;
    s.x[0][0] = x0;        s.x[0][1] = x1;
    s.x[1][0] = x0 + step; s.x[1][1] = x1;
    s.x[2][0] = x0;        s.x[2][1] = x1 + step;
    for (int i = 0; i < 3; ++i) s.f[i] = fn(s.x[i]);

    for (int iter = 0; iter < max_iter; ++iter) {
        int lo = 0, hi = 0;
        for (int i = 1; i < 3; ++i) {
            if (s.f[i] < s.f[lo]) lo = i;
            if (s.f[i] > s.f[hi]) hi = i;
        }
        int mid = 3 - lo - hi;
        if (lo == hi) mid = (lo + 1) % 3;
        if (std::fabs(s.f[hi] - s.f[lo]) <
            1e-11 * (1.0 + std::fabs(s.f[lo])))
            break;

        double cen[2] = { 0.5 * (s.x[lo][0] + s.x[mid][0]),
                          0.5 * (s.x[lo][1] + s.x[mid][1]) };
        double refl[2] = { cen[0] + (cen[0] - s.x[hi][0]),
                           cen[1] + (cen[1] - s.x[hi][1]) };
        double fr = fn(refl);
        if (fr < s.f[lo]) {
            double exp2[2] = { cen[0] + 2.0 * (cen[0] - s.x[hi][0]),
                               cen[1] + 2.0 * (cen[1] - s.x[hi][1]) };
            double fe = fn(exp2);
            if (fe < fr) { s.x[hi][0]=exp2[0]; s.x[hi][1]=exp2[1]; s.f[hi]=fe; }
            else         { s.x[hi][0]=refl[0]; s.x[hi][1]=refl[1]; s.f[hi]=fr; }
        } else if (fr < s.f[mid]) {
            s.x[hi][0]=refl[0]; s.x[hi][1]=refl[1]; s.f[hi]=fr;
        } else {
            double con[2] = { cen[0] + 0.5 * (s.x[hi][0] - cen[0]),
                              cen[1] + 0.5 * (s.x[hi][1] - cen[1]) };
            double fc = fn(con);
            if (fc < s.f[hi]) {
                s.x[hi][0]=con[0]; s.x[hi][1]=con[1]; s.f[hi]=fc;
            } else {
                for (int i = 0; i < 3; ++i) {
                    if (i == lo) continue;
                    s.x[i][0] = 0.5 * (s.x[i][0] + s.x[lo][0]);
                    s.x[i][1] = 0.5 * (s.x[i][1] + s.x[lo][1]);
                    s.f[i] = fn(s.x[i]);
                }
            }
        }
    }
    int lo = 0;
    for (int i = 1; i < 3; ++i)
        if (s.f[i] < s.f[lo]) lo = i;
    best[0] = s.x[lo][0];
    best[1] = s.x[lo][1];
    best_f = s.f[lo];
}

double sigmoid(double x) {
    if (x > 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

} // namespace

MixtureFit estimate_weight_scale(std::span<const double> data, bool cap) {
    check_finite(data);
    const std::size_t n = data.size();
    double zmax = 0.0;
    for (double v : data) zmax = std::max(zmax, std::fabs(v));

    if (zmax == 0.0) {
        // flat likelihood in a, decreasing in w: report the fixed-scale
        // default with the boundary flag
        Prior p = Prior::laplace(0.5);
        MixtureFit fit;
        fit.n = n;
        fit.w_hat = cap ? universal_weight(p, n) : uncapped_weight_floor;
        fit.a_hat = 0.5;
        fit.threshold = threshold_from_weight(p, fit.w_hat);
        fit.hit_lower_bound = true;
        return fit;
    }

    std::vector<double> z(data.begin(), data.end());
    for (double& v : z) v = std::fabs(v);
    std::sort(z.begin(), z.end());

    auto ratios_for = [&](double a) {
        Prior p = Prior::laplace(a);
        std::vector<double> r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            double lr = log_marginal_ratio(p, z[i]);
            r[i] = std::exp(lr < 644.0 ? lr : 644.0);
        }
        return r;
    };

    // The lower weight limit depends mildly on a through t(w_n) = sqrt(2 log n),
    // so track it per a; this keeps the constraint consistent with the
    // fixed-scale estimator at every candidate scale.
    auto w_floor_for = [&](double a) {
        return cap ? universal_weight(Prior::laplace(a), n)
                   : uncapped_weight_floor;
    };

    // profile maximum over w at fixed a, exact via the score bisection
    struct Candidate { double w, a, ell; bool lo, hi; };
    auto profile_at = [&](double a) {
        auto r = ratios_for(a);
        MixtureFit tmp;
        fit_weight(r, w_floor_for(a), tmp);
        return Candidate{tmp.w_hat, a, loglik_from_ratios(r, tmp.w_hat),
                         tmp.hit_lower_bound, tmp.hit_upper_bound};
    };

    // search coordinates: w = floor + (1 - floor) sigmoid(s), a log-bounded
    auto decode_a = [&](double v) {
        return a_min * std::pow(a_max / a_min, sigmoid(v));
    };
    auto objective = [&](const double* x) {
        double a = decode_a(x[1]);
        double floor_w = w_floor_for(a);
        double w = floor_w + (1.0 - floor_w) * sigmoid(x[0]);
        return -loglik_from_ratios(ratios_for(a), w);
    };

    const double starts[4][2] = {
        {-2.1972, -1.0986}, {-2.1972, 1.0986},
        { 0.4055, -1.0986}, { 0.4055, 1.0986}};
    double nm_x[2] = {0, 0}, nm_f = std::numeric_limits<double>::infinity();
    for (auto& st : starts) {
        double bx[2], bf;
        nelder_mead_2d(objective, st[0], st[1], 0.7, 150, bx, bf);
        if (bf < nm_f) { nm_f = bf; nm_x[0] = bx[0]; nm_x[1] = bx[1]; }
    }

    // candidates: exact profile at the NM scale, at the fixed-scale default,
    // and at the best point of a 50x50 verification lattice
    Candidate best = profile_at(decode_a(nm_x[1]));
    Candidate slice = profile_at(0.5);
    if (slice.ell > best.ell) best = slice;

    double lattice_best_a = best.a, lattice_best_ell =
        -std::numeric_limits<double>::infinity();
    for (int ia = 0; ia < 50; ++ia) {
        double a = a_min * std::pow(a_max / a_min, ia / 49.0);
        auto r = ratios_for(a);
        double floor_w = w_floor_for(a);
        for (int iw = 0; iw < 50; ++iw) {
            double w = floor_w + (1.0 - floor_w) * (iw / 49.0);
            double ell = loglik_from_ratios(r, w);
            if (ell > lattice_best_ell) {
                lattice_best_ell = ell;
                lattice_best_a = a;
            }
        }
    }
    if (lattice_best_ell > best.ell) {
        Candidate c = profile_at(lattice_best_a);
        if (c.ell > best.ell) best = c;
    }

    Prior p = Prior::laplace(best.a);
    MixtureFit fit;
    fit.n = n;
    fit.w_hat = best.w;
    fit.a_hat = best.a;
    fit.threshold = threshold_from_weight(p, fit.w_hat);
    fit.hit_lower_bound = best.lo;
    fit.hit_upper_bound = best.hi;
    return fit;
}

double posterior_median(const Prior& p, double w, double z) {
    if (!(w > 0.0 && w <= 1.0))
        throw std::invalid_argument("weight must lie in (0,1]");
    const double x = std::fabs(z);
    const double sgn = (z < 0.0) ? -1.0 : 1.0;
    const double wpost = posterior_nonzero_prob(p, w, x);
    // the median is zero while the posterior mass above 0 is at most 1/2
    if (wpost * nonzero_tail_prob(p, 0.0, x) <= 0.5)
        return 0.0;

    double mu = 0.0;
    switch (p.kind) {
    case Prior::Kind::Laplace: {
        const double a = p.scale;
        // solve e^{-ax} phi_bar(mu - x + a) / D = 1/(2 wpost) in log space
        double logq = a * x + log_add_exp(-a * x + log_phi_bar(a - x),
                                           a * x + log_phi_bar(x + a))
                      - std::log(2.0 * wpost);
        if (logq >= 0.0) return 0.0;
        mu = x - a + upper_quantile_log(logq);
        break;
    }
    case Prior::Kind::QuasiCauchy: {
        const double target = 0.5 / wpost;
        if (nonzero_tail_prob(p, x, x) >= target) { mu = x; break; }
        double lo = 0.0, hi = x;
        for (int i = 0; i < 90 && (hi - lo) > 1e-12 * (1.0 + hi); ++i) {
            double mid = 0.5 * (lo + hi);
            (nonzero_tail_prob(p, mid, x) > target ? lo : hi) = mid;
        }
        mu = 0.5 * (lo + hi);
        break;
    }
    case Prior::Kind::Gaussian: {
        const double t2 = p.scale * p.scale;
        const double lam = t2 / (1.0 + t2);
        mu = lam * x + std::sqrt(lam) * upper_quantile(0.5 / wpost);
        break;
    }
    }
    if (mu < 0.0) mu = 0.0;
    if (mu > x) mu = x;
    return sgn * mu;
}

double posterior_mean(const Prior& p, double w, double z) {
    if (!(w >= 0.0 && w <= 1.0))
        throw std::invalid_argument("weight must lie in [0,1]");
    if (w == 0.0 || z == 0.0) return 0.0;
    return posterior_nonzero_prob(p, w, z) * posterior_nonzero_mean(p, z);
}

double modified_threshold(const MixtureFit& fit, ThresholdModification mod,
                          std::size_t n) {
    if (n < 3)
        throw std::invalid_argument("modified threshold needs n >= 3");
    if (mod.exponent < 0.0)
        throw std::invalid_argument("modification exponent must be >= 0");
    const double ln = std::log(double(n));
    const double t = fit.threshold;
    if (t * t <= 2.0 * ln - 5.0 * std::log(ln))
        return t;
    return std::sqrt(2.0 * (1.0 + mod.exponent) * ln);
}

double apply_rule(const ShrinkageRule& rule, const Prior& p, double w,
                  double t, double z) {
    switch (rule.kind) {
    case Rule::Hard:
        return std::fabs(z) > t ? z : 0.0;
    case Rule::Soft: {
        double m = std::fabs(z) - t;
        return m > 0.0 ? (z < 0.0 ? -m : m) : 0.0;
    }
    case Rule::PosteriorMedian:
        return posterior_median(p, w, z);
    case Rule::PosteriorMean:
        return posterior_mean(p, w, z);
    }
    return 0.0;
}

SequenceResult ebthresh_sequence(std::span<const double> data,
                                 const SequenceOptions& opt) {
    check_finite(data);
    const std::size_t n = data.size();

    double sigma;
    if (opt.sd) {
        sigma = *opt.sd;
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("sd must be positive and finite");
    } else {
        if (n < 8)
            throw DataError("too few observations to estimate sd");
        sigma = mad_sigma(data);
    }

    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = data[i] / sigma;

    SequenceResult res;
    res.sd_used = sigma;
    res.fit = opt.estimate_scale
                  ? estimate_weight_scale(z, opt.cap)
                  : estimate_weight(opt.prior, z, opt.cap);
    const Prior used = opt.estimate_scale ? Prior::laplace(*res.fit.a_hat)
                                          : opt.prior;

    double t_used = res.fit.threshold;
    double w_used = res.fit.w_hat;
    if (opt.modification.exponent > 0.0) {
        double tm = modified_threshold(res.fit, opt.modification, n);
        if (tm != t_used) {
            t_used = tm;
            if (opt.rule.kind == Rule::PosteriorMedian)
                w_used = weight_from_threshold(used, tm);
        }
    }
    res.threshold_used = t_used;

    res.estimates.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        res.estimates[i] = sigma * apply_rule(opt.rule, used, w_used, t_used, z[i]);
    return res;
}

} // namespace ebwave
