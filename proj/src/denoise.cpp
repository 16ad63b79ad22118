#include "ebwave/denoise.hpp"
#include "ebwave/classic.hpp"
#include "ebwave/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ebwave {

namespace {

void check_config(const DenoiseConfig& cfg) {
    if (cfg.transform == Transform::Decimated && cfg.coarsest_level < 3)
        throw std::invalid_argument(
            "decimated pipeline needs coarsest level >= 3");
    if (cfg.coarsest_level < 0)
        throw std::invalid_argument("coarsest level must be >= 0");
    if (cfg.baseline && cfg.rule.kind != Rule::Hard &&
        cfg.rule.kind != Rule::Soft)
        throw std::invalid_argument(
            "baseline selectors require the hard or soft rule");
    if (cfg.baseline && cfg.baseline->levels < 1)
        throw std::invalid_argument("baseline needs at least one level");
    if (cfg.modification.exponent > 0.0 && cfg.coarsest_level < 2)
        throw std::invalid_argument(
            "threshold modification needs coarsest level >= 2");
    if (!cfg.keep_scaling)
        throw std::invalid_argument("scaling coefficients always pass through");
}

// noise scale for one level: its own MAD when the policy asks for it and
// the level is wide enough, otherwise the finest-level global estimate
double level_sigma(const DenoiseConfig& cfg, std::span<const double> coeffs,
                   double sigma_global) {
    if (cfg.sd_policy == SdPolicy::PerLevel && coeffs.size() >= 32)
        return mad_sigma(coeffs);
    return sigma_global;
}

// generic over both pyramid kinds: planes[i] = coefficients of level L+i
std::vector<LevelFit> fit_planes(const std::vector<std::vector<double>>& planes,
                                 int coarsest, std::size_t signal_n,
                                 const DenoiseConfig& cfg) {
    check_config(cfg);
    const int nlev = static_cast<int>(planes.size());
    const double sigma_global = mad_sigma(planes.back());

    std::vector<LevelFit> fits(nlev);
    for (int i = 0; i < nlev; ++i) {
        const int j = coarsest + i;
        LevelFit& lf = fits[i];
        lf.level = j;
        lf.sigma_j = level_sigma(cfg, planes[i], sigma_global);

        std::vector<double> z(planes[i].size());
        for (std::size_t k = 0; k < z.size(); ++k)
            z[k] = planes[i][k] / lf.sigma_j;

        if (cfg.baseline) {
            // only the finest `levels` levels are thresholded; coarser ones
            // pass through with a zero threshold
            const int J = coarsest + nlev;
            const bool active = j >= J - cfg.baseline->levels;
            if (!active) {
                lf.threshold_used = 0.0;
                continue;
            }
            switch (cfg.baseline->kind) {
            case BaselineSpec::Kind::Sure:
                lf.threshold_used = sure_threshold(z).t_hat;
                break;
            case BaselineSpec::Kind::Universal:
                lf.threshold_used = universal_threshold(signal_n);
                break;
            case BaselineSpec::Kind::Fdr:
                lf.threshold_used =
                    fdr_threshold(z, FdrParams(cfg.baseline->q));
                break;
            }
            continue;
        }

        MixtureFit fit = cfg.estimate_scale
                             ? estimate_weight_scale(z)
                             : estimate_weight(cfg.prior, z);
        lf.threshold_used = fit.threshold;
        if (cfg.modification.exponent > 0.0) {
            // the level-size convention: n = 2^j coefficients at level j
            lf.threshold_used = modified_threshold(fit, cfg.modification,
                                                   std::size_t(1) << j);
        }
        lf.fit = fit;
    }
    return fits;
}

} // namespace

std::vector<LevelFit> levelwise_fit(const Pyramid& p,
                                    const DenoiseConfig& cfg) {
    return fit_planes(p.detail, p.coarsest, p.n, cfg);
}

std::vector<LevelFit> levelwise_fit(const TIPyramid& p,
                                    const DenoiseConfig& cfg) {
    return fit_planes(p.detail, p.coarsest, p.n, cfg);
}

std::vector<double> apply_level_rule(const LevelFit& lf,
                                     const DenoiseConfig& cfg,
                                     std::span<const double> coeffs) {
    double w = 1.0;
    Prior prior = cfg.prior;
    if (lf.fit) {
        w = lf.fit->w_hat;
        if (cfg.estimate_scale && lf.fit->a_hat)
            prior = Prior::laplace(*lf.fit->a_hat);
        // a modified threshold shifts the weight the Bayes rules act at
        if (lf.threshold_used != lf.fit->threshold &&
            cfg.rule.kind == Rule::PosteriorMedian)
            w = weight_from_threshold(prior, lf.threshold_used);
    }
    std::vector<double> out(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        out[k] = lf.sigma_j * apply_rule(cfg.rule, prior, w,
                                         lf.threshold_used,
                                         coeffs[k] / lf.sigma_j);
    return out;
}

DenoiseResult denoise(std::span<const double> signal,
                      const DenoiseConfig& cfg) {
    check_config(cfg);
    const FilterBank& fb = FilterBank::get(cfg.filter);

    DenoiseResult res;
    if (cfg.transform == Transform::Decimated) {
        Pyramid p = dwt_periodic(signal, fb, cfg.coarsest_level);
        res.fits = levelwise_fit(p, cfg);
        for (int i = 0; i < p.levels(); ++i)
            p.detail[i] = apply_level_rule(res.fits[i], cfg, p.detail[i]);
        res.estimate = idwt_periodic(p);
    } else {
        TIPyramid p = ti_dwt(signal, fb, cfg.coarsest_level);
        res.fits = levelwise_fit(p, cfg);
        for (int i = 0; i < p.levels(); ++i)
            p.detail[i] = apply_level_rule(res.fits[i], cfg, p.detail[i]);
        res.estimate = ti_idwt_average_basis(p);
    }
    return res;
}

} // namespace ebwave
