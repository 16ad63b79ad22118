#ifndef EBWAVE_EBAYES_HPP
#define EBWAVE_EBAYES_HPP

// Marginal maximum likelihood selection of the mixing weight (and optionally
// the Laplace scale) for the sparse normal-means model, together with the
// induced thresholds and shrinkage rules.
//
// Model: Z_i ~ N(mu_i, 1), mu_i ~ (1-w) delta_0 + w gamma.  The weight w is
// chosen by maximizing the marginal likelihood; by default w is constrained
// so that the induced threshold t(w) never exceeds the universal threshold
// sqrt(2 log n).  Estimates of mu_i come from the posterior median (a true
// thresholding rule), the posterior mean, or classical hard/soft
// thresholding at t(w).

#include "ebwave/priors.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ebwave {

struct MixtureFit {
    double w_hat = 0.0;                // estimated mixing weight
    std::optional<double> a_hat;       // estimated Laplace scale, if requested
    double threshold = 0.0;            // t(w_hat), posterior-median threshold
    std::size_t n = 0;                 // number of observations used
    bool hit_lower_bound = false;      // w_hat stopped at the weight floor
    bool hit_upper_bound = false;      // w_hat reached 1
};

enum class Rule { PosteriorMedian, PosteriorMean, Hard, Soft };

struct ShrinkageRule {
    Rule kind = Rule::PosteriorMedian;
    // Diagnostic bound: for heavy-tailed priors the posterior median obeys
    // |z - median(z)| <= t(w) + b0 for all z.
    double shrink_bound_b0 = 10.0;

    bool thresholding() const { return kind != Rule::PosteriorMean; }
};

// Optional inflation of the selected threshold to sqrt(2 (1+A) log n) when
// the fitted threshold lands in the zone just below sqrt(2 log n) where
// pure-noise excursions concentrate.  exponent == 0 leaves fits alone.
struct ThresholdModification {
    double exponent = 0.0;   // the A in sqrt(2 (1+A) log n)
};

// Sum of the likelihood-derivative kernels beta(z_i, w); the weight
// estimate is the root of this score in w.
double score(const Prior& p, std::span<const double> data, double w);

// Weight whose posterior-median threshold equals sqrt(2 log n); the lower
// limit of the weight search when the threshold cap is on.  Requires n >= 2.
double universal_weight(const Prior& p, std::size_t n);

// Threshold t(w): the posterior median of mu given z is zero exactly for
// |z| <= t(w).  Decreasing in w, with t(1) = 0.
double threshold_from_weight(const Prior& p, double w);
// Inverse map; weight_from_threshold(t(w)) == w up to root-finding error.
double weight_from_threshold(const Prior& p, double t);

// Marginal ML estimate of w with the prior fully specified.  cap = true
// restricts w to [universal_weight(n), 1].
MixtureFit estimate_weight(const Prior& p, std::span<const double> data,
                           bool cap = true);

// Joint marginal ML over the weight and the Laplace scale a in [0.04, 3].
// Nelder-Mead from several starts, then a lattice sweep as a safety net.
MixtureFit estimate_weight_scale(std::span<const double> data,
                                 bool cap = true);

// Posterior functionals of the full mixture posterior at weight w.
double posterior_median(const Prior& p, double w, double z);
double posterior_mean(const Prior& p, double w, double z);

// Threshold inflation described above: returns fit.threshold unchanged when
// t^2 <= 2 log n - 5 log log n, else sqrt(2 (1+A) log n).  Requires n >= 3.
double modified_threshold(const MixtureFit& fit, ThresholdModification mod,
                          std::size_t n);

// Apply a shrinkage rule at weight w / threshold t to a single z.  The
// Bayes rules use w (the median's threshold is implied by w); hard and
// soft use t.
double apply_rule(const ShrinkageRule& rule, const Prior& p, double w,
                  double t, double z);

struct SequenceOptions {
    Prior prior = Prior::laplace(0.5);
    ShrinkageRule rule{};
    bool estimate_scale = false;          // joint (w, a) fit, Laplace family
    std::optional<double> sd;             // noise sd; nullopt = estimate by MAD
    bool cap = true;                      // threshold cap at sqrt(2 log n)
    ThresholdModification modification{}; // exponent 0 = none
};

struct SequenceResult {
    std::vector<double> estimates;
    MixtureFit fit;
    double sd_used = 0.0;
    double threshold_used = 0.0;   // after any modification, on the z scale
};

// One-call pipeline for a plain sequence: rescale by the noise sd, fit the
// mixture, apply the rule coordinatewise, scale back.
SequenceResult ebthresh_sequence(std::span<const double> data,
                                 const SequenceOptions& opt);

} // namespace ebwave

#endif
