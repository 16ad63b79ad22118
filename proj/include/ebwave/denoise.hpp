#ifndef EBWAVE_DENOISE_HPP
#define EBWAVE_DENOISE_HPP

// Level-by-level wavelet denoising: transform, per-level noise scale,
// per-level mixture fit (or a baseline threshold selector), coordinatewise
// shrinkage, inverse transform.  Scaling coefficients always pass through
// unchanged.

#include "ebwave/ebayes.hpp"
#include "ebwave/priors.hpp"
#include "ebwave/wavelet.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ebwave {

enum class Transform { Decimated, TranslationInvariant };
enum class SdPolicy { Global, PerLevel };

// Classical per-level threshold selectors that can replace the empirical
// Bayes fit: SURE and the universal threshold with the soft rule, FDR with
// the hard rule (the conventional pairings; the rule is still configurable).
struct BaselineSpec {
    enum class Kind { Sure, Universal, Fdr };
    Kind kind = Kind::Universal;
    int levels = 6;      // how many finest levels to threshold
    double q = 0.05;     // FDR parameter
};

struct DenoiseConfig {
    Prior prior = Prior::laplace(0.5);
    ShrinkageRule rule{};
    bool estimate_scale = false;
    Transform transform = Transform::TranslationInvariant;
    std::string filter = "sym8";
    int coarsest_level = 4;
    SdPolicy sd_policy = SdPolicy::Global;
    ThresholdModification modification{};
    bool keep_scaling = true;   // scaling coefficients are never shrunk
    std::optional<BaselineSpec> baseline;
};

struct LevelFit {
    int level = 0;
    double sigma_j = 1.0;
    std::optional<MixtureFit> fit;   // absent for baseline/pass-through levels
    double threshold_used = 0.0;     // in sigma_j units, after modification
};

struct DenoiseResult {
    std::vector<double> estimate;
    std::vector<LevelFit> fits;      // ascending level order [L, J-1]
};

// Per-level hyperparameter fits / baseline thresholds, no application.
std::vector<LevelFit> levelwise_fit(const Pyramid& p,
                                    const DenoiseConfig& cfg);
std::vector<LevelFit> levelwise_fit(const TIPyramid& p,
                                    const DenoiseConfig& cfg);

// Shrink one level's coefficients according to its LevelFit.  This is the
// exact kernel denoise() uses, exposed so a hand-assembled pipeline can
// reproduce the result bit for bit.
std::vector<double> apply_level_rule(const LevelFit& lf,
                                     const DenoiseConfig& cfg,
                                     std::span<const double> coeffs);

DenoiseResult denoise(std::span<const double> signal,
                      const DenoiseConfig& cfg);

} // namespace ebwave

#endif
