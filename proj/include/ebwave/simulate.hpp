#ifndef EBWAVE_SIMULATE_HPP
#define EBWAVE_SIMULATE_HPP

// Replicated denoising study over the standard test signals.  One noise
// vector is drawn per replication and reused across every signal and method;
// errors are reported as scaled SSE, sigma_E^{-2} sum (f_hat - f)^2.
//
// Method descriptor grammar (case-sensitive tokens):
//   truth                           oracle passthrough of the true signal
//   <prior>-<rule>-<transform>      empirical Bayes pipeline
//   <baseline>-<transform>          classical threshold pipeline
// where
//   prior:     laplace (scale estimated) | laplace<a> (fixed scale, e.g.
//              laplace0.5) | cauchy | gaussian (tau = 1) | gaussian<tau>
//   rule:      median | mean | hard | soft
//   transform: ti | dwt
//   baseline:  sure<k> (soft rule, finest k levels) | universal<k> (soft) |
//              fdr (hard, q = 0.05) | fdr<q> (e.g. fdr0.4)
// Examples: laplace-median-ti, cauchy-median-ti, laplace0.5-mean-dwt,
//           sure6-ti, universal6-ti, fdr0.05-ti.

#include "ebwave/denoise.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ebwave {

struct MethodSpec {
    enum class Kind { Eb, Baseline, Truth };
    std::string label;
    Kind kind = Kind::Eb;
    Prior prior = Prior::laplace(0.5);
    bool estimate_scale = false;
    Rule rule = Rule::PosteriorMedian;
    Transform transform = Transform::TranslationInvariant;
    BaselineSpec baseline{};
};

MethodSpec parse_method(const std::string& token);

struct SimulationSpec {
    std::vector<std::string> signals;
    std::size_t n = 1024;
    double noise_ratio = 1.0 / 3.0;   // sigma_E; signals have unit sample SD
    std::size_t reps = 100;
    std::uint64_t seed = 1;
    std::vector<MethodSpec> methods;
    std::string filter = "sym8";
    int coarsest = 4;
};

struct SimulationReport {
    SimulationSpec spec;
    std::vector<std::vector<double>> mean;    // [method][signal]
    std::vector<std::vector<double>> se;      // sample SD / sqrt(reps)
    std::vector<std::vector<double>> paired;  // mean diff vs first method,
                                              // in SE-of-difference units
};

// The replication substream: deterministic for (seed, rep) regardless of
// how many replications run or in what order.
std::vector<double> noise_vector(std::uint64_t seed, std::uint64_t rep,
                                 std::size_t n);

SimulationReport run_simulation(const SimulationSpec& spec);

// One row per method, one column per signal, means only (the classic
// summary-table shape).  Fixed formatting so identical runs are
// byte-identical.
std::string report_csv(const SimulationReport& r);
// Full report: spec echo, mean/stderr table, paired differences, metadata.
std::string report_json(const SimulationReport& r, std::string_view created);

} // namespace ebwave

#endif
