// Command line front end: sequence thresholding, signal denoising, and the
// replicated simulation study.

#include "ebwave/classic.hpp"
#include "ebwave/denoise.hpp"
#include "ebwave/ebayes.hpp"
#include "ebwave/errors.hpp"
#include "ebwave/io.hpp"
#include "ebwave/signals.hpp"
#include "ebwave/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ctime>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace ebwave;

Rule parse_rule(const std::string& s) {
    if (s == "median") return Rule::PosteriorMedian;
    if (s == "mean") return Rule::PosteriorMean;
    if (s == "hard") return Rule::Hard;
    if (s == "soft") return Rule::Soft;
    throw CLI::ValidationError("--rule", "unknown rule: " + s);
}

Prior parse_prior(const std::string& name, std::optional<double> scale,
                  bool estimate_scale) {
    if (name == "laplace")
        return Prior::laplace(scale.value_or(0.5));
    if (name == "cauchy") {
        if (scale)
            throw CLI::ValidationError("--scale",
                                       "the cauchy prior has no scale");
        if (estimate_scale)
            throw CLI::ValidationError("--estimate-scale",
                                       "scale estimation needs the laplace prior");
        return Prior::quasi_cauchy();
    }
    if (name == "gaussian") {
        if (estimate_scale)
            throw CLI::ValidationError("--estimate-scale",
                                       "scale estimation needs the laplace prior");
        return Prior::gaussian(scale.value_or(1.0));
    }
    throw CLI::ValidationError("--prior", "unknown prior: " + name);
}

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t p = s.find(',', start);
        if (p == std::string::npos) {
            if (start < s.size()) out.push_back(s.substr(start));
            break;
        }
        if (p > start) out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
    return out;
}

struct ThreshArgs {
    std::string prior, rule, input, output;
    double scale = 0.0, sd = 0.0, mod_a = 0.0;
    bool have_scale = false, estimate_scale = false;
    bool have_sd = false, estimate_sd = false;
    bool no_cap = false;
};

void run_thresh(const ThreshArgs& a) {
    SequenceOptions opt;
    opt.prior = parse_prior(a.prior,
                            a.have_scale ? std::optional<double>(a.scale)
                                         : std::nullopt,
                            a.estimate_scale);
    opt.rule.kind = parse_rule(a.rule);
    opt.estimate_scale = a.estimate_scale;
    if (a.have_sd) opt.sd = a.sd;
    opt.cap = !a.no_cap;
    opt.modification.exponent = a.mod_a;

    auto data = read_values(a.input);
    auto res = ebthresh_sequence(data, opt);
    write_values(a.output, res.estimates);
}

struct DenoiseArgs {
    std::string wavelet = "sym8", prior, rule, sd_policy, input, output;
    std::string baseline, report;
    int coarsest = 4;
    double scale = 0.0, q = 0.05, mod_a = 0.0;
    bool have_scale = false, estimate_scale = false, ti = false;
};

void run_denoise(const DenoiseArgs& a) {
    DenoiseConfig cfg;
    cfg.prior = parse_prior(a.prior,
                            a.have_scale ? std::optional<double>(a.scale)
                                         : std::nullopt,
                            a.estimate_scale);
    cfg.rule.kind = parse_rule(a.rule);
    cfg.estimate_scale = a.estimate_scale;
    cfg.transform = a.ti ? Transform::TranslationInvariant
                         : Transform::Decimated;
    cfg.filter = a.wavelet;
    cfg.coarsest_level = a.coarsest;
    cfg.modification.exponent = a.mod_a;
    if (a.sd_policy == "global") cfg.sd_policy = SdPolicy::Global;
    else if (a.sd_policy == "per-level") cfg.sd_policy = SdPolicy::PerLevel;
    else throw CLI::ValidationError("--sd-policy",
                                    "expected global or per-level");
    if (!a.baseline.empty()) {
        BaselineSpec b;
        if (a.baseline == "sure4") b = {BaselineSpec::Kind::Sure, 4, a.q};
        else if (a.baseline == "sure6") b = {BaselineSpec::Kind::Sure, 6, a.q};
        else if (a.baseline == "universal6")
            b = {BaselineSpec::Kind::Universal, 6, a.q};
        else if (a.baseline == "fdr")
            b = {BaselineSpec::Kind::Fdr, 1000, a.q};
        else throw CLI::ValidationError("--baseline",
                                        "unknown baseline: " + a.baseline);
        cfg.baseline = b;
    }

    auto data = read_values(a.input);
    auto res = denoise(data, cfg);
    write_values(a.output, res.estimate);

    if (!a.report.empty()) {
        nlohmann::json j;
        j["input"] = a.input;
        j["transform"] = a.ti ? "ti" : "dwt";
        j["filter"] = a.wavelet;
        j["coarsest"] = a.coarsest;
        j["levels"] = nlohmann::json::array();
        for (const auto& lf : res.fits) {
            nlohmann::json lv;
            lv["level"] = lf.level;
            lv["sigma"] = lf.sigma_j;
            lv["threshold_used"] = lf.threshold_used;
            if (lf.fit) {
                lv["w"] = lf.fit->w_hat;
                if (lf.fit->a_hat) lv["a"] = *lf.fit->a_hat;
                lv["threshold"] = lf.fit->threshold;
                lv["hit_lower_bound"] = lf.fit->hit_lower_bound;
                lv["hit_upper_bound"] = lf.fit->hit_upper_bound;
            }
            j["levels"].push_back(lv);
        }
        j["created"] = now_utc();
        write_text(a.report, j.dump(2) + "\n");
    }
}

struct SimulateArgs {
    std::string signals, noise, methods, format, output;
    std::string wavelet = "sym8";
    std::size_t n = 1024, reps = 100;
    std::uint64_t seed = 1;
    int coarsest = 4;
};

void run_simulate(const SimulateArgs& a) {
    SimulationSpec spec;
    spec.signals = split_list(a.signals);
    spec.n = a.n;
    if (a.noise == "high") spec.noise_ratio = 1.0 / 3.0;
    else if (a.noise == "low") spec.noise_ratio = 1.0 / 7.0;
    else throw CLI::ValidationError("--noise", "expected high or low");
    spec.reps = a.reps;
    spec.seed = a.seed;
    spec.filter = a.wavelet;
    spec.coarsest = a.coarsest;
    for (const auto& tok : split_list(a.methods))
        spec.methods.push_back(parse_method(tok));

    auto report = run_simulation(spec);
    if (a.format == "csv")
        write_text(a.output, report_csv(report));
    else if (a.format == "json")
        write_text(a.output, report_json(report, now_utc()));
    else
        throw CLI::ValidationError("--format", "expected csv or json");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"empirical Bayes wavelet thresholding"};
    app.require_subcommand(1);

    ThreshArgs ta;
    auto* thresh = app.add_subcommand(
        "thresh", "threshold a sequence of noisy observations");
    thresh->add_option("--prior", ta.prior, "laplace | cauchy | gaussian")
        ->required();
    auto* t_scale = thresh->add_option("--scale", ta.scale,
                                       "prior scale (laplace a / gaussian tau)");
    auto* t_est = thresh->add_flag("--estimate-scale", ta.estimate_scale,
                                   "estimate the laplace scale jointly");
    t_scale->excludes(t_est);
    auto* t_sd = thresh->add_option("--sd", ta.sd, "known noise sd");
    auto* t_esd = thresh->add_flag("--estimate-sd", ta.estimate_sd,
                                   "estimate the noise sd by MAD (default)");
    t_sd->excludes(t_esd);
    thresh->add_option("--rule", ta.rule, "median | mean | hard | soft")
        ->required();
    thresh->add_flag("--no-cap", ta.no_cap,
                     "drop the sqrt(2 log n) threshold cap");
    thresh->add_option("--mod-a", ta.mod_a, "threshold modification exponent")
        ->check(CLI::NonNegativeNumber);
    thresh->add_option("--input", ta.input, "input data file")->required();
    thresh->add_option("--output", ta.output, "output data file")->required();
    thresh->callback([&] {
        ta.have_scale = t_scale->count() > 0;
        ta.have_sd = t_sd->count() > 0;
        run_thresh(ta);
    });

    DenoiseArgs da;
    auto* den = app.add_subcommand("denoise", "denoise a sampled signal");
    den->add_option("--wavelet", da.wavelet, "filter name (default sym8)");
    den->add_flag("--ti", da.ti, "translation-invariant transform");
    den->add_option("--coarsest", da.coarsest, "coarsest processed level")
        ->required();
    den->add_option("--prior", da.prior, "laplace | cauchy | gaussian")
        ->required();
    auto* d_scale = den->add_option("--scale", da.scale, "prior scale");
    auto* d_est = den->add_flag("--estimate-scale", da.estimate_scale,
                                "estimate the laplace scale per level");
    d_scale->excludes(d_est);
    den->add_option("--rule", da.rule, "median | mean | hard | soft")
        ->required();
    den->add_option("--sd-policy", da.sd_policy, "global | per-level")
        ->required();
    den->add_option("--baseline", da.baseline,
                    "sure4 | sure6 | universal6 | fdr");
    den->add_option("--q", da.q, "FDR parameter (default 0.05)");
    den->add_option("--mod-a", da.mod_a, "threshold modification exponent")
        ->check(CLI::NonNegativeNumber);
    den->add_option("--input", da.input, "input data file")->required();
    den->add_option("--output", da.output, "output data file")->required();
    den->add_option("--report", da.report, "per-level fit report (JSON)");
    den->callback([&] {
        da.have_scale = d_scale->count() > 0;
        run_denoise(da);
    });

    SimulateArgs sa;
    auto* sim = app.add_subcommand(
        "simulate", "replicated error study on the standard test signals");
    sim->add_option("--signals", sa.signals,
                    "comma list: blocks,bumps,doppler,heavisine")->required();
    sim->add_option("--n", sa.n, "signal length (default 1024)");
    sim->add_option("--noise", sa.noise, "high (sd 1/3) | low (sd 1/7)")
        ->required();
    sim->add_option("--reps", sa.reps, "replications (default 100)");
    sim->add_option("--seed", sa.seed, "RNG seed (default 1)");
    sim->add_option("--methods", sa.methods, "comma list of method tokens")
        ->required();
    sim->add_option("--format", sa.format, "csv | json")->required();
    sim->add_option("--output", sa.output, "report file")->required();
    sim->add_option("--wavelet", sa.wavelet, "filter name (default sym8)");
    sim->add_option("--coarsest", sa.coarsest,
                    "coarsest processed level (default 4)");
    sim->callback([&] { run_simulate(sa); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ebwave::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const ebwave::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
