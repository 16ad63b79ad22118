#include "ebwave/simulate.hpp"
#include "ebwave/normal.hpp"
#include "ebwave/signals.hpp"
#include "ebwave/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace ebwave {

namespace {

[[noreturn]] void bad_method(const std::string& token) {
    throw std::invalid_argument("invalid method descriptor: " + token);
}

double parse_number(const std::string& token, const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) bad_method(token);
        return v;
    } catch (const std::invalid_argument&) {
        bad_method(token);
    } catch (const std::out_of_range&) {
        bad_method(token);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        parts.push_back(s.substr(start, p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return parts;
}

} // namespace

MethodSpec parse_method(const std::string& token) {
    MethodSpec m;
    m.label = token;
    if (token == "truth") {
        m.kind = MethodSpec::Kind::Truth;
        return m;
    }

    auto parts = split(token, '-');
    if (parts.size() < 2 || parts.size() > 3) bad_method(token);

    const std::string& tr = parts.back();
    if (tr == "ti") m.transform = Transform::TranslationInvariant;
    else if (tr == "dwt") m.transform = Transform::Decimated;
    else bad_method(token);

    auto starts_with = [](const std::string& s, const char* p) {
        return s.rfind(p, 0) == 0;
    };

    if (parts.size() == 2) {
        m.kind = MethodSpec::Kind::Baseline;
        const std::string& b = parts[0];
        if (starts_with(b, "sure")) {
            m.baseline.kind = BaselineSpec::Kind::Sure;
            m.rule = Rule::Soft;
            std::string k = b.substr(4);
            m.baseline.levels = k.empty() ? 6 : int(parse_number(token, k));
        } else if (starts_with(b, "universal")) {
            m.baseline.kind = BaselineSpec::Kind::Universal;
            m.rule = Rule::Soft;
            std::string k = b.substr(9);
            m.baseline.levels = k.empty() ? 6 : int(parse_number(token, k));
        } else if (starts_with(b, "fdr")) {
            m.baseline.kind = BaselineSpec::Kind::Fdr;
            m.rule = Rule::Hard;
            m.baseline.levels = 1000;   // every processed level
            std::string q = b.substr(3);
            m.baseline.q = q.empty() ? 0.05 : parse_number(token, q);
        } else {
            bad_method(token);
        }
        if (m.baseline.levels < 1) bad_method(token);
        return m;
    }

    // prior-rule-transform
    const std::string& pr = parts[0];
    if (starts_with(pr, "laplace")) {
        std::string a = pr.substr(7);
        if (a.empty()) {
            m.estimate_scale = true;
            m.prior = Prior::laplace(0.5);
        } else {
            m.prior = Prior::laplace(parse_number(token, a));
        }
    } else if (pr == "cauchy") {
        m.prior = Prior::quasi_cauchy();
    } else if (starts_with(pr, "gaussian")) {
        std::string t = pr.substr(8);
        m.prior = Prior::gaussian(t.empty() ? 1.0 : parse_number(token, t));
    } else {
        bad_method(token);
    }

    const std::string& r = parts[1];
    if (r == "median") m.rule = Rule::PosteriorMedian;
    else if (r == "mean") m.rule = Rule::PosteriorMean;
    else if (r == "hard") m.rule = Rule::Hard;
    else if (r == "soft") m.rule = Rule::Soft;
    else bad_method(token);

    return m;
}

std::vector<double> noise_vector(std::uint64_t seed, std::uint64_t rep,
                                 std::size_t n) {
    std::seed_seq ss{
        std::uint32_t(seed), std::uint32_t(seed >> 32),
        std::uint32_t(rep), std::uint32_t(rep >> 32)};
    std::mt19937_64 eng(ss);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        // inverse-CDF draws: deterministic across platforms, unlike
        // std::normal_distribution
        double u = (double(eng() >> 11) + 0.5) * 0x1p-53;
        z[i] = quantile(u);
    }
    return z;
}

SimulationReport run_simulation(const SimulationSpec& spec) {
    if (spec.signals.empty())
        throw std::invalid_argument("no signals requested");
    if (spec.methods.empty())
        throw std::invalid_argument("no methods requested");
    if (spec.reps < 1)
        throw std::invalid_argument("need at least one replication");
    if (!(spec.noise_ratio > 0.0))
        throw std::invalid_argument("noise ratio must be positive");

    const std::size_t ns = spec.signals.size(), nm = spec.methods.size();
    std::vector<std::vector<double>> truths(ns);
    for (std::size_t s = 0; s < ns; ++s)
        truths[s] = test_function(spec.signals[s], spec.n);

    // sse[m][s][r]
    std::vector<std::vector<std::vector<double>>> sse(
        nm, std::vector<std::vector<double>>(ns,
            std::vector<double>(spec.reps)));

    std::vector<double> data(spec.n);
    for (std::size_t r = 0; r < spec.reps; ++r) {
        auto noise = noise_vector(spec.seed, r, spec.n);
        for (std::size_t s = 0; s < ns; ++s) {
            for (std::size_t i = 0; i < spec.n; ++i)
                data[i] = truths[s][i] + spec.noise_ratio * noise[i];
            for (std::size_t m = 0; m < nm; ++m) {
                const MethodSpec& ms = spec.methods[m];
                if (ms.kind == MethodSpec::Kind::Truth) {
                    sse[m][s][r] = 0.0;
                    continue;
                }
                DenoiseConfig cfg;
                cfg.rule.kind = ms.rule;
                cfg.transform = ms.transform;
                cfg.filter = spec.filter;
                cfg.coarsest_level = spec.coarsest;
                if (ms.kind == MethodSpec::Kind::Baseline) {
                    cfg.baseline = ms.baseline;
                } else {
                    cfg.prior = ms.prior;
                    cfg.estimate_scale = ms.estimate_scale;
                }
                auto res = denoise(data, cfg);
                sse[m][s][r] =
                    scaled_sse(res.estimate, truths[s], spec.noise_ratio);
            }
        }
    }

    SimulationReport rep;
    rep.spec = spec;
    rep.mean.assign(nm, std::vector<double>(ns, 0.0));
    rep.se.assign(nm, std::vector<double>(ns, 0.0));
    rep.paired.assign(nm, std::vector<double>(ns, 0.0));

    const double R = double(spec.reps);
    for (std::size_t m = 0; m < nm; ++m) {
        for (std::size_t s = 0; s < ns; ++s) {
            double mu = 0.0;
            for (double v : sse[m][s]) mu += v;
            mu /= R;
            rep.mean[m][s] = mu;
            if (spec.reps > 1) {
                double var = 0.0;
                for (double v : sse[m][s]) var += (v - mu) * (v - mu);
                var /= (R - 1.0);
                rep.se[m][s] = std::sqrt(var / R);
            }
            if (m > 0 && spec.reps > 1) {
                double dmu = 0.0;
                for (std::size_t r = 0; r < spec.reps; ++r)
                    dmu += sse[m][s][r] - sse[0][s][r];
                dmu /= R;
                double dvar = 0.0;
                for (std::size_t r = 0; r < spec.reps; ++r) {
                    double d = sse[m][s][r] - sse[0][s][r] - dmu;
                    dvar += d * d;
                }
                dvar /= (R - 1.0);
                double dse = std::sqrt(dvar / R);
                rep.paired[m][s] = (dse > 0.0) ? dmu / dse : 0.0;
            }
        }
    }
    return rep;
}

std::string report_csv(const SimulationReport& r) {
    std::string out = "method";
    for (const auto& s : r.spec.signals) {
        out += ',';
        out += s;
    }
    out += '\n';
    char buf[40];
    for (std::size_t m = 0; m < r.mean.size(); ++m) {
        out += r.spec.methods[m].label;
        for (double v : r.mean[m]) {
            std::snprintf(buf, sizeof buf, ",%.10g", v);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string report_json(const SimulationReport& r, std::string_view created) {
    nlohmann::json j;
    std::vector<std::string> labels;
    for (const auto& m : r.spec.methods) labels.push_back(m.label);
    j["spec"] = {
        {"signals", r.spec.signals}, {"n", r.spec.n},
        {"noise_ratio", r.spec.noise_ratio}, {"reps", r.spec.reps},
        {"seed", r.spec.seed}, {"methods", labels},
        {"filter", r.spec.filter}, {"coarsest", r.spec.coarsest}};
    j["table"] = nlohmann::json::array();
    for (std::size_t m = 0; m < r.mean.size(); ++m)
        for (std::size_t s = 0; s < r.spec.signals.size(); ++s)
            j["table"].push_back({{"method", labels[m]},
                                  {"signal", r.spec.signals[s]},
                                  {"mean", r.mean[m][s]},
                                  {"stderr", r.se[m][s]}});
    j["paired"] = nlohmann::json::array();
    for (std::size_t m = 1; m < r.mean.size(); ++m)
        for (std::size_t s = 0; s < r.spec.signals.size(); ++s)
            j["paired"].push_back({{"method", labels[m]},
                                   {"signal", r.spec.signals[s]},
                                   {"reference", labels[0]},
                                   {"diff_se", r.paired[m][s]}});
    j["created"] = std::string(created);
    j["version"] = "ebwave 1.0.0";
    return j.dump(2) + "\n";
}

} // namespace ebwave
