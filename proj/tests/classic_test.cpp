#include "doctest.h"
#include "ebwave/classic.hpp"
#include "ebwave/errors.hpp"
#include "ebwave/normal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace ebwave;

TEST_CASE("unbiased risk estimate evaluation") {
    std::mt19937_64 eng(5);
    std::normal_distribution<double> nd;
    std::vector<double> z(40);
    double ss = 0.0;
    for (double& v : z) { v = nd(eng); ss += v * v; }

    CHECK(sure_risk(z, 0.0) == doctest::Approx(40.0).epsilon(1e-15));
    double tbig = 10.0;
    CHECK(sure_risk(z, tbig) == doctest::Approx(ss - 40.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)sure_risk(std::vector<double>{}, 1.0), DataError);
}

TEST_CASE("risk minimizer over the candidate set") {
    {
        std::vector<double> z = { 0.1, 0.2, 5.0 };
        const double tmax = std::sqrt(2.0 * std::log(3.0));
        // exhaustive candidate evaluation in extended precision
        long double best_u = 1e30L;
        double best_t = 0.0;
        std::vector<double> cand = { 0.0, 0.1, 0.2, tmax };
        for (double t : cand) {
            long double u = 3.0L;
            for (double v : z) {
                long double v2 = (long double)v * v, t2 = (long double)t * t;
                u += std::min(v2, t2);
                if (v2 <= t2) u -= 2.0L;
            }
            if (u < best_u) { best_u = u; best_t = t; }
        }
        SureResult r = sure_threshold(z);
        CHECK(r.t_hat == best_t);
        CHECK(r.u_min == doctest::Approx(double(best_u)).epsilon(1e-12));
        CHECK(r.t_hat == 0.2);
        CHECK(r.u_min == doctest::Approx(-0.91).epsilon(1e-12));
    }
    {   // exact tie prefers the smaller threshold
        std::vector<double> z = { 1.0, 1.0 };
        SureResult r = sure_threshold(z);
        CHECK(r.t_hat == 1.0);
        CHECK(r.u_min == doctest::Approx(0.0));
    }
    // the minimum over a dense grid is never below the candidate minimum
    std::mt19937_64 eng(11);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> z(50);
        for (double& v : z) v = nd(eng) * (1 + rep % 2);
        SureResult r = sure_threshold(z);
        const double tmax = std::sqrt(2.0 * std::log(50.0));
        for (double t = 0.0; t <= tmax; t += 1e-3)
            CHECK(sure_risk(z, t) >= r.u_min - 1e-9);
        CHECK(r.t_hat <= tmax);
    }
}

TEST_CASE("false-discovery-rate threshold") {
    CHECK_THROWS_AS(FdrParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FdrParams(0.6), std::invalid_argument);
    CHECK_THROWS_AS(FdrParams(-0.1), std::invalid_argument);
    CHECK(FdrParams(0.5).q == 0.5);

    {
        std::vector<double> z(10, 100.0);
        CHECK(fdr_threshold(z, FdrParams(0.05))
              == doctest::Approx(1.9599639845400545).epsilon(1e-9));
    }
    {
        std::vector<double> z(5, 0.0);
        CHECK(fdr_threshold(z, FdrParams(0.05)) == 1.0);   // max|Z| + 1
    }
    {
        std::vector<double> z = { 4.0, 1.0, 0.5, 0.2 };
        // direct enumeration of the four boundary comparisons
        double expected = 0.0;
        bool found = false;
        for (int k = 4; k >= 1 && !found; --k) {
            double tk = upper_quantile(0.5 * 0.1 * double(k) / 4.0);
            double ak = z[k - 1];   // z already sorted descending
            if (ak >= tk) { expected = tk; found = true; }
        }
        CHECK(found);
        CHECK(expected == doctest::Approx(upper_quantile(0.0125)).epsilon(1e-12));
        CHECK(fdr_threshold(z, FdrParams(0.1)) == expected);
    }
    {   // an exact tie with the boundary counts as a crossing
        double t2 = upper_quantile(0.05);
        std::vector<double> z = { 3.0, t2 };
        CHECK(fdr_threshold(z, FdrParams(0.1)) == t2);
    }
    // monotone in q
    std::mt19937_64 eng(3);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> z(64);
        for (double& v : z) v = 1.5 * nd(eng);
        double prev = 1e300;
        for (double q : { 0.01, 0.05, 0.1, 0.25, 0.5 }) {
            double t = fdr_threshold(z, FdrParams(q));
            CHECK(t <= prev + 1e-12);
            prev = t;
        }
    }
}

TEST_CASE("pure-noise discoveries stay controlled") {
    std::mt19937_64 eng(2024);
    std::normal_distribution<double> nd;
    double total = 0.0;
    const int reps = 500;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<double> z(1000);
        for (double& v : z) v = nd(eng);
        double t = fdr_threshold(z, FdrParams(0.05));
        for (double v : z) total += (std::fabs(v) >= t);
    }
    CHECK(total / reps < 5.0);
}

TEST_CASE("universal threshold") {
    CHECK(universal_threshold(1024) == doctest::Approx(3.7232974110590336).epsilon(1e-12));
    CHECK(universal_threshold(2) == doctest::Approx(1.1774100225154747).epsilon(1e-12));
    CHECK_THROWS_AS((void)universal_threshold(1), std::invalid_argument);
}
