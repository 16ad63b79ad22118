#include "doctest.h"
#include "ebwave/signals.hpp"
#include "ebwave/io.hpp"
#include "ebwave/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using namespace ebwave;

static const char* names[] = { "blocks", "bumps", "doppler", "heavisine" };

TEST_CASE("test signals are normalized to unit sample sd") {
    for (const char* name : names)
        for (std::size_t n : { 64u, 1024u, 4096u }) {
            std::vector<double> f = test_function(name, n);
            REQUIRE(f.size() == n);
            double mean = 0.0;
            for (double v : f) mean += v;
            mean /= double(n);
            double ss = 0.0;
            for (double v : f) ss += (v - mean) * (v - mean);
            double sd = std::sqrt(ss / double(n - 1));
            CHECK(sd == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("signal shapes") {
    {
        std::vector<double> f = test_function("blocks", 2048);
        int jumps = 0;
        for (std::size_t i = 1; i < f.size(); ++i)
            jumps += (f[i] != f[i - 1]);
        CHECK(jumps > 0);
        CHECK(jumps <= 12);
    }
    {
        std::vector<double> f = test_function("bumps", 1024);
        for (double v : f) CHECK(v > 0.0);
    }
    {
        std::vector<double> f = test_function("doppler", 1024);
        CHECK(f.back() == 0.0);           // envelope vanishes at t = 1
        CHECK(std::fabs(f.front()) < 0.2);
    }
    {
        std::vector<double> f = test_function("heavisine", 1024);
        // two jumps from the sign terms, otherwise smooth
        int big = 0;
        for (std::size_t i = 1; i < f.size(); ++i)
            big += (std::fabs(f[i] - f[i - 1]) > 0.5);
        CHECK(big == 2);
    }
    CHECK_THROWS_AS((void)test_function("blocks", 8), std::invalid_argument);
    CHECK_THROWS_AS((void)test_function("square", 64), std::invalid_argument);
}

TEST_CASE("scaled error metric") {
    std::vector<double> truth = test_function("heavisine", 1024);
    CHECK(scaled_sse(truth, truth, 1.0 / 3.0) == 0.0);
    std::vector<double> off(truth);
    for (double& v : off) v += 0.25;
    CHECK(scaled_sse(off, truth, 0.25) == doctest::Approx(1024.0).epsilon(1e-12));
    std::vector<double> wrong(truth.begin(), truth.begin() + 100);
    CHECK_THROWS_AS((void)scaled_sse(wrong, truth, 1.0), DataError);
    CHECK_THROWS_AS((void)scaled_sse(truth, truth, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)scaled_sse(truth, truth, -1.0), std::invalid_argument);
}

TEST_CASE("value files round trip") {
    const std::string path = "io_test_roundtrip.txt";
    std::vector<double> vals = { 0.0, -1.5, 3.141592653589793, 1e-300,
                                 -2.2250738585072014e-308, 7.0 / 3.0, 1e17 };
    write_values(path, vals);
    std::vector<double> back = read_values(path);
    REQUIRE(back.size() == vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        CHECK(back[i] == vals[i]);
    std::remove(path.c_str());
}

TEST_CASE("value files tolerate comments and report bad lines") {
    const std::string good = "io_test_comments.txt";
    write_text(good, "# header\n1.5\n\n  2.5\n# trailing\n-3e2\n");
    std::vector<double> v = read_values(good);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1.5);
    CHECK(v[1] == 2.5);
    CHECK(v[2] == -300.0);
    std::remove(good.c_str());

    const std::string bad = "io_test_bad.txt";
    write_text(bad, "1.0\n2.0\nfoo\n");
    try {
        (void)read_values(bad);
        FAIL("expected a data error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    std::remove(bad.c_str());

    CHECK_THROWS_AS((void)read_values("definitely_missing_file.txt"), DataError);
}
