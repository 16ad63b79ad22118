#pragma once
// Extended-precision oracles for cross-checking the closed forms in the
// library: long-double normal helpers, adaptive Simpson quadrature over the
// mixture integrands, and quadrature-based posterior functionals.  Everything
// here is deliberately independent of the implementation under test (no
// calls into ebwave numerics beyond the Prior tag type).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ebwave/priors.hpp"

namespace oracle {

inline long double phi(long double x) {
    const long double c = 0.3989422804014326779399460599343819L;
    return c * std::exp(-0.5L * x * x);
}

inline long double phi_bar(long double x) {
    const long double inv_sqrt2 = 0.7071067811865475244008443621048490L;
    return 0.5L * std::erfc(x * inv_sqrt2);
}

inline long double mills(long double x) {
    if (x > 120.0L) {
        // asymptotic series: erfc underflows long double near x ~ 150
        long double r = 1.0L / x, x2 = r * r;
        return r * (1.0L - x2 * (1.0L - x2 * (3.0L - x2 * (15.0L - 105.0L * x2))));
    }
    return phi_bar(x) / phi(x);
}

// slab density in long double
struct Slab {
    int kind;          // 0 laplace, 1 quasi-cauchy, 2 gaussian
    long double par;   // scale a, unused, tau

    long double operator()(long double u) const {
        u = std::fabs(u);
        switch (kind) {
        case 0: return 0.5L * par * std::exp(-par * u);
        case 1: return 0.3989422804014326779399460599343819L * (1.0L - u * mills(u));
        default: return phi(u / par) / par;
        }
    }
    static Slab laplace(long double a) { return {0, a}; }
    static Slab quasi_cauchy() { return {1, 0.0L}; }
    static Slab gaussian(long double tau) { return {2, tau}; }
    static Slab of(const ebwave::Prior& p) {
        switch (p.kind) {
        case ebwave::Prior::Kind::Laplace: return laplace(p.scale);
        case ebwave::Prior::Kind::QuasiCauchy: return quasi_cauchy();
        default: return gaussian(p.scale);
        }
    }
};

using Fn = std::function<long double(long double)>;

inline long double simpson_rec(const Fn& f, long double a, long double b,
                               long double fa, long double fm, long double fb,
                               long double whole, long double tol, int depth) {
    long double m = 0.5L * (a + b);
    long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    long double flm = f(lm), frm = f(rm);
    long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    long double err = left + right - whole;
    // stop on the requested tolerance or once the correction sits at the
    // long-double rounding plateau; otherwise tightening recurses forever
    long double floor_tol =
        1e-19L * (std::fabs(left) + std::fabs(right)) + 1e-300L;
    if (depth <= 0 || std::fabs(err) <= 15.0L * std::max(tol, floor_tol))
        return left + right + err / 15.0L;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1)
         + simpson_rec(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

inline long double integrate_segment(const Fn& f, long double a, long double b,
                                     long double tol) {
    if (!(b > a)) return 0.0L;
    // seed with a uniform composite grid before adapting: a cold start from
    // three nearly-zero probes would accept 0 across a narrow interior lobe
    const int n = 32;
    long double h = (b - a) / n, total = 0.0L;
    long double x0 = a, f0 = f(a);
    for (int i = 0; i < n; ++i) {
        long double x1 = (i + 1 == n) ? b : a + (i + 1) * h;
        long double m = 0.5L * (x0 + x1), fm = f(m), f1 = f(x1);
        long double whole = (x1 - x0) / 6.0L * (f0 + 4.0L * fm + f1);
        total += simpson_rec(f, x0, x1, f0, fm, f1, whole, tol / n, 42);
        x0 = x1;
        f0 = f1;
    }
    return total;
}

// integrate f over [lo, hi] split at the kink/peak points given
inline long double integrate(const Fn& f, long double lo, long double hi,
                             std::vector<long double> splits,
                             long double tol = 1e-14L) {
    splits.push_back(lo);
    splits.push_back(hi);
    std::sort(splits.begin(), splits.end());
    long double total = 0.0L, prev = lo;
    for (long double s : splits) {
        if (s <= prev || s > hi) continue;
        total += integrate_segment(f, prev, s, tol);
        prev = s;
    }
    return total;
}

// marginal density g(z) = int gamma(u) phi(z-u) du by quadrature
inline long double marginal_g(const Slab& s, long double z) {
    long double lo = z - 48.0L, hi = z + 48.0L;
    Fn f = [&](long double u) { return s(u) * phi(z - u); };
    return integrate(f, lo, hi, {0.0L, z});
}

// numerator of the nonzero-posterior tail: int_m^inf gamma(u) phi(z-u) du
inline long double tail_num(const Slab& s, long double m, long double z) {
    long double hi = z + 48.0L;
    if (m >= hi) return 0.0L;
    long double lo = std::max(m, z - 48.0L);
    Fn f = [&](long double u) { return s(u) * phi(z - u); };
    return integrate(f, lo, hi, {0.0L, z});
}

// P(mu > m | Z = z, mu != 0)
inline long double tail_prob(const Slab& s, long double m, long double z) {
    return tail_num(s, m, z) / marginal_g(s, z);
}

// E(mu | Z = z, mu != 0)
inline long double nonzero_mean(const Slab& s, long double z) {
    long double lo = z - 48.0L, hi = z + 48.0L;
    Fn f = [&](long double u) { return u * s(u) * phi(z - u); };
    return integrate(f, lo, hi, {0.0L, z}) / marginal_g(s, z);
}

// posterior median of mu given Z = z under the two-point mixture with
// nonzero mass w, located by bisection on the quadrature CDF
inline double posterior_median(const Slab& s, double w, double z) {
    if (z < 0.0) return -posterior_median(s, w, -z);
    long double g = marginal_g(s, z);
    long double wpost = w * g / (w * g + (1.0L - (long double)w) * phi(z));
    if (z == 0.0 || wpost * tail_prob(s, 0.0L, z) <= 0.5L)
        return 0.0;
    long double lo = 0.0L, hi = z;
    if (wpost * tail_num(s, hi, z) / g > 0.5L)
        return z;   // median beyond z: not expected for these slabs
    for (int i = 0; i < 80; ++i) {
        long double mid = 0.5L * (lo + hi);
        (wpost * tail_num(s, mid, z) / g > 0.5L ? lo : hi) = mid;
    }
    return double(0.5L * (lo + hi));
}

} // namespace oracle
