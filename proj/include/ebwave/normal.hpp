#ifndef EBWAVE_NORMAL_HPP
#define EBWAVE_NORMAL_HPP

// Standard normal density, tails and quantiles, stable far into the tails.
// Everything here is a plain function of doubles; all heavy lifting in the
// rest of the library reduces to these primitives, so they are kept exact
// to close to machine precision over |x| up to several thousand.

namespace ebwave {

inline constexpr double inv_sqrt_2pi = 0.3989422804014326779399461;
inline constexpr double sqrt_2pi     = 2.5066282746310005024157653;
inline constexpr double log_sqrt_2pi = 0.9189385332046727417803297;

double phi(double x);          // density
double log_phi(double x);
double Phi(double x);          // lower tail P(Z <= x)
double phi_bar(double x);      // upper tail P(Z > x)
double log_Phi(double x);
double log_phi_bar(double x);

// Mills ratio phi_bar(x)/phi(x).  Uses erfc for |x| <= 35 and an asymptotic
// series beyond; for x << 0 it grows like exp(x^2/2) and eventually
// overflows to +inf, which callers must expect.
double mills_ratio(double x);
double log_mills(double x);

// Inverse CDF.  Rational approximation polished by one Halley step of
// Newton's method; absolute error well below 1e-9 over (0,1), in practice
// close to full double precision except at the extreme denormal tail.
double quantile(double p);
// z such that phi_bar(z) = p, i.e. -quantile(p).
double upper_quantile(double p);
// Same with p given as log p, usable when p would underflow a double.
double upper_quantile_log(double logp);

// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

} // namespace ebwave

#endif
