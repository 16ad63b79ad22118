#ifndef EBWAVE_PRIORS_HPP
#define EBWAVE_PRIORS_HPP

// Heavy-tailed prior families for the sparse normal-means model.  Each mean
// mu_i is 0 with probability 1-w and otherwise drawn from a symmetric
// density gamma; the observation is z ~ N(mu, 1).  This header provides the
// densities, the convolution marginal g = gamma * phi, and the posterior
// functionals (posterior nonzero mean, tail probability of the nonzero part
// of the posterior, posterior probability of being nonzero) that the
// threshold machinery is built on.
//
// Supported families:
//   Laplace      gamma_a(u) = (a/2) exp(-a|u|),          scale a > 0
//   QuasiCauchy  gamma(u)   = (2pi)^{-1/2} (1 - |u| phi_bar(|u|)/phi(u)),
//                Cauchy-like tails, no free scale
//   Gaussian     gamma(u)   = N(0, tau^2).  Included for comparison; its
//                tails are too light for the usual risk guarantees, which
//                tail_conditions_met() reports.

#include <cstddef>

namespace ebwave {

struct Prior {
    enum class Kind { Laplace, QuasiCauchy, Gaussian };

    Kind kind = Kind::Laplace;
    double scale = 0.5;   // Laplace a, Gaussian tau; ignored for quasi-Cauchy

    static Prior laplace(double a);
    static Prior quasi_cauchy();
    static Prior gaussian(double tau);

    // Whether log gamma has a bounded derivative (tails at least as heavy
    // as exponential).  True for Laplace and quasi-Cauchy, false for the
    // Gaussian family.
    bool tail_conditions_met() const { return kind != Kind::Gaussian; }
};

// Prior density gamma(u).
double gamma_density(const Prior& p, double u);

// Marginal density g(z) = (gamma * phi)(z).
double marginal_density(const Prior& p, double z);

// log of the likelihood ratio g(z)/phi(z); finite for all z, grows like
// z^2/2 for the heavy-tailed families.
double log_marginal_ratio(const Prior& p, double z);

// Posterior mean of mu given z, conditional on mu != 0.
double posterior_nonzero_mean(const Prior& p, double z);

// Upper tail P(mu > m | z, mu != 0) of the nonzero part of the posterior.
double nonzero_tail_prob(const Prior& p, double m, double z);

// Posterior probability that mu != 0 when the prior weight is w.
double posterior_nonzero_prob(const Prior& p, double w, double z);

// beta(z) = g(z)/phi(z) - 1 rescaled by the mixture: the summand of the
// marginal log-likelihood derivative with respect to w,
//   beta(z, w) = (g - phi) / ((1-w) phi + w g).
// Saturates at 1/w when z is so large that g/phi overflows.
double beta_weight_score(const Prior& p, double z, double w);

} // namespace ebwave

#endif
