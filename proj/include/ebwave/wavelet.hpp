#ifndef EBWAVE_WAVELET_HPP
#define EBWAVE_WAVELET_HPP

// Orthonormal periodic discrete wavelet transform, its translation-invariant
// (nondecimated) variant with average-basis reconstruction, and the MAD
// noise-level estimator.
//
// Conventions.  Signals have length N = 2^J and circular boundary handling.
// One analysis step maps a length-m block x to
//   approx[k]  = sum_m h[m] x[(2k+m) mod m_len]
//   detail[k]  = sum_m g[m] x[(2k+m) mod m_len]
// with the quadrature-mirror highpass g[m] = (-1)^m h[len-1-m].  The inverse
// step is the adjoint.  Levels are indexed so that level j holds 2^j
// decimated detail coefficients, j running from `coarsest` (L) up to J-1
// (finest); the remaining 2^L scaling coefficients are kept verbatim.
//
// The nondecimated transform stores, per level, the decimated coefficients
// of every circular shift of the input interleaved into one length-N plane:
// plane[p + k*2^{J-j}] is coefficient k of the decimated transform of the
// signal rotated left by p.  Average-basis reconstruction averages the
// ordinary inverse over all origins, implemented one stage at a time.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebwave {

struct FilterBank {
    std::string name;
    std::vector<double> lowpass;
    std::vector<double> highpass;

    // Shipped filters: haar, daub4, daub6, daub8, daub10 (extremal phase)
    // and sym8 (least asymmetric).  Unknown names throw invalid_argument.
    static const FilterBank& get(std::string_view name);
    static std::vector<std::string> available();
};

struct Pyramid {
    int coarsest = 0;                         // L
    std::size_t n = 0;                        // N = 2^J
    std::vector<std::vector<double>> detail;  // detail[i]: level L+i, 2^{L+i} long
    std::vector<double> scaling;              // 2^L coarse scaling coefficients
    const FilterBank* filter = nullptr;

    int levels() const { return static_cast<int>(detail.size()); }
    int level_of(int i) const { return coarsest + i; }
};

struct TIPyramid {
    int coarsest = 0;
    std::size_t n = 0;
    std::vector<std::vector<double>> detail;  // detail[i]: level L+i, N long
    std::vector<double> scaling;              // N long
    const FilterBank* filter = nullptr;

    int levels() const { return static_cast<int>(detail.size()); }
    int level_of(int i) const { return coarsest + i; }
};

Pyramid dwt_periodic(std::span<const double> signal, const FilterBank& fb,
                     int coarsest);
std::vector<double> idwt_periodic(const Pyramid& p);

TIPyramid ti_dwt(std::span<const double> signal, const FilterBank& fb,
                 int coarsest);
std::vector<double> ti_idwt_average_basis(const TIPyramid& p);

// median(|coeffs|) / 0.6745; the usual robust noise-sd estimate from a
// detail level.  Throws NumericError when the median absolute value is 0.
double mad_sigma(std::span<const double> coeffs);

} // namespace ebwave

#endif
