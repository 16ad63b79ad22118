#ifndef EBWAVE_SIGNALS_HPP
#define EBWAVE_SIGNALS_HPP

// The four standard piecewise/oscillatory regression test signals (blocks,
// bumps, doppler, heavisine) sampled on t_i = i/n and rescaled to unit
// sample standard deviation, plus the scaled error metric used by the
// simulation study.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ebwave {

// n >= 16; names: blocks | bumps | doppler | heavisine.
std::vector<double> test_function(std::string_view name, std::size_t n);

// sigma_e^{-2} * sum (estimate_i - truth_i)^2.
double scaled_sse(std::span<const double> estimate,
                  std::span<const double> truth, double sigma_e);

} // namespace ebwave

#endif
