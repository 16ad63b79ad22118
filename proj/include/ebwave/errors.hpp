#ifndef EBWAVE_ERRORS_HPP
#define EBWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ebwave {

// Bad input data: empty sequences, non-finite values, wrong lengths.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure during an otherwise well-posed computation,
// e.g. a degenerate noise-scale estimate or a weight underflow.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ebwave

#endif
