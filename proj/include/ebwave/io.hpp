#ifndef EBWAVE_IO_HPP
#define EBWAVE_IO_HPP

// Newline-delimited real-valued data files, written with enough digits to
// round-trip doubles exactly.

#include <span>
#include <string>
#include <vector>

namespace ebwave {

std::vector<double> read_values(const std::string& path);
void write_values(const std::string& path, std::span<const double> values);

void write_text(const std::string& path, const std::string& text);

} // namespace ebwave

#endif
