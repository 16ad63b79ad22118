#include "ebwave/io.hpp"
#include "ebwave/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ebwave {

std::vector<double> read_values(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open input file: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const char* s = line.c_str();
        while (*s == ' ' || *s == '\t') ++s;
        if (*s == '\0' || *s == '#') continue;
        char* end = nullptr;
        double v = std::strtod(s, &end);
        while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
        if (end == s || (end && *end != '\0')) {
            std::ostringstream msg;
            msg << "cannot parse value at " << path << ":" << lineno;
            throw DataError(msg.str());
        }
        values.push_back(v);
    }
    return values;
}

void write_values(const std::string& path, std::span<const double> values) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot open output file: " + path);
    char buf[40];
    for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
    }
    if (!out)
        throw DataError("write failed: " + path);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot open output file: " + path);
    out << text;
    if (!out)
        throw DataError("write failed: " + path);
}

} // namespace ebwave
