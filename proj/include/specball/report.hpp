#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "specball/matrix2.hpp"

namespace specball {

// All floating output goes through %.17g so that decimal text round-trips
// to the exact double, which is what the golden tests compare.
std::string format_double(double v);

// [re, im]
std::string format_complex(Complex z);

// [[[re,im],[re,im]],[[re,im],[re,im]]] row-major.
std::string mat2_to_json(const Mat2 &m);

using DetailValue = std::variant<double, std::int64_t, bool, std::string>;

// One verification check result, emitted as a single JSON line.
struct ReportLine {
    std::string check;
    bool pass = false;
    double max_deviation = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, DetailValue>> details;
};

std::string to_json(const ReportLine &line);

} // namespace specball
