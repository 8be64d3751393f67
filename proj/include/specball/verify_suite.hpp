#pragma once

#include <cstdint>
#include <vector>

#include "specball/report.hpp"

namespace specball {

// Knobs of the default verification suite.  `tol` scales every pass
// threshold: round trips and the commutation identity pass at tol, spectrum
// and conjugate-invariance checks at tol/10, the lower-twist entry/trace/det
// invariances at tol/1000.
struct SuiteConfig {
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    double tol = 1e-9;
    unsigned workers = 1;
};

struct SuiteResult {
    std::vector<ReportLine> lines; // sorted by check name
    bool all_pass = false;
};

// Runs the whole default corpus: spectrum preservation for the structured
// conjugation forms, Moebius spectral mapping, round trips, the commutation
// identity, lower-twist invariance, diagonal-conjugation round trips, and the
// conjugate-invariance separation.
SuiteResult run_default_suite(const SuiteConfig &cfg);

} // namespace specball
