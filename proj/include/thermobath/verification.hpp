// verification.hpp — Cross-level self-checks behind the `verify` subcommand

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thermobath {

struct CheckResult {
    std::string name;
    bool passed{false};
    double value{0.0};
    double target{0.0};
    double tolerance{0.0};
    std::string detail;
};

struct VerifyOptions {
    bool full{false}; // full: acceptance-size ensembles; quick: reduced sizes
    unsigned threads{0};
    std::uint64_t seed{20240601};
};

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

} // namespace thermobath
