#pragma once

// Named reproduction targets. Each writes its CSV artifacts and compares the
// headline numbers with embedded expectations.

#include "afc/csv.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace afc {

struct Check {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;

    bool pass() const;
};

struct ReproduceOutcome {
    std::string target;
    std::vector<Check> checks;
    std::vector<std::filesystem::path> files;

    bool pass() const;
};

/// Target names in a fixed order ("all" is not included).
std::vector<std::string> reproduce_targets();

/// Throws DomainError for an unknown target.
ReproduceOutcome reproduce(std::string_view target, const std::filesystem::path& out_dir,
                           const csv::Units& units = {});

} // namespace afc
