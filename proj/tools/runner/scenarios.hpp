#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "opqsl/types.hpp"
#include "table.hpp"

namespace opqsl::runner {

/// One bound compared against its truth curve.
struct BoundCheck {
    std::string curve;
    std::string bound;
    double min_margin = 0.0;     // min over the checked points of (truth - floor) or (ceiling - |truth|)
    std::size_t violations = 0;  // points with margin < -tolerance
    bool validity_claimed = true;
};

struct RunSummary {
    std::string scenario;
    std::vector<std::pair<std::string, std::uint64_t>> seeds;
    std::vector<std::pair<std::string, double>> scalars;  // crossover times and other derived values
    std::vector<BoundCheck> checks;
    double wall_seconds = 0.0;
    std::vector<std::string> files;

    /// Violations summed over validity-claimed checks.
    std::size_t validity_violations() const;
};

struct ScenarioOutput {
    std::vector<Table> tables;
    RunSummary summary;
};

/// Relative tolerance used for every bound check.
inline constexpr double kCheckTolerance = 1e-9;

/// Execute without touching the filesystem (custom_matrix reads its inputs).
ScenarioOutput run_scenario(const ScenarioConfig& cfg);

/// Write the CSV tables and summary.json into `dir`. Returns the files written.
std::vector<std::filesystem::path> write_outputs(const ScenarioOutput& out, const ScenarioConfig& cfg,
                                                 const std::filesystem::path& dir);

std::string summary_json(const RunSummary& s, const ScenarioConfig& cfg);

/// Read a square matrix: one row per line, entries "re" or "(re,im)"
/// separated by whitespace; '#' starts a comment line.
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

}  // namespace opqsl::runner
