#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opqsl/response.hpp"

namespace opqsl::runner {

enum class Scenario { qubit_autocorr, goe_autocorr, goe_fidelity, response_qubit, qfi_sweep, custom_matrix };

std::string_view scenario_name(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
const std::vector<Scenario>& all_scenarios();
/// One-line description for list-scenarios.
std::string_view scenario_summary(Scenario s);

/// Malformed or out-of-range configuration. `field()` is "section.key" when the
/// problem is tied to one entry, `line()` is 0 when unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message, unsigned long line = 0);
    const std::string& field() const { return field_; }
    unsigned long line() const { return line_; }

private:
    std::string field_;
    unsigned long line_;
};

struct TimeBlock {
    double t_min = 0.0;
    double t_max = 1.0;
    std::size_t n_points = 201;
};

struct QubitBlock {
    double a = 10.0;
    double b = 1.0;
    double c = 1.0;
    double k = 0.0;
    double beta = 10.0;
};

struct GoeBlock {
    int dim = 200;
    double sigma = 1.0;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> seed2;
    double beta = 0.1;
};

struct ResponseBlock {
    BogoliubovVariant variant = BogoliubovVariant::derived;
    double beta = 10.0;
    double lambda = 0.01;
};

struct QfiBlock {
    std::vector<double> betas{0.5, 1.0, 2.0, 10.0};
};

struct CustomBlock {
    std::filesystem::path hamiltonian_file;
    std::filesystem::path operator_file;
    double beta = 1.0;
};

struct ResolvedEntry {
    std::string key;  // section.key
    std::string value;
    bool is_default = false;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::qubit_autocorr;
    TimeBlock time;
    QubitBlock qubit;
    GoeBlock goe;
    ResponseBlock response;
    QfiBlock qfi;
    CustomBlock custom;
    std::filesystem::path output_dir = "out";
    /// Every key the scenario reads, with the value used.
    std::vector<ResolvedEntry> resolved;
};

/// Parse INI text. `overrides` are "section.key=value" strings applied on top
/// of the file; relative matrix paths resolve against `base_dir`.
ScenarioConfig parse_config(std::istream& in, const std::vector<std::string>& overrides = {},
                            const std::filesystem::path& base_dir = {});

ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

}  // namespace opqsl::runner
