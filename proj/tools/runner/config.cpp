#include "config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "format.hpp"
#include "opqsl/diagnostics.hpp"

namespace opqsl::runner {
namespace {

namespace pt = boost::property_tree;

struct ScenarioInfo {
    Scenario id;
    std::string_view name;
    std::string_view summary;
};

constexpr std::array<ScenarioInfo, 6> kScenarios{{
    {Scenario::qubit_autocorr, "qubit_autocorr", "two-level autocorrelation with MT/ML floors and the Im C ceiling"},
    {Scenario::goe_autocorr, "goe_autocorr", "normalized autocorrelation for a GOE Hamiltonian and GOE operator"},
    {Scenario::goe_fidelity, "goe_fidelity", "coherent Gibbs state fidelity of a GOE Hamiltonian against the ML state floor"},
    {Scenario::response_qubit, "response_qubit", "spin-1/2 susceptibility with Heisenberg, Bogoliubov and QSL ceilings"},
    {Scenario::qfi_sweep, "qfi_sweep", "thermal QFI of a qubit over a list of inverse temperatures"},
    {Scenario::custom_matrix, "custom_matrix", "autocorrelation bounds for user-supplied H and O matrices"},
}};

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"scenario", {"name"}},
        {"time", {"t_min", "t_max", "n_points"}},
        {"qubit", {"a", "b", "c", "k", "beta"}},
        {"goe", {"dim", "sigma", "seed", "seed2", "beta"}},
        {"response", {"variant", "beta", "lambda"}},
        {"qfi", {"betas"}},
        {"custom", {"hamiltonian_file", "operator_file", "beta"}},
        {"output", {"dir"}},
    };
    return s;
}

std::set<std::string> sections_used(Scenario s) {
    switch (s) {
        case Scenario::qubit_autocorr: return {"scenario", "time", "qubit", "output"};
        case Scenario::goe_autocorr:
        case Scenario::goe_fidelity: return {"scenario", "time", "goe", "output"};
        case Scenario::response_qubit: return {"scenario", "time", "response", "output"};
        case Scenario::qfi_sweep: return {"scenario", "qubit", "qfi", "output"};
        case Scenario::custom_matrix: return {"scenario", "time", "custom", "output"};
    }
    return {};
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// section.key -> line, for diagnostics. Mirrors the ini_parser grammar.
std::map<std::string, unsigned long> index_lines(const std::string& text) {
    std::map<std::string, unsigned long> lines;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    unsigned long n = 0;
    while (std::getline(in, raw)) {
        ++n;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == ';' || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            lines.emplace(section, n);
            continue;
        }
        const auto eq = line.find('=');
        if (eq != std::string::npos) lines.emplace(section + "." + trim(line.substr(0, eq)), n);
    }
    return lines;
}

class Reader {
public:
    Reader(const pt::ptree& tree, std::map<std::string, unsigned long> lines, std::vector<ResolvedEntry>& out)
        : tree_(tree), lines_(std::move(lines)), out_(out) {}

    [[noreturn]] void fail(const std::string& field, const std::string& message) const {
        const auto it = lines_.find(field);
        throw ConfigError(field, message, it == lines_.end() ? 0 : it->second);
    }

    std::optional<std::string> raw(const std::string& field) const {
        const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'));
        if (!v) return std::nullopt;
        return trim(*v);
    }

    double real(const std::string& field, double fallback) {
        const auto v = raw(field);
        if (!v) {
            record(field, format_number(fallback), true);
            return fallback;
        }
        const double x = parse_real(field, *v);
        record(field, *v, false);
        return x;
    }

    template <typename Int>
    Int integer(const std::string& field, Int fallback) {
        const auto v = raw(field);
        if (!v) {
            record(field, std::to_string(fallback), true);
            return fallback;
        }
        const Int x = parse_integer<Int>(field, *v);
        record(field, *v, false);
        return x;
    }

    template <typename Int>
    std::optional<Int> optional_integer(const std::string& field) {
        const auto v = raw(field);
        if (!v) return std::nullopt;
        const Int x = parse_integer<Int>(field, *v);
        record(field, *v, false);
        return x;
    }

    std::string text(const std::string& field, const std::string& fallback) {
        const auto v = raw(field);
        record(field, v ? *v : fallback, !v);
        return v ? *v : fallback;
    }

    std::vector<double> real_list(const std::string& field, const std::vector<double>& fallback) {
        const auto v = raw(field);
        if (!v) {
            std::string joined;
            for (double x : fallback) joined += (joined.empty() ? "" : ", ") + format_number(x);
            record(field, joined, true);
            return fallback;
        }
        std::vector<double> out;
        std::string token;
        std::istringstream in(*v);
        while (std::getline(in, token, ',')) {
            const std::string t = trim(token);
            if (t.empty()) fail(field, "empty entry in list");
            out.push_back(parse_real(field, t));
        }
        if (out.empty()) fail(field, "list is empty");
        record(field, *v, false);
        return out;
    }

    void record(const std::string& field, const std::string& value, bool is_default) {
        out_.push_back({field, value, is_default});
    }

private:
    double parse_real(const std::string& field, const std::string& v) const {
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
            fail(field, "expected a finite real number, got '" + v + "'");
        }
        return x;
    }

    template <typename Int>
    Int parse_integer(const std::string& field, const std::string& v) const {
        Int x{};
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || ptr != v.data() + v.size()) {
            fail(field, "expected an integer, got '" + v + "'");
        }
        return x;
    }

    const pt::ptree& tree_;
    std::map<std::string, unsigned long> lines_;
    std::vector<ResolvedEntry>& out_;
};

void check_structure(const pt::ptree& tree, const Reader& r) {
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (body.empty() && !body.data().empty()) r.fail(section, "entry outside of any [section]");
        if (it == schema().end()) r.fail(section, "unknown section [" + section + "]");
        for (const auto& [key, value] : body) {
            if (!it->second.contains(key)) r.fail(section + "." + key, "unknown key '" + key + "' in [" + section + "]");
        }
    }
}

void apply_overrides(pt::ptree& tree, const std::vector<std::string>& overrides) {
    for (const std::string& o : overrides) {
        const auto eq = o.find('=');
        const std::string key = trim(std::string_view(o).substr(0, eq));
        const auto dot = key.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
            throw ConfigError(key, "override must look like section.key=value, got '" + o + "'");
        }
        const auto sec = schema().find(key.substr(0, dot));
        if (sec == schema().end() || !sec->second.contains(key.substr(dot + 1))) {
            throw ConfigError(key, "override names an unknown key '" + key + "'");
        }
        tree.put(pt::ptree::path_type(key, '.'), trim(std::string_view(o).substr(eq + 1)));
    }
}

TimeBlock time_defaults(Scenario s) {
    switch (s) {
        case Scenario::qubit_autocorr: return {0.0, 1.0, 1001};
        case Scenario::goe_autocorr: return {0.0, 0.2, 401};
        case Scenario::goe_fidelity: return {0.0, 0.2, 401};
        case Scenario::response_qubit: return {0.0, 5.0, 1001};
        case Scenario::qfi_sweep:
        case Scenario::custom_matrix: return {0.0, 1.0, 201};
    }
    return {};
}

void read_time(Reader& r, ScenarioConfig& cfg) {
    const TimeBlock d = time_defaults(cfg.scenario);
    cfg.time.t_min = r.real("time.t_min", d.t_min);
    cfg.time.t_max = r.real("time.t_max", d.t_max);
    cfg.time.n_points = r.integer<std::size_t>("time.n_points", d.n_points);
    if (cfg.time.t_min < 0.0) r.fail("time.t_min", "must be >= 0");
    if (!(cfg.time.t_max > cfg.time.t_min)) r.fail("time.t_max", "must be greater than time.t_min");
    if (cfg.time.n_points < 2) r.fail("time.n_points", "must be at least 2");
    if (cfg.scenario == Scenario::response_qubit && cfg.time.t_min != 0.0) {
        r.fail("time.t_min", "response_qubit integrates the Kubo formula from t = 0; t_min must be 0");
    }
}

void read_qubit(Reader& r, ScenarioConfig& cfg) {
    auto& q = cfg.qubit;
    q.a = r.real("qubit.a", q.a);
    q.b = r.real("qubit.b", q.b);
    q.c = r.real("qubit.c", q.c);
    q.k = r.real("qubit.k", q.k);
    if (cfg.scenario != Scenario::qfi_sweep) {
        q.beta = r.real("qubit.beta", q.beta);
        if (q.beta < 0.0) r.fail("qubit.beta", "must be >= 0");
    }
    if (q.a == 0.0 && q.b == 0.0 && q.c == 0.0) r.fail("qubit.a", "a, b and c all vanish; the qubit has no dynamics");
}

void read_goe(Reader& r, ScenarioConfig& cfg) {
    auto& g = cfg.goe;
    const bool fidelity = cfg.scenario == Scenario::goe_fidelity;
    g.dim = r.integer<int>("goe.dim", fidelity ? 50 : 200);
    g.sigma = r.real("goe.sigma", 1.0);
    g.seed = r.optional_integer<std::uint64_t>("goe.seed");
    if (!g.seed) r.fail("goe.seed", "an explicit seed is required for GOE scenarios");
    if (!fidelity) {
        g.seed2 = r.optional_integer<std::uint64_t>("goe.seed2");
        if (!g.seed2) {
            g.seed2 = *g.seed + 1;
            r.record("goe.seed2", std::to_string(*g.seed2), true);
        }
    }
    g.beta = r.real("goe.beta", fidelity ? 10.0 : 0.1);
    if (g.dim < 2) r.fail("goe.dim", "must be at least 2");
    if (!(g.sigma > 0.0)) r.fail("goe.sigma", "must be positive");
    if (g.beta < 0.0) r.fail("goe.beta", "must be >= 0");
}

void read_response(Reader& r, ScenarioConfig& cfg) {
    const std::string v = r.text("response.variant", "derived");
    if (v == "derived") {
        cfg.response.variant = BogoliubovVariant::derived;
    } else if (v == "as_printed") {
        cfg.response.variant = BogoliubovVariant::as_printed;
    } else {
        r.fail("response.variant", "expected 'derived' or 'as_printed', got '" + v + "'");
    }
    cfg.response.beta = r.real("response.beta", cfg.response.beta);
    cfg.response.lambda = r.real("response.lambda", cfg.response.lambda);
    if (!(cfg.response.beta > 0.0)) r.fail("response.beta", "must be positive");
}

void read_qfi(Reader& r, ScenarioConfig& cfg) {
    cfg.qfi.betas = r.real_list("qfi.betas", cfg.qfi.betas);
    for (double b : cfg.qfi.betas) {
        if (!(b > 0.0)) r.fail("qfi.betas", "every inverse temperature must be positive");
    }
}

void read_custom(Reader& r, ScenarioConfig& cfg, const std::filesystem::path& base) {
    const std::string h = r.text("custom.hamiltonian_file", "");
    const std::string o = r.text("custom.operator_file", "");
    if (h.empty()) r.fail("custom.hamiltonian_file", "required for custom_matrix");
    if (o.empty()) r.fail("custom.operator_file", "required for custom_matrix");
    auto resolve = [&](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_relative() && !base.empty() ? base / path : path;
    };
    cfg.custom.hamiltonian_file = resolve(h);
    cfg.custom.operator_file = resolve(o);
    cfg.custom.beta = r.real("custom.beta", cfg.custom.beta);
    if (cfg.custom.beta < 0.0) r.fail("custom.beta", "must be >= 0");
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message, unsigned long line)
    : std::runtime_error([&] {
          std::string what;
          if (line > 0) what += "line " + std::to_string(line) + ": ";
          if (!field.empty()) what += field + ": ";
          return what + message;
      }()),
      field_(std::move(field)),
      line_(line) {}

std::string_view scenario_name(Scenario s) {
    for (const auto& info : kScenarios) {
        if (info.id == s) return info.name;
    }
    return "unknown";
}

std::string_view scenario_summary(Scenario s) {
    for (const auto& info : kScenarios) {
        if (info.id == s) return info.summary;
    }
    return {};
}

std::optional<Scenario> parse_scenario(std::string_view name) {
    for (const auto& info : kScenarios) {
        if (info.name == name) return info.id;
    }
    return std::nullopt;
}

const std::vector<Scenario>& all_scenarios() {
    static const std::vector<Scenario> all = [] {
        std::vector<Scenario> v;
        for (const auto& info : kScenarios) v.push_back(info.id);
        return v;
    }();
    return all;
}

ScenarioConfig parse_config(std::istream& in, const std::vector<std::string>& overrides,
                            const std::filesystem::path& base_dir) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    pt::ptree tree;
    try {
        std::istringstream is(text);
        pt::ini_parser::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("", e.message(), e.line());
    }
    apply_overrides(tree, overrides);

    ScenarioConfig cfg;
    Reader r(tree, index_lines(text), cfg.resolved);
    check_structure(tree, r);

    const auto name = r.raw("scenario.name");
    if (!name) r.fail("scenario.name", "missing; expected one of the names from list-scenarios");
    const auto scenario = parse_scenario(*name);
    if (!scenario) r.fail("scenario.name", "unknown scenario '" + *name + "'");
    cfg.scenario = *scenario;
    r.record("scenario.name", *name, false);

    const std::set<std::string> used = sections_used(cfg.scenario);
    for (const auto& [section, body] : tree) {
        if (!used.contains(section)) {
            warn("section [" + section + "] is not used by scenario " + std::string(scenario_name(cfg.scenario)));
        }
    }

    if (used.contains("time")) read_time(r, cfg);
    if (used.contains("qubit")) read_qubit(r, cfg);
    if (used.contains("goe")) read_goe(r, cfg);
    if (used.contains("response")) read_response(r, cfg);
    if (used.contains("qfi")) read_qfi(r, cfg);
    if (used.contains("custom")) read_custom(r, cfg, base_dir);
    cfg.output_dir = r.text("output.dir", "out");
    if (cfg.output_dir.empty()) r.fail("output.dir", "must not be empty");
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    return parse_config(in, overrides, path.parent_path());
}

}  // namespace opqsl::runner
