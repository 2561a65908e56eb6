#include "risflow/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace risflow {

ConfigError::ConfigError(const std::string& origin, int line, const std::string& what)
    : std::runtime_error(line > 0 ? origin + ":" + std::to_string(line) + ": " + what : origin + ": " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view v) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
    return out;
}

long long to_integer(std::string_view v) {
    long long out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
    return out;
}

std::uint64_t to_seed(std::string_view v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("expected an unsigned integer, got '" + std::string(v) + "'");
    return out;
}

int to_int(std::string_view v) {
    const auto x = to_integer(v);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) throw std::invalid_argument("integer out of range");
    return static_cast<int>(x);
}

bool to_bool(std::string_view v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

std::vector<int> to_int_list(std::string_view v) {
    std::vector<int> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        out.push_back(to_int(trim(v.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    if (out.empty()) throw std::invalid_argument("expected a comma-separated list");
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Key {
    std::function<void(ExperimentConfig&, std::string_view)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

#define RISFLOW_DOUBLE(field) \
    Key{[](ExperimentConfig& c, std::string_view v) { c.field = to_double(v); }, \
        [](const ExperimentConfig& c) { return fmt_double(c.field); }}
#define RISFLOW_INT(field) \
    Key{[](ExperimentConfig& c, std::string_view v) { c.field = to_int(v); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.field); }}
#define RISFLOW_BOOL(field) \
    Key{[](ExperimentConfig& c, std::string_view v) { c.field = to_bool(v); }, \
        [](const ExperimentConfig& c) { return std::string(c.field ? "true" : "false"); }}

// Section order and key order here define the echo layout.
const std::vector<std::pair<std::string, std::vector<std::pair<std::string, Key>>>>& schema() {
    static const std::vector<std::pair<std::string, std::vector<std::pair<std::string, Key>>>> s = {
        {"topology",
         {{"bs_count", RISFLOW_INT(counts.bs)},
          {"ris_count", RISFLOW_INT(counts.ris)},
          {"vr_count", RISFLOW_INT(counts.vr)},
          {"range_m", RISFLOW_DOUBLE(range_m)},
          {"fixed_topology", RISFLOW_BOOL(fixed_topology)}}},
        {"channel",
         {{"bandwidth_hz", RISFLOW_DOUBLE(channel.bandwidth_w)},
          {"freq_hz", RISFLOW_DOUBLE(channel.freq_f)},
          {"k_abs_per_m", RISFLOW_DOUBLE(channel.k_abs)},
          {"temp_k", RISFLOW_DOUBLE(channel.temp_t0)},
          {"p_bs_w", RISFLOW_DOUBLE(channel.p_bs)},
          {"p_ris_w", RISFLOW_DOUBLE(channel.p_ris)},
          {"n_elements", RISFLOW_INT(channel.n_elements)},
          {"boltzmann_j_per_k", RISFLOW_DOUBLE(channel.boltzmann_kb)},
          {"light_speed_m_per_s", RISFLOW_DOUBLE(channel.light_c)},
          {"optimal_phase", RISFLOW_BOOL(channel.optimal_phase)}}},
        {"traffic",
         {{"chunk_gbit", RISFLOW_DOUBLE(chunk_gbit)},
          {"queue_l_gbit", RISFLOW_DOUBLE(queue_l_gbit)},
          {"tau_s", RISFLOW_DOUBLE(tau_s)},
          {"k_pddt", RISFLOW_INT(k_pddt)},
          {"k_sddt", RISFLOW_INT(k_sddt)}}},
        {"static",
         {{"d_sweep",
           Key{[](ExperimentConfig& c, std::string_view v) { c.d_sweep = to_int_list(v); },
               [](const ExperimentConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.d_sweep.size(); ++i) s += (i ? "," : "") + std::to_string(c.d_sweep[i]);
                   return s;
               }}},
          {"replications", RISFLOW_INT(replications)},
          {"ci_level", RISFLOW_DOUBLE(ci_level)},
          {"nested_demands", RISFLOW_BOOL(nested_demands)}}},
        {"dynamic",
         {{"epoch_minutes", RISFLOW_DOUBLE(dynamic.epoch_minutes)},
          {"horizon_hours", RISFLOW_DOUBLE(dynamic.horizon_hours)},
          {"d_fixed", RISFLOW_INT(dynamic.d_fixed)}}},
        {"run",
         {{"seed",
           Key{[](ExperimentConfig& c, std::string_view v) { c.seed = to_seed(v); },
               [](const ExperimentConfig& c) { return std::to_string(c.seed); }}},
          {"threads", RISFLOW_INT(threads)}}},
    };
    return s;
}

#undef RISFLOW_DOUBLE
#undef RISFLOW_INT
#undef RISFLOW_BOOL

const Key* find_key(const std::string& section, std::string_view name) {
    for (const auto& [sec, keys] : schema()) {
        if (sec != section) continue;
        for (const auto& [k, key] : keys) {
            if (k == name) return &key;
        }
    }
    return nullptr;
}

bool known_section(std::string_view name) {
    for (const auto& [sec, keys] : schema()) {
        if (sec == name) return true;
    }
    return false;
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text, const std::string& origin) {
    ExperimentConfig cfg;
    std::map<std::string, int> seen;  // "section.key" -> first line
    std::string section;
    int lineno = 0;
    while (!text.empty()) {
        ++lineno;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(origin, lineno, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section)) throw ConfigError(origin, lineno, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(origin, lineno, "expected 'key = value'");
        const std::string name(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(origin, lineno, "key '" + name + "' outside of any section");
        const Key* key = find_key(section, name);
        if (!key) throw ConfigError(origin, lineno, "unknown key '" + name + "' in [" + section + "]");
        const auto [it, fresh] = seen.emplace(section + "." + name, lineno);
        if (!fresh) throw ConfigError(origin, lineno, "duplicate key '" + name + "' (first set on line " + std::to_string(it->second) + ")");
        if (value.empty()) throw ConfigError(origin, lineno, "empty value for '" + name + "'");
        try {
            key->set(cfg, value);
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(origin, lineno, name + ": " + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin, 0, e.what());
    }
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

std::string format_config(const ExperimentConfig& config) {
    std::string out;
    for (const auto& [sec, keys] : schema()) {
        if (!out.empty()) out += "\n";
        out += "[" + sec + "]\n";
        for (const auto& [name, key] : keys) out += name + " = " + key.get(config) + "\n";
    }
    return out;
}

}  // namespace risflow
