#include "linkopt/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace linkopt {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        size_t pos;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError(key + ": expected on/off, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void set_key(RunConfig& c, const std::string& section, const std::string& key,
             const std::string& value) {
    std::string path = section + "." + key;
    if (section == "link") {
        if (key == "g1_db") c.link.g1_db = to_double(path, value);
        else if (key == "kappa") c.link.kappa = to_double(path, value);
        else if (key == "distance_m") c.link.distance_m = to_double(path, value);
        else if (key == "link_margin_db") c.link.link_margin_db = to_double(path, value);
        else if (key == "noise_psd_dbm_hz") c.link.noise_psd_dbm_hz = to_double(path, value);
        else if (key == "bandwidth_hz") c.link.bandwidth_hz = to_double(path, value);
        else if (key == "max_tx_power_w") c.link.max_tx_power_w = to_double(path, value);
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "energy") {
        if (key == "eta") c.energy.pa_drain_efficiency = to_double(path, value);
        else if (key == "circuit_power_w") {
            if (value == "auto") c.energy.circuit_power = -1.0;
            else c.energy.circuit_power = to_double(path, value);
        } else if (key == "symbol_rate_hz") c.energy.symbol_rate = to_double(path, value);
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "reliability") {
        if (key == "epsilon") c.reliability.epsilon = to_double(path, value);
        else if (key == "max_retx") c.reliability.max_retx = static_cast<int>(to_long(path, value));
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "shape") {
        if (key == "n_payload") c.shape.n_payload = static_cast<int>(to_long(path, value));
        else if (key == "n_header") c.shape.n_header = static_cast<int>(to_long(path, value));
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "schemes") {
        if (key == "list") c.schemes = split_list(value);
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "sweep") {
        if (key == "variable") c.sweep.variable = value;
        else if (key == "lo") c.sweep.lo = to_double(path, value);
        else if (key == "hi") c.sweep.hi = to_double(path, value);
        else if (key == "points") c.sweep.points = static_cast<int>(to_long(path, value));
        else if (key == "spacing") c.sweep.spacing = value;
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "refit") {
        if (key == "k1") c.refit.k1 = to_double(path, value);
        else if (key == "k2") c.refit.k2 = to_double(path, value);
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "per_error") {
        if (key == "n_bits") {
            c.per_error_n_bits.clear();
            for (const auto& s : split_list(value))
                c.per_error_n_bits.push_back(static_cast<int>(to_long(path, s)));
        } else throw ConfigError("unknown config key: " + path);
    } else if (section == "oracle") {
        if (key == "quadrature") c.oracle_quadrature = to_bool(path, value);
        else if (key == "monte_carlo") c.oracle_monte_carlo = to_bool(path, value);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_long(path, value));
        else if (key == "n_packets") c.n_packets = to_long(path, value);
        else throw ConfigError("unknown config key: " + path);
    } else if (section == "output") {
        if (key == "path") c.output_path = value;
        else if (key == "format") c.format = value;
        else throw ConfigError("unknown config key: " + path);
    } else {
        throw ConfigError("unknown config section: " + section);
    }
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig c;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": key outside a section");
        set_key(c, section, key, value);
    }
    return c;
}

void apply_set(RunConfig& config, const std::string& assignment) {
    size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    std::string path = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    size_t dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    set_key(config, path.substr(0, dot), path.substr(dot + 1), value);
}

void validate_config(const RunConfig& c) {
    if (!(c.reliability.epsilon > 0.0 && c.reliability.epsilon < 1.0))
        throw ConfigError("reliability.epsilon: must lie in (0,1)");
    if (c.reliability.max_retx < 0)
        throw ConfigError("reliability.max_retx: must be nonnegative");
    if (c.shape.n_payload < 1) throw ConfigError("shape.n_payload: must be positive");
    if (c.shape.n_header < 0) throw ConfigError("shape.n_header: must be nonnegative");
    if (!(c.sweep.lo < c.sweep.hi)) throw ConfigError("sweep.lo: must be below sweep.hi");
    if (c.sweep.points < 2) throw ConfigError("sweep.points: must be >= 2");
    if (c.sweep.variable != "distance" && c.sweep.variable != "snr" &&
        c.sweep.variable != "payload")
        throw ConfigError("sweep.variable: must be distance, snr, or payload");
    if (c.sweep.spacing != "linear" && c.sweep.spacing != "log")
        throw ConfigError("sweep.spacing: must be linear or log");
    if (c.format != "csv" && c.format != "json")
        throw ConfigError("output.format: must be csv or json");
    if (!(c.energy.pa_drain_efficiency > 0.0 && c.energy.pa_drain_efficiency <= 1.0))
        throw ConfigError("energy.eta: must lie in (0,1]");
    for (const auto& name : c.schemes) {
        try {
            scheme_by_name(name);
        } catch (const std::invalid_argument&) {
            throw ConfigError("schemes.list: unknown scheme '" + name + "'");
        }
    }
}

std::vector<ModulationScheme> selected_schemes(const RunConfig& config) {
    if (config.schemes.empty()) return catalog();
    std::vector<ModulationScheme> out;
    for (const auto& name : config.schemes) out.push_back(scheme_by_name(name));
    return out;
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(12);
        os << v;
        return os.str();
    };
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("link.g1_db", num(c.link.g1_db));
    kv.emplace_back("link.kappa", num(c.link.kappa));
    kv.emplace_back("link.distance_m", num(c.link.distance_m));
    kv.emplace_back("link.link_margin_db", num(c.link.link_margin_db));
    kv.emplace_back("link.noise_psd_dbm_hz", num(c.link.noise_psd_dbm_hz));
    kv.emplace_back("link.bandwidth_hz", num(c.link.bandwidth_hz));
    kv.emplace_back("link.max_tx_power_w", num(c.link.max_tx_power_w));
    kv.emplace_back("energy.eta", num(c.energy.pa_drain_efficiency));
    kv.emplace_back("energy.circuit_power_w",
                    c.energy.circuit_power < 0 ? "auto" : num(c.energy.circuit_power));
    kv.emplace_back("reliability.epsilon", num(c.reliability.epsilon));
    kv.emplace_back("reliability.max_retx", std::to_string(c.reliability.max_retx));
    kv.emplace_back("shape.n_payload", std::to_string(c.shape.n_payload));
    kv.emplace_back("shape.n_header", std::to_string(c.shape.n_header));
    std::string schemes;
    for (const auto& s : selected_schemes(c)) {
        if (!schemes.empty()) schemes += ",";
        schemes += s.name;
    }
    kv.emplace_back("schemes.list", schemes);
    kv.emplace_back("sweep.variable", c.sweep.variable);
    kv.emplace_back("sweep.lo", num(c.sweep.lo));
    kv.emplace_back("sweep.hi", num(c.sweep.hi));
    kv.emplace_back("sweep.points", std::to_string(c.sweep.points));
    kv.emplace_back("sweep.spacing", c.sweep.spacing);
    kv.emplace_back("refit.k1", num(c.refit.k1));
    kv.emplace_back("refit.k2", num(c.refit.k2));
    kv.emplace_back("oracle.quadrature", c.oracle_quadrature ? "on" : "off");
    kv.emplace_back("oracle.monte_carlo", c.oracle_monte_carlo ? "on" : "off");
    kv.emplace_back("oracle.seed", std::to_string(c.seed));
    kv.emplace_back("oracle.n_packets", std::to_string(c.n_packets));
    return kv;
}

} // namespace linkopt
