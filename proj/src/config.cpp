#include "polaron/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "polaron/errors.hpp"

extern char** environ;

namespace polaron {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + v + "' for key " + key);
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value '" + v + "' for key " + key);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: bad boolean value '" + v + "' for key " + key);
}

std::string format_value(double d) {
    std::ostringstream os;
    os.precision(17);
    os << d;
    return os.str();
}

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "model.dimension") cfg.model.d = static_cast<int>(parse_int(key, value));
    else if (key == "model.dispersion") {
        if (value == "constant") cfg.model.dispersion = Dispersion::Constant;
        else if (value == "massless") cfg.model.dispersion = Dispersion::Massless;
        else if (value == "massive") cfg.model.dispersion = Dispersion::Massive;
        else throw ConfigError("config: unknown dispersion '" + value + "'");
    } else if (key == "model.mass") cfg.model.mass = parse_double(key, value);
    else if (key == "model.coupling_g") cfg.model.g = parse_double(key, value);
    else if (key == "model.coupling_beta") cfg.model.beta = parse_double(key, value);
    else if (key == "model.cutoff") {
        if (value == "none") cfg.model.cutoff = Cutoff::None;
        else if (value == "gaussian") cfg.model.cutoff = Cutoff::Gaussian;
        else throw ConfigError("config: unknown cutoff '" + value + "'");
    } else if (key == "model.cutoff_lambda") cfg.model.cutoff_lambda = parse_double(key, value);
    else if (key == "compute.seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "compute.nmax") cfg.nmax = static_cast<int>(parse_int(key, value));
    else if (key == "compute.nmax_cap") cfg.nmax_cap = static_cast<int>(parse_int(key, value));
    else if (key == "compute.mc_count") cfg.mc_count = static_cast<int>(parse_int(key, value));
    else if (key == "compute.quad_order_coupling")
        cfg.quad_order_coupling = static_cast<int>(parse_int(key, value));
    else if (key == "compute.quad_order_dispersion")
        cfg.quad_order_dispersion = static_cast<int>(parse_int(key, value));
    else if (key == "compute.pairing_cap") cfg.pairing_cap = static_cast<int>(parse_int(key, value));
    else if (key == "compute.threads") cfg.threads = static_cast<int>(parse_int(key, value));
    else if (key == "compute.grid_count") cfg.grid_count = static_cast<int>(parse_int(key, value));
    else if (key == "compute.trunc_fraction") cfg.trunc_fraction = parse_double(key, value);
    else if (key == "compute.deterministic_low_dim")
        cfg.deterministic_low_dim = parse_bool(key, value);
    else if (key == "compute.t_min") cfg.t_min = parse_double(key, value);
    else if (key == "compute.t_max") cfg.t_max = parse_double(key, value);
    else if (key == "compute.t_count") cfg.t_count = static_cast<int>(parse_int(key, value));
    else if (key == "output.format") {
        if (value != "csv" && value != "json")
            throw ConfigError("config: output.format must be csv or json");
        cfg.format = value;
    } else if (key == "output.path") cfg.path = value;
    else throw ConfigError("config: unknown key '" + key + "'");
}

namespace {

void validate(const RunConfig& cfg) {
    if (cfg.nmax < 1 || cfg.nmax_cap < 1 || cfg.mc_count < 1 || cfg.pairing_cap < 1 ||
        cfg.threads < 1 || cfg.grid_count < 1 || cfg.quad_order_coupling < 1 ||
        cfg.quad_order_dispersion < 1 || cfg.t_count < 2)
        throw ConfigError("config: all caps/counts must be positive");
    cfg.model.validate();
}

void apply_env(RunConfig& cfg) {
    for (char** e = environ; e && *e; ++e) {
        std::string entry(*e);
        if (entry.rfind("POLARON_", 0) != 0) continue;
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string name = entry.substr(8, eq - 8);
        std::string value = entry.substr(eq + 1);
        // POLARON_MODEL_COUPLING_G -> model.coupling_g (first '_' is the
        // section separator)
        std::size_t us = name.find('_');
        if (us == std::string::npos)
            throw ConfigError("config: malformed env override POLARON_" + name);
        std::string key = name.substr(0, us) + "." + name.substr(us + 1);
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        apply_key(cfg, key, value);
    }
}

}  // namespace

RunConfig load_config(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) throw ConfigError("config: cannot open '" + file_path + "'");
    RunConfig cfg;
    bool seed_seen = false;
    bool model_seen = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key == "compute.seed") seed_seen = true;
        if (key.rfind("model.", 0) == 0) model_seen = true;
        apply_key(cfg, key, value);
    }
    if (!model_seen) throw ConfigError("config: missing [model] section keys");
    if (!seed_seen)
        throw ConfigError("config: compute.seed is required (no wall-clock seeding)");
    apply_env(cfg);
    validate(cfg);
    return cfg;
}

RunConfig default_config_with_env() {
    RunConfig cfg;
    apply_env(cfg);
    validate(cfg);
    return cfg;
}

SeriesOptions RunConfig::series_options() const {
    SeriesOptions opt;
    opt.nmax = nmax;
    opt.nmax_cap = nmax_cap;
    opt.mc_count = mc_count;
    opt.seed = seed;
    opt.quad.coupling = quad_order_coupling;
    opt.quad.dispersion = quad_order_dispersion;
    opt.deterministic_low_dim = deterministic_low_dim;
    opt.pairing_cap = pairing_cap;
    opt.threads = threads;
    opt.trunc_fraction = trunc_fraction;
    return opt;
}

std::map<std::string, std::string> RunConfig::canonical() const {
    std::map<std::string, std::string> kv;
    kv["model.dimension"] = std::to_string(model.d);
    kv["model.dispersion"] = model.dispersion == Dispersion::Constant ? "constant"
                             : model.dispersion == Dispersion::Massless ? "massless"
                                                                        : "massive";
    kv["model.mass"] = format_value(model.mass);
    kv["model.coupling_g"] = format_value(model.g);
    kv["model.coupling_beta"] = format_value(model.beta);
    kv["model.cutoff"] = model.cutoff == Cutoff::None ? "none" : "gaussian";
    kv["model.cutoff_lambda"] = format_value(model.cutoff_lambda);
    kv["compute.seed"] = std::to_string(seed);
    kv["compute.nmax"] = std::to_string(nmax);
    kv["compute.nmax_cap"] = std::to_string(nmax_cap);
    kv["compute.mc_count"] = std::to_string(mc_count);
    kv["compute.quad_order_coupling"] = std::to_string(quad_order_coupling);
    kv["compute.quad_order_dispersion"] = std::to_string(quad_order_dispersion);
    kv["compute.pairing_cap"] = std::to_string(pairing_cap);
    kv["compute.threads"] = std::to_string(threads);
    kv["compute.grid_count"] = std::to_string(grid_count);
    kv["compute.trunc_fraction"] = format_value(trunc_fraction);
    kv["compute.deterministic_low_dim"] = deterministic_low_dim ? "true" : "false";
    kv["compute.t_min"] = format_value(t_min);
    kv["compute.t_max"] = format_value(t_max);
    kv["compute.t_count"] = std::to_string(t_count);
    kv["output.format"] = format;
    kv["output.path"] = path;
    return kv;
}

std::string RunConfig::config_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : canonical()) {
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) buf[i] = hex[(h >> (60 - 4 * i)) & 0xF];
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace polaron
