#include "ewb/io/run_config.hpp"

#include <fstream>
#include <sstream>

namespace ewb {

namespace {
std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace

RunConfig RunConfig::parse_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        cfg.kv_[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

const std::string& RunConfig::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    try {
        std::size_t pos = 0;
        const double v = std::stod(get(key), &pos);
        if (pos != get(key).size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("config key " + key + ": not a number");
    }
}

int RunConfig::get_int(const std::string& key) const {
    const double v = get_double(key);
    const int i = int(std::llround(v));
    if (std::abs(v - i) > 1e-9) throw ConfigError("config key " + key + ": not an integer");
    return i;
}

double RunConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}
int RunConfig::get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}
std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

SimConfig RunConfig::to_sim_config() const {
    SimConfig sim;
    sim.grid_n = get_int("grid.n");
    sim.grid_length = get_double_or("grid.length", 2.0 * M_PI);
    sim.dealias_fraction = get_double_or("grid.dealias", 2.0 / 3.0);
    sim.eos = EquationOfState(get_double_or("eos.gamma", 5.0 / 3.0),
                              get_double_or("eos.rho_bar", 1.0));
    sim.t_end = get_double("time.t_end");
    if (has("time.dt")) sim.dt = get_double("time.dt");
    if (has("time.cfl")) sim.cfl = get_double("time.cfl");
    sim.snap_every = get_int_or("time.snap_every", 1);
    sim.guards.c0 = get_double_or("guards.c0", 1e-3);
    sim.seed = std::uint64_t(get_int_or("seed", 1));

    sim.initial_data.kind = get("init.kind");
    for (const auto& [k, v] : kv_) {
        if (k.rfind("init.", 0) == 0 && k != "init.kind")
            sim.initial_data.params[k.substr(5)] = get_double(k);
    }
    if (!sim.initial_data.params.count("seed"))
        sim.initial_data.params["seed"] = double(sim.seed);
    sim.validate();
    return sim;
}

}  // namespace ewb
