#ifndef EWB_IO_RUN_CONFIG_HPP
#define EWB_IO_RUN_CONFIG_HPP

#include <filesystem>
#include <map>
#include <string>

#include "ewb/evolution.hpp"

namespace ewb {

/// Flat key = value configuration with dotted keys; '#' starts a comment.
class RunConfig {
  public:
    static RunConfig parse_file(const std::filesystem::path& path);
    static RunConfig parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int_or(const std::string& key, int fallback) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

    /// Build the simulation configuration from the documented schema:
    /// grid.n, grid.length, grid.dealias, eos.gamma, time.t_end,
    /// time.dt | time.cfl, time.snap_every, init.kind, init.*, guards.c0, seed.
    SimConfig to_sim_config() const;

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace ewb

#endif
