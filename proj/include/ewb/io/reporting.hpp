#ifndef EWB_IO_REPORTING_HPP
#define EWB_IO_REPORTING_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace ewb {

/// Minimal CSV writer: fixed header, '.' decimal, 17 significant digits,
/// written to <path>.tmp and renamed on close.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvWriter();
    void row(const std::vector<std::string>& cells);
    void close();

    static std::string num(double v);

  private:
    std::filesystem::path final_path_;
    std::filesystem::path tmp_path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
    bool closed_ = false;
};

/// 64-bit FNV-1a checksum of a file's bytes, hex encoded.
std::string file_checksum(const std::filesystem::path& path);

struct ManifestEntry {
    std::string path;  // relative to the run directory
    std::string checksum;
};

/// Run manifest: config echo, code version, seed, wall-clock bounds, and
/// the emitted artifacts with checksums. Serialized as JSON.
struct RunManifest {
    std::string command;
    std::string config_echo;
    std::string code_version;
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<ManifestEntry> artifacts;

    void add_artifact(const std::filesystem::path& run_dir,
                      const std::filesystem::path& file);
    void write(const std::filesystem::path& path) const;
};

std::string iso8601_now();

}  // namespace ewb

#endif
