#include "ewb/io/reporting.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>

#include <json.hpp>

#include "ewb/errors.hpp"

namespace ewb {

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : final_path_(path), tmp_path_(path.string() + ".tmp"), columns_(header.size()) {
    out_.open(tmp_path_);
    if (!out_) throw Error("cannot open " + tmp_path_.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
    if (!closed_) {
        out_.close();
        std::error_code ec;
        std::filesystem::remove(tmp_path_, ec);
    }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw Error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::close() {
    out_.close();
    std::filesystem::rename(tmp_path_, final_path_);
    closed_ = true;
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string file_checksum(const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw Error("checksum: cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    unsigned char buf[1 << 16];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0)
        for (std::size_t i = 0; i < got; ++i) {
            h ^= buf[i];
            h *= 0x100000001b3ULL;
        }
    std::fclose(f);
    char out[20];
    std::snprintf(out, sizeof out, "%016" PRIx64, h);
    return out;
}

void RunManifest::add_artifact(const std::filesystem::path& run_dir,
                               const std::filesystem::path& file) {
    artifacts.push_back({std::filesystem::relative(file, run_dir).string(),
                         file_checksum(file)});
}

void RunManifest::write(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config_echo;
    j["code_version"] = code_version;
    j["seed"] = seed;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["artifacts"] = nlohmann::json::array();
    for (const auto& a : artifacts)
        j["artifacts"].push_back({{"path", a.path}, {"checksum", a.checksum}});

    const std::filesystem::path tmp = path.string() + ".tmp";
    std::ofstream out(tmp);
    if (!out) throw Error("cannot open " + tmp.string());
    out << j.dump(2) << "\n";
    out.close();
    std::filesystem::rename(tmp, path);
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace ewb
