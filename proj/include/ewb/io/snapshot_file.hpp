#ifndef EWB_IO_SNAPSHOT_FILE_HPP
#define EWB_IO_SNAPSHOT_FILE_HPP

#include <filesystem>
#include <string>

#include "ewb/evolution.hpp"

namespace ewb {

/// Binary layout (little endian throughout):
///   magic "EULR" | format version u32 | record tag u32 |
///   grid n u32 | domain length f64 | gamma f64 | snapshot count u32 |
///   per snapshot: time f64, then rho, v1, v2, v3 as n^3 f64 x-fastest.
/// Record tag 1 marks fluid snapshots; tag 2 marks foliation records.
constexpr std::uint32_t kSnapshotMagicLen = 4;
constexpr char kSnapshotMagic[5] = "EULR";
constexpr std::uint32_t kSnapshotVersion = 1;
constexpr std::uint32_t kTagSnapshots = 1;
constexpr std::uint32_t kTagFoliation = 2;

void write_snapshot_file(const std::filesystem::path& path, const SnapshotStack& stack);

SnapshotStack read_snapshot_file(const std::filesystem::path& path,
                                 const EquationOfState* eos_override = nullptr);

/// Incremental writer used by the simulate CLI: writes to <path>.tmp and
/// renames on finalize, so failed runs leave no partial file behind.
class SnapshotWriter {
  public:
    SnapshotWriter(const std::filesystem::path& path, int grid_n, double length,
                   double gamma);
    ~SnapshotWriter();
    void append(const FluidState& state);
    void finalize();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ewb

#endif
