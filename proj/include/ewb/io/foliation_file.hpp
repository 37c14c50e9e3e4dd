#ifndef EWB_IO_FOLIATION_FILE_HPP
#define EWB_IO_FOLIATION_FILE_HPP

#include <filesystem>

#include "ewb/geometry/foliation.hpp"

namespace ewb {

/// Foliation records share the snapshot container (magic "EULR", version)
/// with record tag 2; several graphs may live in one file.
void write_foliation_file(const std::filesystem::path& path,
                          const std::vector<FoliationGraph>& graphs);

std::vector<FoliationGraph> read_foliation_file(const std::filesystem::path& path);

}  // namespace ewb

#endif
