#pragma once

#include <filesystem>
#include <string>

#include "zzsim/hilbert.hpp"

namespace zzsim {

/// Parameter file read from disk, with its content hash for CSV metadata.
struct DeviceFile {
  DeviceParams params;
  std::filesystem::path path;
  std::string hash;  // FNV-1a 64, hex
};

/// Parses a JSON device description (GHz and microseconds) and validates it.
/// Unknown and missing keys are errors naming the key.
DeviceParams parse_device(const std::string& json_text);

/// Accepts a file path or a bundled name such as "device_a". Names are looked
/// up in $ZZSIM_DEVICE_DIR, then in the bundled data directory.
DeviceFile load_device(const std::string& path_or_name);

std::filesystem::path resolve_device_path(const std::string& path_or_name);

/// FNV-1a 64 of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace zzsim
