#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gendertime {

struct InputDigest {
  std::string role;  // "table", "corpus", ...
  std::string source;
  std::string sha256;
};

// Everything needed to re-derive an output: serialized next to every CLI
// result. Contains no timestamps or host data, so identical runs produce
// identical manifests.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> flags;
  std::vector<InputDigest> inputs;
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  int table_snapshot_version = 0;

  std::string to_json() const;  // single line
};

std::string sha256_hex(std::string_view bytes);

// Digest of a regular file, or of a directory's regular files (name and
// content, in name order).
std::string sha256_path(const std::filesystem::path& path);

std::string_view tool_version();

}  // namespace gendertime
