#include "gendertime/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "gendertime/errors.hpp"

#ifndef GENDERTIME_VERSION
#define GENDERTIME_VERSION "dev"
#endif

namespace gendertime {
namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error("SHA-256 unavailable");
    }
  }

  void update(std::string_view bytes) {
    EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size());
  }

  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &len);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(digits[md[i] >> 4]);
      out.push_back(digits[md[i] & 0xF]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

void hash_file(Sha256& h, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    h.update(std::string_view(buf, static_cast<std::size_t>(in.gcount())));
  }
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes);
  return h.hex();
}

std::string sha256_path(const std::filesystem::path& path) {
  Sha256 h;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(path)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const std::string name = f.filename().string();
      h.update(name);
      h.update(std::string_view("\0", 1));
      hash_file(h, f);
    }
  } else {
    hash_file(h, path);
  }
  return h.hex();
}

std::string_view tool_version() { return GENDERTIME_VERSION; }

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["tool_version"] = tool_version;
  j["table_snapshot_version"] = table_snapshot_version;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nullptr;
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [k, v] : flags) f[k] = v;
  j["flags"] = f;
  auto& in = j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& d : inputs) {
    in.push_back({{"role", d.role}, {"source", d.source}, {"sha256", d.sha256}});
  }
  return j.dump();
}

}  // namespace gendertime
