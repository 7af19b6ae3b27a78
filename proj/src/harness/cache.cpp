#include "larmor/harness/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "larmor/harness/output.hpp"

namespace larmor::harness {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string ResultCache::path_for(const std::string& hash) const { return (fs::path(dir_) / (hash + ".json")).string(); }

std::optional<SweepResult> ResultCache::load(const std::string& hash) const {
  std::ifstream in(path_for(hash));
  if (!in) return std::nullopt;
  try {
    SweepResult r = result_from_json(json::parse(in));
    if (r.config_hash != hash) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void ResultCache::store(const SweepResult& r) const {
  fs::create_directories(dir_);
  write_file_atomic(path_for(r.config_hash), result_to_json(r).dump(1) + "\n");
}

}  // namespace larmor::harness
