#pragma once

#include <optional>
#include <string>

#include "larmor/harness/sweep.hpp"

namespace larmor::harness {

/// Hex SHA-256 of a string.
std::string sha256_hex(const std::string& data);

/// Content-addressed result cache: one JSON file per config hash.
class ResultCache {
 public:
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}
  std::string path_for(const std::string& hash) const;
  std::optional<SweepResult> load(const std::string& hash) const;
  void store(const SweepResult& r) const;

 private:
  std::string dir_;
};

}  // namespace larmor::harness
