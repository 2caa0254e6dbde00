#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

namespace commnet::pipeline {

struct CacheEntry {
  std::string key;  // canonical request
  std::chrono::sys_seconds fetched_at;
  std::string payload;  // raw response bytes
};

std::string sha256_hex(const std::string& data);

// Content-addressed response store: one immutable file per canonical request
// at <root>/<h[0:2]>/<h>.entry, h = sha256(key). The file is a one-line JSON
// header {"key", "fetched_at"} followed by the payload bytes.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::optional<CacheEntry> get(const std::string& key) const;
  // No-op when an entry already exists. Writes via rename, so readers never
  // see partial entries.
  void put(const std::string& key, const std::string& payload);
  std::filesystem::path path_for(const std::string& key) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace commnet::pipeline
