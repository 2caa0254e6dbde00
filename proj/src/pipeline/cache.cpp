#include "commnet/pipeline/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "commnet/errors.hpp"
#include "commnet/wikitext.hpp"

namespace commnet::pipeline {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw DataError("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::filesystem::path ResponseCache::path_for(const std::string& key) const {
  const std::string h = sha256_hex(key);
  return root_ / h.substr(0, 2) / (h + ".entry");
}

std::optional<CacheEntry> ResponseCache::get(const std::string& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  std::ostringstream payload;
  payload << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(header);
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    auto fetched = wikitext::parse_iso_timestamp(j.at("fetched_at").get<std::string>());
    if (!fetched) return std::nullopt;
    return CacheEntry{key, *fetched, payload.str()};
  } catch (const nlohmann::json::exception&) {
    // Unreadable entries count as misses and get refetched.
    return std::nullopt;
  }
}

void ResponseCache::put(const std::string& key, const std::string& payload) {
  const auto target = path_for(key);
  std::error_code ec;
  if (std::filesystem::exists(target, ec)) return;
  std::filesystem::create_directories(target.parent_path(), ec);
  if (ec) throw DataError("cannot create cache directory '" + target.parent_path().string() + "': " + ec.message());

  static std::atomic<unsigned> counter{0};
  const auto tmp = target.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    nlohmann::json header;
    header["key"] = key;
    header["fetched_at"] =
        wikitext::format_timestamp(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
    out << header.dump() << '\n' << payload;
    if (!out) throw DataError("cannot write cache entry '" + tmp + "'");
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DataError("cannot install cache entry '" + target.string() + "'");
  }
}

}  // namespace commnet::pipeline
