#pragma once

#include <optional>
#include <string>
#include <vector>

namespace prepro {

// Versioned basis cache under .prepro-cache/ (or PREPRO_CACHE_DIR). A hit
// requires schema and key match; files are written to a temp name and
// renamed into place, so concurrent writers cannot tear an entry.
struct CacheEntry {
  int schema = 1;
  std::string key;    // SHA-256 of the canonical graph JSON
  std::string mode;   // "graph" | "double"
  std::string field;  // "Q" | "Fp:<p>"
  int max_degree = 0;
  std::vector<int> degree_dims;
  std::vector<std::vector<std::string>> bases;  // per degree, path literals
};

std::string default_cache_dir();

std::optional<CacheEntry> cache_load(const std::string& dir, const std::string& key,
                                     const std::string& mode, const std::string& field,
                                     int max_degree);

void cache_store(const std::string& dir, const CacheEntry& entry);

}  // namespace prepro
