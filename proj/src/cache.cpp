#include "prepro/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "prepro/errors.hpp"

namespace prepro {

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::string entry_path(const std::string& dir, const CacheEntry& e) {
  return dir + "/" + e.key.substr(0, 16) + "-" + sanitize(e.mode) + "-" + sanitize(e.field) + "-N" +
         std::to_string(e.max_degree) + ".json";
}

}  // namespace

std::string default_cache_dir() {
  if (const char* env = std::getenv("PREPRO_CACHE_DIR")) return env;
  return ".prepro-cache";
}

std::optional<CacheEntry> cache_load(const std::string& dir, const std::string& key,
                                     const std::string& mode, const std::string& field,
                                     int max_degree) {
  CacheEntry probe;
  probe.key = key;
  probe.mode = mode;
  probe.field = field;
  probe.max_degree = max_degree;
  std::ifstream in(entry_path(dir, probe));
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (...) {
    return std::nullopt;  // unreadable entries are treated as misses
  }
  if (!j.is_object() || j.value("schema", 0) != 1 || j.value("key", "") != key) return std::nullopt;
  if (j.value("mode", "") != mode || j.value("field", "") != field) return std::nullopt;
  CacheEntry e = probe;
  e.schema = 1;
  e.degree_dims = j.at("degree_dims").get<std::vector<int>>();
  e.bases = j.at("bases").get<std::vector<std::vector<std::string>>>();
  if (static_cast<int>(e.degree_dims.size()) != max_degree + 1) return std::nullopt;
  return e;
}

void cache_store(const std::string& dir, const CacheEntry& entry) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  nlohmann::ordered_json j;
  j["schema"] = entry.schema;
  j["key"] = entry.key;
  j["mode"] = entry.mode;
  j["field"] = entry.field;
  j["degree_dims"] = entry.degree_dims;
  j["bases"] = entry.bases;
  std::string final_path = entry_path(dir, entry);
  std::string tmp_path = final_path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp_path);
    if (!out) return;  // caching is best-effort
    out << j.dump();
  }
  std::rename(tmp_path.c_str(), final_path.c_str());
}

}  // namespace prepro
