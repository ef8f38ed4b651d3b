#include "prepro/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "prepro/errors.hpp"
#include "prepro/sha256.hpp"

namespace prepro {

namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<std::string, std::string> sorted_pair(const std::pair<std::string, std::string>& e) {
  return e.first <= e.second ? e : std::make_pair(e.second, e.first);
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges,
             std::optional<std::vector<Arrow>> arrows)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_) {
    if (!seen.insert(v).second) throw InputError("duplicate vertex id '" + v + "'");
  }
  for (const auto& [a, b] : edges_) {
    if (!seen.count(a) || !seen.count(b))
      throw InputError("edge endpoint not a declared vertex: {" + a + "," + b + "}");
  }
  if (arrows_) {
    // The orientation must orient exactly the listed edges (as multisets).
    std::multiset<std::pair<std::string, std::string>> want;
    for (const auto& e : edges_) want.insert(sorted_pair(e));
    std::set<std::string> ids;
    for (const auto& a : *arrows_) {
      if (!ids.insert(a.id).second) throw InputError("duplicate arrow id '" + a.id + "'");
      auto p = sorted_pair(std::make_pair(a.tail, a.head));
      auto it = want.find(p);
      if (it == want.end())
        throw InputError("arrow '" + a.id + "' does not orient a listed edge");
      want.erase(it);
    }
    if (!want.empty()) throw InputError("arrows do not orient every listed edge");
  }
}

int Graph::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == id) return static_cast<int>(i);
  throw InputError("unknown vertex '" + id + "'");
}

bool Graph::connected() const {
  if (vertices_.empty()) return true;
  std::vector<std::vector<int>> adj(vertices_.size());
  for (const auto& [a, b] : edges_) {
    int i = vertex_index(a), j = vertex_index(b);
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> vis(vertices_.size(), false);
  std::vector<int> stack = {0};
  vis[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = true;
        stack.push_back(w);
      }
  }
  return std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
}

Mat<Rat> Graph::adjacency(Mode mode) const {
  std::size_t n = vertices_.size();
  Mat<Rat> a(n, n);
  for (const auto& [u, v] : edges_) {
    int i = vertex_index(u), j = vertex_index(v);
    if (i == j) {
      a(i, i) += Rat(mode == Mode::Graph ? 1 : 2);
    } else {
      a(i, j) += Rat(1);
      a(j, i) += Rat(1);
    }
  }
  return a;
}

Graph Graph::without_vertex(int v) const {
  const std::string& id = vertices_.at(v);
  std::vector<std::string> vs;
  for (const auto& w : vertices_)
    if (w != id) vs.push_back(w);
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& e : edges_)
    if (e.first != id && e.second != id) es.push_back(e);
  return Graph(vs, es);
}

std::string Graph::canonical_json() const {
  std::vector<std::string> vs = vertices_;
  std::sort(vs.begin(), vs.end());
  std::vector<std::pair<std::string, std::string>> es;
  es.reserve(edges_.size());
  for (const auto& e : edges_) es.push_back(sorted_pair(e));
  std::sort(es.begin(), es.end());

  ordered_json j;
  j["vertices"] = vs;
  auto& je = j["edges"] = ordered_json::array();
  for (const auto& [a, b] : es) je.push_back({a, b});
  if (arrows_) {
    std::vector<Arrow> as = *arrows_;
    std::sort(as.begin(), as.end(), [](const Arrow& x, const Arrow& y) { return x.id < y.id; });
    auto& ja = j["arrows"] = ordered_json::array();
    for (const auto& a : as) ja.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  }
  return j.dump();
}

std::string Graph::cache_key() const { return sha256_hex(canonical_json()); }

std::string Graph::to_json() const {
  ordered_json j;
  j["vertices"] = vertices_;
  auto& je = j["edges"] = ordered_json::array();
  for (const auto& [a, b] : edges_) je.push_back({a, b});
  if (arrows_) {
    auto& ja = j["arrows"] = ordered_json::array();
    for (const auto& a : *arrows_) ja.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  }
  return j.dump(2);
}

Graph Graph::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("graph JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw InputError("graph JSON must be an object with 'vertices' and 'edges'");
  std::vector<std::string> vs;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw InputError("vertex ids must be strings");
    vs.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair of vertex ids");
    es.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  std::optional<std::vector<Arrow>> as;
  if (j.contains("arrows")) {
    as.emplace();
    for (const auto& a : j.at("arrows")) {
      as->push_back(Arrow{a.at("id").get<std::string>(), a.at("tail").get<std::string>(),
                          a.at("head").get<std::string>()});
    }
  }
  return Graph(std::move(vs), std::move(es), std::move(as));
}

Graph Graph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

Graph make_chain(int n) {
  if (n < 1) throw InputError("chain needs n >= 1");
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) es.push_back({"v" + std::to_string(i), "v" + std::to_string(i + 1)});
  return Graph(vs, es);
}

Graph make_cycle(int n) {
  if (n < 3) throw InputError("cycle needs n >= 3");
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i <= n; ++i)
    es.push_back({"v" + std::to_string(i), "v" + std::to_string(i % n + 1)});
  return Graph(vs, es);
}

Graph make_tadpole(int n) {
  if (n < 1) throw InputError("tadpole needs n >= 1");
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) es.push_back({"v" + std::to_string(i), "v" + std::to_string(i + 1)});
  es.push_back({"v" + std::to_string(n), "v" + std::to_string(n)});
  return Graph(vs, es);
}

Graph make_double_edge() {
  return Graph({"v1", "v2"}, {{"v1", "v2"}, {"v1", "v2"}});
}

StarGraph star(const std::vector<int>& ray_lengths) {
  if (ray_lengths.empty()) throw InputError("star needs at least one ray");
  for (int p : ray_lengths)
    if (p < 1) throw InputError("ray lengths must be >= 1");
  std::vector<std::string> vs = {"c"};
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t r = 0; r < ray_lengths.size(); ++r) {
    std::string prev = "c";
    for (int k = 1; k < ray_lengths[r]; ++k) {
      std::string v = "r" + std::to_string(r + 1) + "_" + std::to_string(k);
      vs.push_back(v);
      es.push_back({prev, v});
      prev = v;
    }
  }
  return StarGraph{Graph(vs, es), "c"};
}

FoldResult fold_a2n(int n) {
  if (n < 1) throw InputError("fold_a2n needs n >= 1");
  FoldResult res;
  res.a2n = make_chain(2 * n);
  res.tadpole = make_tadpole(n);
  for (int k = 1; k <= n; ++k) {
    res.map.push_back({"v" + std::to_string(k), "v" + std::to_string(k)});
    res.map.push_back({"v" + std::to_string(2 * n + 1 - k), "v" + std::to_string(k)});
  }
  return res;
}

}  // namespace prepro
