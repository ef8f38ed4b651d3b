#include "prepro/path.hpp"

#include <algorithm>

namespace prepro {

Carrier Carrier::graph_mode(const Graph& g) {
  Carrier c;
  c.mode_ = Mode::Graph;
  c.graph_ = g;
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& [u, v] = g.edges()[k];
    int i = g.vertex_index(u), j = g.vertex_index(v);
    std::string base = "h" + std::to_string(k);
    if (i == j) {
      int d = static_cast<int>(c.darts_.size());
      c.darts_.push_back(Dart{i, i, d, 1, base});
    } else {
      int d = static_cast<int>(c.darts_.size());
      c.darts_.push_back(Dart{i, j, d + 1, 1, base});
      c.darts_.push_back(Dart{j, i, d, 1, base + "*"});
    }
  }
  return c;
}

Carrier Carrier::double_mode(const Graph& g) {
  Carrier c;
  c.mode_ = Mode::Double;
  c.graph_ = g;
  auto add_pair = [&c](int i, int j, const std::string& base) {
    int d = static_cast<int>(c.darts_.size());
    c.darts_.push_back(Dart{i, j, d + 1, -1, base});        // original arrow
    c.darts_.push_back(Dart{j, i, d, 1, base + "*"});       // reverse arrow
  };
  if (g.arrows()) {
    for (const auto& a : *g.arrows())
      add_pair(g.vertex_index(a.tail), g.vertex_index(a.head), a.id);
  } else {
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
      const auto& [u, v] = g.edges()[k];
      add_pair(g.vertex_index(u), g.vertex_index(v), "h" + std::to_string(k));
    }
  }
  return c;
}

Carrier Carrier::free_form(const std::vector<std::string>& vertices,
                           const std::vector<std::tuple<std::string, std::string, std::string>>& gens) {
  Carrier c;
  c.mode_ = Mode::Graph;
  c.graph_ = Graph(vertices, {});
  for (const auto& [name, src, tgt] : gens) {
    int d = static_cast<int>(c.darts_.size());
    c.darts_.push_back(Dart{c.graph_.vertex_index(src), c.graph_.vertex_index(tgt), d, 0, name});
  }
  return c;
}

int Carrier::dart_index(const std::string& name) const {
  for (std::size_t d = 0; d < darts_.size(); ++d)
    if (darts_[d].name == name) return static_cast<int>(d);
  throw InputError("unknown dart '" + name + "'");
}

std::vector<Path> enumerate_paths(const Carrier& c, int n, std::optional<int> target,
                                  std::optional<int> source) {
  if (n < 0) throw InputError("degree must be >= 0");
  std::vector<Path> cur;
  for (int v = 0; v < static_cast<int>(c.num_vertices()); ++v)
    if (!source || *source == v) cur.push_back(trivial_path(v));
  for (int step = 0; step < n; ++step) {
    std::vector<Path> next;
    for (const auto& p : cur)
      for (int d = 0; d < static_cast<int>(c.darts().size()); ++d)
        if (c.dart(d).src == p.tgt) next.push_back(extend(c, p, d));
    cur = std::move(next);
  }
  if (target) {
    std::vector<Path> filt;
    for (auto& p : cur)
      if (p.tgt == *target) filt.push_back(std::move(p));
    cur = std::move(filt);
  }
  std::sort(cur.begin(), cur.end(), [](const Path& a, const Path& b) { return PathLess{}(a, b); });
  return cur;
}

Path parse_path(const Carrier& c, const std::string& text) {
  if (text.rfind("e:", 0) == 0) return trivial_path(c.vertex_index(text.substr(2)));
  std::vector<std::string> names;
  std::string cur;
  for (char ch : text) {
    if (ch == '.') {
      names.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  names.push_back(cur);
  if (names.empty() || names.front().empty()) throw InputError("empty path literal");
  // Rightmost dart is traversed first.
  Path p = dart_path(c, c.dart_index(names.back()));
  for (auto it = names.rbegin() + 1; it != names.rend(); ++it)
    p = extend(c, p, c.dart_index(*it));
  return p;
}

std::string format_path(const Carrier& c, const Path& p) {
  if (p.trivial()) return "e:" + c.vertex_name(p.src);
  std::string out;
  for (auto it = p.darts.rbegin(); it != p.darts.rend(); ++it) {
    if (!out.empty()) out += ".";
    out += c.dart(*it).name;
  }
  return out;
}

Path cyclic_canonical(const Carrier& c, const Path& p) {
  if (!p.cyclic()) throw InputError("cyclic_canonical on a non-cyclic path");
  if (p.trivial()) return p;
  Path best = p;
  Path rot = p;
  for (std::size_t k = 1; k < p.darts.size(); ++k) {
    std::rotate(rot.darts.begin(), rot.darts.begin() + 1, rot.darts.end());
    rot.src = c.dart(rot.darts.front()).src;
    rot.tgt = rot.src;
    if (PathLess{}(rot, best)) best = rot;
  }
  return best;
}

namespace detail {

std::vector<std::string> split_terms(const std::string& text) {
  // Splits "a - b + c" into signed terms "a", "-b", "c"; whitespace ignored.
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t') continue;
    if ((ch == '+' || ch == '-') && !cur.empty() && cur.back() != '*' && cur.back() != '/') {
      terms.push_back(cur);
      cur.clear();
      if (ch == '-') cur.push_back('-');
      continue;
    }
    cur.push_back(ch);
  }
  if (!cur.empty()) terms.push_back(cur);
  // Fold a leading sign into an explicit coefficient.
  for (auto& t : terms) {
    if (!t.empty() && t[0] == '-' && t.find('*') == std::string::npos) t = "-1*" + t.substr(1);
    else if (!t.empty() && t[0] == '-' ) {
      // "-3/2*path" already parses via the coefficient branch
    }
  }
  return terms;
}

}  // namespace detail

}  // namespace prepro
