#include "prepro/quotient.hpp"

namespace prepro {

Carrier free_carrier(const std::vector<std::string>& vertices, const std::vector<GeneratorSpec>& gens) {
  std::vector<std::tuple<std::string, std::string, std::string>> g;
  g.reserve(gens.size());
  for (const auto& s : gens) g.emplace_back(s.name, s.src, s.tgt);
  return Carrier::free_form(vertices, g);
}

}  // namespace prepro
