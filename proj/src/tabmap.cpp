#include <json.hpp>

#include <istream>
#include <ostream>
#include <set>

#include "horotree/rigidity.hpp"

namespace horotree {

TabulatedMap load_tabulated_map(std::istream& in) {
  TabulatedMap map;
  std::set<Rational> values;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (j.contains("K0")) {
      map.K0 = parse_rational(j.at("K0").get<std::string>());
      if (map.K0 < 1) throw std::invalid_argument("declared K0 must be >= 1");
      continue;
    }
    Rational x = parse_rational(j.at("x").get<std::string>());
    Rational fx = parse_rational(j.at("fx").get<std::string>());
    if (map.entries.count(x))
      throw std::invalid_argument("duplicate grid point at line " + std::to_string(lineno));
    if (!values.insert(fx).second)
      throw std::invalid_argument("map not injective: repeated value at line " +
                                  std::to_string(lineno));
    map.entries.emplace(std::move(x), std::move(fx));
  }
  return map;
}

void save_tabulated_map(const TabulatedMap& map, std::ostream& out) {
  nlohmann::ordered_json header;
  header["K0"] = rat_str(map.K0);
  out << header.dump() << "\n";
  for (const auto& [x, fx] : map.entries) {
    nlohmann::ordered_json j;
    j["x"] = rat_str(x);
    j["fx"] = rat_str(fx);
    out << j.dump() << "\n";
  }
}

}  // namespace horotree
