#include "trident/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trident {

namespace {

Rat parse_rat(const std::string& s) {
  // "p/q" or integer or decimal like "0.25".
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    Int den(1);
    for (size_t i = 0; i < frac; ++i) den *= 10;
    Rat r(Int(digits), den);
    r.canonicalize();
    return r;
  }
  return Rat(Int(s));
}

}  // namespace

Config Config::load(const std::string& path) {
  Config cfg;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kv;
    if (!(ls >> kv)) continue;
    auto eq = kv.find('=');
    std::string key, val;
    if (eq != std::string::npos) {
      key = kv.substr(0, eq);
      val = kv.substr(eq + 1);
    } else {
      key = kv;
      std::string rest;
      ls >> rest;
      if (rest == "=") ls >> val;
      else if (!rest.empty() && rest[0] == '=') val = rest.substr(1);
    }
    if (val.empty()) throw std::runtime_error("config: bad line: " + line);
    if (key == "c_quadratic") cfg.c_quadratic = parse_rat(val);
    else if (key == "c_balanced") cfg.c_balanced = parse_rat(val);
    else if (key == "c_prime") cfg.c_prime = parse_rat(val);
    else if (key == "oracle_ceiling") cfg.oracle_ceiling = Int(val);
    else if (key == "rational_point_height") cfg.rational_point_height = Int(val);
    else if (key == "fallback_budget_percent") cfg.fallback_budget_percent = std::stoi(val);
    else if (key == "census_ceiling") cfg.census_ceiling = Int(val);
    else if (key == "series_order_override") cfg.series_order_override = std::stoi(val);
    else throw std::runtime_error("config: unknown key: " + key);
  }
  return cfg;
}

}  // namespace trident
