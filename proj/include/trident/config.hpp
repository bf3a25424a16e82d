#pragma once

#include <string>

#include "trident/numbers.hpp"

namespace trident {

// Runtime constants.  Loadable from a key=value text file ('#' comments).
struct Config {
  Rat c_quadratic = Rat(1, 4);  // M = c B^(9/10) N^(1/10)
  Rat c_balanced = Rat(1);      // M = c B^(4/(h+3))
  Rat c_prime = Rat(1);         // N admissibility scale
  Int oracle_ceiling = Int(20000);
  Int rational_point_height = Int(1000000);
  int fallback_budget_percent = 5;
  Int census_ceiling = Int(10000000);
  int series_order_override = 0;  // 0 = automatic

  static Config load(const std::string& path);
};

}  // namespace trident
