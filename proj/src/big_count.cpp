#include "cgt/big_count.hpp"

#include <cmath>
#include <string>

#include "cgt/game.hpp"

namespace cgt {

double log10_exact(const BigCount& value) {
  if (value <= 0) throw UsageError("log10_exact: value must be positive");
  std::string digits = value.str();
  std::size_t take = std::min<std::size_t>(digits.size(), 17);
  double lead = std::stod(digits.substr(0, take));
  return std::log10(lead) + static_cast<double>(digits.size() - take);
}

BigCount pow2(unsigned long e) { return BigCount(1) << e; }

BigCount pow10(unsigned long e) {
  BigCount ten(10);
  return boost::multiprecision::pow(ten, static_cast<unsigned>(e));
}

}  // namespace cgt
