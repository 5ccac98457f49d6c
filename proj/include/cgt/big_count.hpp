#ifndef CGT_BIG_COUNT_HPP
#define CGT_BIG_COUNT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace cgt {

// Exact nonnegative counts and bound values. All bound-defining arithmetic
// stays in this type; floating point only ever appears in derived log10
// summaries.
using BigCount = boost::multiprecision::cpp_int;

// log10 computed from the exact decimal expansion (good to ~1e-12).
double log10_exact(const BigCount& value);

// Exact power 2^e.
BigCount pow2(unsigned long e);

// Exact power 10^e.
BigCount pow10(unsigned long e);

}  // namespace cgt

#endif  // CGT_BIG_COUNT_HPP
