#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "ybhom/errors.hpp"

namespace ybhom {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using i64 = std::int64_t;

//! base^exp, throwing BudgetError once the result would exceed `limit`.
i64 checked_pow(i64 base, int exp, i64 limit);

std::uint32_t next_prime_at_least(std::uint32_t n);

}  // namespace ybhom
