#pragma once

#include <cstdint>
#include <stdexcept>

namespace gwpower
{

// Overflow-checked 64-bit integer arithmetic. All counting in the library
// (coefficients of formal sums, ranks, binomials) goes through these.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a)
{
  return checked_sub(0, a);
}

/// Generalized binomial coefficient C(top, k) for k >= 0 and any integer top.
inline std::int64_t binomial(std::int64_t top, std::int64_t k)
{
  if (k < 0)
    return 0;
  if (top >= 0 && k > top)
    return 0;
  if (top >= 0 && k > top - k)
    k = top - k;
  // Running product stays integral: after step i it equals C(top, i).
  __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * (top - k + i) / i;
    if (acc > INT64_MAX || acc < INT64_MIN)
      throw std::overflow_error("binomial coefficient overflow");
  }
  return static_cast<std::int64_t>(acc);
}

} // namespace gwpower
