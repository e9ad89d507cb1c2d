#pragma once

#include <algorithm>
#include <string>
#include <string_view>

#include "thetatwist/errors.hpp"

namespace thetatwist {

using Int128 = __int128;

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::ResourceLimit, "128-bit addition overflow");
  return r;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::ResourceLimit, "128-bit subtraction overflow");
  return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ResourceLimit, "128-bit multiplication overflow");
  return r;
}

inline std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with negative values so that the minimum representable value is safe.
  if (!negative) v = -v;
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

inline Int128 parse_int128(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  if (i >= text.size()) throw Error(ErrorCode::Config, "empty integer literal");
  Int128 v = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\r' || c == ' ' || c == '\t') break;
    if (c < '0' || c > '9') throw Error(ErrorCode::Config, "bad integer literal: " + std::string(text));
    v = checked_sub(checked_mul(v, 10), c - '0');
  }
  return negative ? v : checked_mul(v, -1);
}

}  // namespace thetatwist
