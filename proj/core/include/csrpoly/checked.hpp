#pragma once

#include <cstdint>
#include <string_view>

#include "csrpoly/errors.hpp"

namespace csrpoly {

/// Signed 64-bit type used for every index, pointer and size.
using index_t = std::int64_t;

/// Intermediate type for products that may exceed index_t before a division.
__extension__ typedef __int128 wide_index_t;

namespace checked {

inline index_t add(index_t a, index_t b, std::string_view what = "addition") {
  index_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError(std::string(what) + " overflows 64-bit index range");
  }
  return r;
}

inline index_t mul(index_t a, index_t b, std::string_view what = "multiplication") {
  index_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError(std::string(what) + " overflows 64-bit index range");
  }
  return r;
}

}  // namespace checked
}  // namespace csrpoly
