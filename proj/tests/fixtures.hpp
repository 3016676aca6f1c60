#pragma once

#include <doctest.h>

#include "digs/presets.hpp"

inline digs::RunConfig preset(const char* name) {
  const auto cfg = digs::find_preset(name);
  REQUIRE(cfg.has_value());
  return *cfg;
}

// |x - y| <= tol * |y|, componentwise on the modulus.
inline bool close(digs::complex x, digs::complex y, double tol) {
  return std::abs(x - y) <= tol * std::abs(y);
}
