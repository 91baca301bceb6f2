#pragma once

#include <string>

#include <gtest/gtest.h>

#include "faltings/numctx.hpp"

// |a - expected| as a double, expected given as decimal text.
inline double dist(const faltings::Real& a, const std::string& expected) {
  faltings::Real e(expected, a.precision());
  return faltings::abs(a - e).to_double();
}

inline double dist(const faltings::Real& a, const faltings::Real& b) { return faltings::abs(a - b).to_double(); }
