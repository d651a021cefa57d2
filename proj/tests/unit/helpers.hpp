#pragma once

#include <string>

#include "schottky/bundled.hpp"
#include "schottky/numeric.hpp"

namespace test {

inline schottky::MarkedSchottkyGroup group(const std::string& name) {
  return schottky::bundled_group_spec(name).build();
}

inline double d(const schottky::Real& x) { return x.convert_to<double>(); }

}  // namespace test
