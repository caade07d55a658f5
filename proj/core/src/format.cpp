#include "hfock/format.hpp"

#include <cmath>
#include <cstdio>

namespace hfock {

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // fold -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

}  // namespace hfock
