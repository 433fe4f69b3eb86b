#include <cstdio>

#include "awtc/format.hpp"

namespace awtc {

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

}  // namespace awtc
