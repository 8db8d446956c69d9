#include "covert/csv.hpp"

#include <cmath>
#include <cstdio>

namespace covert::csv {

std::string number(double v) {
  if (std::isnan(v)) return kUnavailable;
  char buf[32];
  // snprintf honours LC_NUMERIC; the CLI never changes the "C" locale.
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace covert::csv
