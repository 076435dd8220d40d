// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <string>

namespace scenopt {

// Shortest-ish round-trippable decimal rendering: 17 significant digits, '.'
// decimal separator regardless of locale.  Used everywhere a double crosses a
// text boundary (CSV cells, certificates) so reruns are byte-identical.
inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  for (char* p = buf; *p; ++p) {
    if (*p == ',') *p = '.';  // host app may have installed a numeric locale
  }
  return buf;
}

}  // namespace scenopt
