#pragma once

#include <string>

namespace awtc {

// Nine significant digits, the precision used by every CSV/JSONL writer.
std::string format_real(double value);

}  // namespace awtc
