#pragma once

#include "sdoe/policy/net.hpp"

#include <string>

namespace sdoe {

// Versioned text format; doubles are printed with 17 significant digits so a
// save/load round trip reproduces every weight bit-for-bit (and identical
// nets produce identical files).
void save_checkpoint(const PolicyNet& net, const std::string& path);
PolicyNet load_checkpoint(const std::string& path);

}  // namespace sdoe
