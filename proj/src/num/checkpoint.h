#pragma once

#include <string>

#include "num/optim.h"

namespace hnet::num {

// Binary layout: "HNETCKPT", u32 version, u32 scalar width, u32 count, then per
// entry u32 name length, name, u32 rows, u32 cols, raw values (little endian).
void save_checkpoint(const ParamStore& params, const std::string& path);

// Loads into an already-shaped store; names and shapes must match exactly.
void load_checkpoint(ParamStore& params, const std::string& path);

}  // namespace hnet::num
