#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "num/tensor.h"

namespace hnet::num {

struct GradCheckResult {
  double max_rel_error = 0;
  std::size_t checked = 0;
  std::string worst;  // "<name>[index]"
};

// Compares analytic gradients of `loss` against central differences.
// rel = |a - n| / max(|a|, |n|, floor). At most `per_tensor` entries of each
// input are probed (all when 0), chosen by `seed`.
GradCheckResult grad_check(const std::function<Tensor()>& loss,
                           const std::vector<std::pair<std::string, Tensor>>& inputs, double eps = 1e-5,
                           std::size_t per_tensor = 0, unsigned seed = 0, double floor = 1e-6);

}  // namespace hnet::num
