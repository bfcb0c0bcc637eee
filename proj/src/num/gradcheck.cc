#include "num/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hnet::num {

GradCheckResult grad_check(const std::function<Tensor()>& loss,
                           const std::vector<std::pair<std::string, Tensor>>& inputs, double eps,
                           std::size_t per_tensor, unsigned seed, double floor) {
  for (const auto& [_, t] : inputs) {
    t.node()->requires_grad = true;
    const_cast<Tensor&>(t).zero_grad();
  }
  loss().backward();

  GradCheckResult res;
  std::mt19937 rng(seed);
  for (const auto& [name, t] : inputs) {
    std::vector<std::size_t> probe(t.size());
    std::iota(probe.begin(), probe.end(), 0);
    if (per_tensor > 0 && probe.size() > per_tensor) {
      std::shuffle(probe.begin(), probe.end(), rng);
      probe.resize(per_tensor);
    }
    const std::vector<Real> analytic = t.grad().empty() ? std::vector<Real>(t.size(), Real(0)) : t.grad();
    auto& values = t.node()->value;
    for (std::size_t i : probe) {
      const Real keep = values[i];
      double up, down;
      {
        NoGradGuard ng;
        values[i] = static_cast<Real>(keep + eps);
        up = static_cast<double>(loss().item());
        values[i] = static_cast<Real>(keep - eps);
        down = static_cast<double>(loss().item());
        values[i] = keep;
      }
      const double numeric = (up - down) / (2 * eps);
      const double a = static_cast<double>(analytic[i]);
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
      ++res.checked;
      if (rel > res.max_rel_error) {
        res.max_rel_error = rel;
        res.worst = name + "[" + std::to_string(i) + "]";
      }
    }
  }
  return res;
}

}  // namespace hnet::num
