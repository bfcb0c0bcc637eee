#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "num/tensor.h"

namespace hnet::num {

// Named learnable arrays in insertion order.
class ParamStore {
 public:
  Tensor& add(const std::string& name, Tensor t);
  Tensor& get(const std::string& name);
  const Tensor& get(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  std::size_t size() const { return entries_.size(); }
  std::size_t scalar_count() const;
  const std::vector<std::pair<std::string, Tensor>>& entries() const { return entries_; }
  std::vector<std::pair<std::string, Tensor>>& entries() { return entries_; }
  void zero_grad();

 private:
  std::vector<std::pair<std::string, Tensor>> entries_;
  std::map<std::string, std::size_t> index_;
};

// Deterministic initializers drawing from a caller-owned engine.
Tensor xavier_uniform(std::mt19937_64& rng, int rows, int cols);
Tensor normal_init(std::mt19937_64& rng, int rows, int cols, double stddev);

struct AdamWConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

class AdamW {
 public:
  explicit AdamW(AdamWConfig cfg = {}) : cfg_(cfg) {}

  // One update over every entry with a gradient, at learning rate `lr`.
  void step(ParamStore& params, double lr);
  void step(ParamStore& params) { step(params, cfg_.lr); }
  std::int64_t steps() const { return t_; }
  const AdamWConfig& config() const { return cfg_; }

 private:
  struct Moments {
    std::vector<double> m, v;
  };
  AdamWConfig cfg_;
  std::int64_t t_ = 0;
  std::map<std::string, Moments> state_;
};

// Scales all gradients so their global L2 norm is at most `max_norm`.
// Returns the norm before clipping.
double clip_grad_norm(ParamStore& params, double max_norm);

// lr ramps linearly to max_lr over warmup_steps, then holds; with
// inverse_sqrt it decays as max_lr * sqrt(warmup / step) after warmup.
double linear_warmup_lr(std::int64_t step, std::int64_t warmup_steps, double max_lr, bool inverse_sqrt = false);

}  // namespace hnet::num
