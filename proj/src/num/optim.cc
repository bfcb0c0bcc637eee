#include "num/optim.h"

#include <cmath>

namespace hnet::num {

Tensor& ParamStore::add(const std::string& name, Tensor t) {
  if (index_.count(name)) throw InternalError("duplicate parameter '" + name + "'");
  t.node()->requires_grad = true;
  index_[name] = entries_.size();
  entries_.emplace_back(name, std::move(t));
  return entries_.back().second;
}

Tensor& ParamStore::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw InternalError("no parameter '" + name + "'");
  return entries_[it->second].second;
}

const Tensor& ParamStore::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw InternalError("no parameter '" + name + "'");
  return entries_[it->second].second;
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& [_, t] : entries_) n += t.size();
  return n;
}

void ParamStore::zero_grad() {
  for (auto& [_, t] : entries_) t.zero_grad();
}

Tensor xavier_uniform(std::mt19937_64& rng, int rows, int cols) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> dist(-limit, limit);
  std::vector<Real> v(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (auto& x : v) x = static_cast<Real>(dist(rng));
  return Tensor::from(rows, cols, std::move(v));
}

Tensor normal_init(std::mt19937_64& rng, int rows, int cols, double stddev) {
  std::normal_distribution<double> dist(0.0, stddev);
  std::vector<Real> v(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (auto& x : v) x = static_cast<Real>(dist(rng));
  return Tensor::from(rows, cols, std::move(v));
}

void AdamW::step(ParamStore& params, double lr) {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (auto& [name, p] : params.entries()) {
    auto& values = p.mutable_values();
    const auto& grad = p.grad();
    auto& st = state_[name];
    if (st.m.empty()) {
      st.m.assign(values.size(), 0.0);
      st.v.assign(values.size(), 0.0);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double g = grad.empty() ? 0.0 : static_cast<double>(grad[i]);
      st.m[i] = cfg_.beta1 * st.m[i] + (1.0 - cfg_.beta1) * g;
      st.v[i] = cfg_.beta2 * st.v[i] + (1.0 - cfg_.beta2) * g * g;
      const double mhat = st.m[i] / bc1;
      const double vhat = st.v[i] / bc2;
      double x = static_cast<double>(values[i]);
      x -= lr * cfg_.weight_decay * x;
      x -= lr * mhat / (std::sqrt(vhat) + cfg_.eps);
      values[i] = static_cast<Real>(x);
    }
  }
}

double clip_grad_norm(ParamStore& params, double max_norm) {
  double total = 0;
  for (const auto& [_, p] : params.entries()) {
    for (Real g : p.grad()) total += static_cast<double>(g) * static_cast<double>(g);
  }
  const double norm = std::sqrt(total);
  if (max_norm > 0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (auto& [_, p] : params.entries()) {
      for (auto& g : p.node()->grad) g = static_cast<Real>(static_cast<double>(g) * s);
    }
  }
  return norm;
}

double linear_warmup_lr(std::int64_t step, std::int64_t warmup_steps, double max_lr, bool inverse_sqrt) {
  if (step < 0) throw UsageError("learning-rate step must be non-negative");
  if (warmup_steps <= 0) return max_lr;
  if (step <= warmup_steps) return max_lr * static_cast<double>(step) / static_cast<double>(warmup_steps);
  if (inverse_sqrt) return max_lr * std::sqrt(static_cast<double>(warmup_steps) / static_cast<double>(step));
  return max_lr;
}

}  // namespace hnet::num
