#include "num/tensor.h"

#include <unordered_set>

namespace hnet::num {

namespace {
thread_local bool g_grad_enabled = true;
}

bool grad_enabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

Tensor Tensor::zeros(int rows, int cols, bool requires_grad) { return filled(rows, cols, Real(0), requires_grad); }

Tensor Tensor::filled(int rows, int cols, Real v, bool requires_grad) {
  return from(rows, cols, std::vector<Real>(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), v),
              requires_grad);
}

Tensor Tensor::from(int rows, int cols, std::vector<Real> values, bool requires_grad) {
  if (rows < 0 || cols < 0 || values.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw ShapeMismatch("from", std::to_string(values.size()) + " values",
                        std::to_string(rows) + "x" + std::to_string(cols));
  }
  auto n = std::make_shared<Node>();
  n->rows = rows;
  n->cols = cols;
  n->value = std::move(values);
  n->requires_grad = requires_grad;
  return Tensor(std::move(n));
}

std::string Tensor::shape_str() const { return std::to_string(rows()) + "x" + std::to_string(cols()); }

Real Tensor::item() const {
  if (size() != 1) throw NotScalar(shape_str());
  return node_->value[0];
}

void Tensor::backward() const {
  if (rows() != 1 || cols() != 1) throw NotScalar(shape_str());
  if (!node_->requires_grad) return;

  // iterative post-order gives a topological order
  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<std::pair<Node*, std::size_t>> stack{{node_.get(), 0}};
  seen.insert(node_.get());
  while (!stack.empty()) {
    auto& [n, i] = stack.back();
    if (i < n->parents.size()) {
      Node* p = n->parents[i++].get();
      if (p->requires_grad && seen.insert(p).second) stack.push_back({p, 0});
    } else {
      order.push_back(n);
      stack.pop_back();
    }
  }
  for (Node* n : order) {
    if (!n->leaf) n->grad.clear();
  }
  node_->g()[0] += Real(1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backward && !n->grad.empty()) n->backward(*n);
  }
}

Tensor make_result(int rows, int cols, std::vector<Real> value, std::vector<Tensor> parents,
                   std::function<void(Node&)> backward) {
  auto n = std::make_shared<Node>();
  n->rows = rows;
  n->cols = cols;
  n->value = std::move(value);
  n->leaf = false;
  if (g_grad_enabled) {
    bool any = false;
    for (const auto& p : parents) any = any || p.requires_grad();
    if (any) {
      n->requires_grad = true;
      n->parents.reserve(parents.size());
      for (auto& p : parents) n->parents.push_back(p.ptr());
      n->backward = std::move(backward);
    }
  }
  return Tensor(std::move(n));
}

}  // namespace hnet::num
