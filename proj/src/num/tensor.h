#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "common/error.h"

namespace hnet::num {

#ifdef HNET_FLOAT32
using Real = float;
#else
using Real = double;
#endif

class ShapeMismatch : public NumericError {
 public:
  ShapeMismatch(const std::string& op, const std::string& got, const std::string& expected)
      : NumericError(op + ": shape " + got + ", expected " + expected) {}
};

class NotScalar : public NumericError {
 public:
  explicit NotScalar(const std::string& shape) : NumericError("backward needs a 1x1 loss, got " + shape) {}
};

struct Node {
  int rows = 0;
  int cols = 0;
  std::vector<Real> value;
  std::vector<Real> grad;  // empty until something flows into it
  bool requires_grad = false;
  bool leaf = true;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  std::size_t size() const { return value.size(); }
  Real* g() {
    if (grad.empty()) grad.assign(value.size(), Real(0));
    return grad.data();
  }
};

// Handle to a 2-D row-major array that may sit on the recorded graph.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  static Tensor zeros(int rows, int cols, bool requires_grad = false);
  static Tensor filled(int rows, int cols, Real v, bool requires_grad = false);
  static Tensor from(int rows, int cols, std::vector<Real> values, bool requires_grad = false);
  static Tensor scalar(Real v) { return from(1, 1, {v}); }

  bool defined() const { return node_ != nullptr; }
  int rows() const { return node_->rows; }
  int cols() const { return node_->cols; }
  std::size_t size() const { return node_->value.size(); }
  std::string shape_str() const;

  Real at(int r, int c) const { return node_->value[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols()) + static_cast<std::size_t>(c)]; }
  Real item() const;
  const std::vector<Real>& values() const { return node_->value; }
  std::vector<Real>& mutable_values() { return node_->value; }
  const std::vector<Real>& grad() const { return node_->grad; }
  void zero_grad() { node_->grad.clear(); }
  bool requires_grad() const { return node_->requires_grad; }

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& ptr() const { return node_; }

  // Reverse pass from this 1x1 value. Interior gradients are reset first;
  // leaf gradients accumulate across calls.
  void backward() const;

 private:
  std::shared_ptr<Node> node_;
};

// Disables graph recording on this thread while alive.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_enabled();

// Builds a result node; records parents and the backward closure only when
// recording is on and some parent needs a gradient.
Tensor make_result(int rows, int cols, std::vector<Real> value, std::vector<Tensor> parents,
                   std::function<void(Node&)> backward);

}  // namespace hnet::num
