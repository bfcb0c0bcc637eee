#pragma once

#include <vector>

#include "num/tensor.h"

namespace hnet::num {

Tensor matmul(const Tensor& a, const Tensor& b);     // [m,k] x [k,n]
Tensor matmul_nt(const Tensor& a, const Tensor& b);  // [m,k] x [n,k]^T
Tensor transpose(const Tensor& a);

// Elementwise; `b` may also be [1,n], [m,1] or [1,1] and is broadcast.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, Real s);
Tensor add_scalar(const Tensor& a, Real s);
// a * s + (1 - s) * b with a [1,1] or per-element gate s (broadcast like mul).
Tensor lerp(const Tensor& gate, const Tensor& a, const Tensor& b);

Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor concat_rows(const std::vector<Tensor>& parts);
Tensor slice_rows(const Tensor& a, int begin, int end);
Tensor slice_cols(const Tensor& a, int begin, int end);

// axis 1 normalizes each row, axis 0 each column. `allowed` (row-major, same
// size as a) masks entries out; a fully masked line comes back all zero.
Tensor softmax(const Tensor& a, int axis = 1, const std::vector<char>* allowed = nullptr);

Tensor sigmoid(const Tensor& a);
Tensor tanh(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor gelu(const Tensor& a);  // exact erf form

// Per-row normalization with affine gamma/beta of shape [1,n].
Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, Real eps = Real(1e-5));

// Rows of `table` picked by ids (embedding lookup).
Tensor gather_rows(const Tensor& table, const std::vector<int>& ids);
inline Tensor embedding_lookup(const Tensor& table, const std::vector<int>& ids) { return gather_rows(table, ids); }
// out[index[i]] += src[i]; out has `rows` rows.
Tensor scatter_add_rows(const Tensor& src, const std::vector<int>& index, int rows);

// axis 0 pools over rows -> [1,n]; axis 1 over columns -> [m,1].
Tensor max_pool(const Tensor& a, int axis = 0);
Tensor sum(const Tensor& a);
Tensor mean_rows(const Tensor& a);  // -> [1,n]
Tensor row_sum(const Tensor& a);    // -> [m,1]

// Softmax over the rows that share a segment id, independently per column.
Tensor segment_softmax(const Tensor& scores, const std::vector<int>& segment, int segments);

enum class Reduction { mean, sum };
// Token cross-entropy; targets < 0 are ignored. Mean is over counted targets.
Tensor cross_entropy(const Tensor& logits, const std::vector<int>& targets, Reduction r = Reduction::mean);

}  // namespace hnet::num
