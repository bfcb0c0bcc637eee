#include "num/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hnet::num {

namespace {

using Vec = std::vector<Real>;

std::size_t idx(int r, int c, int cols) {
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c);
}

Node& parent(Node& self, std::size_t i) { return *self.parents[i]; }

// C[m,n] += A[m,k] * B[k,n]
void gemm_nn(const Real* a, const Real* b, Real* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    Real* ci = c + idx(i, 0, n);
    const Real* ai = a + idx(i, 0, k);
    for (int p = 0; p < k; ++p) {
      const Real av = ai[p];
      if (av == Real(0)) continue;
      const Real* bp = b + idx(p, 0, n);
      for (int j = 0; j < n; ++j) ci[j] += av * bp[j];
    }
  }
}

// C[m,n] += A[m,k] * B[n,k]^T
void gemm_nt(const Real* a, const Real* b, Real* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const Real* ai = a + idx(i, 0, k);
    for (int j = 0; j < n; ++j) {
      const Real* bj = b + idx(j, 0, k);
      Real s = 0;
      for (int p = 0; p < k; ++p) s += ai[p] * bj[p];
      c[idx(i, j, n)] += s;
    }
  }
}

// C[k,n] += A[m,k]^T * B[m,n]
void gemm_tn(const Real* a, const Real* b, Real* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const Real* ai = a + idx(i, 0, k);
    const Real* bi = b + idx(i, 0, n);
    for (int p = 0; p < k; ++p) {
      const Real av = ai[p];
      if (av == Real(0)) continue;
      Real* cp = c + idx(p, 0, n);
      for (int j = 0; j < n; ++j) cp[j] += av * bi[j];
    }
  }
}

enum class Bcast { same, row, col, scalar };

Bcast broadcast_kind(const char* op, const Tensor& a, const Tensor& b) {
  if (b.rows() == a.rows() && b.cols() == a.cols()) return Bcast::same;
  if (b.rows() == 1 && b.cols() == 1) return Bcast::scalar;
  if (b.rows() == 1 && b.cols() == a.cols()) return Bcast::row;
  if (b.cols() == 1 && b.rows() == a.rows()) return Bcast::col;
  throw ShapeMismatch(op, b.shape_str(), a.shape_str() + " or a broadcastable row/column");
}

std::size_t bindex(Bcast k, int r, int c, int cols) {
  switch (k) {
    case Bcast::same: return idx(r, c, cols);
    case Bcast::row: return static_cast<std::size_t>(c);
    case Bcast::col: return static_cast<std::size_t>(r);
    case Bcast::scalar: return 0;
  }
  return 0;
}

template <typename F, typename DA, typename DB>
Tensor binary(const char* op, const Tensor& a, const Tensor& b, F f, DA da, DB db) {
  const Bcast k = broadcast_kind(op, a, b);
  const int m = a.rows(), n = a.cols();
  Vec out(a.size());
  const auto& av = a.values();
  const auto& bv = b.values();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) out[idx(r, c, n)] = f(av[idx(r, c, n)], bv[bindex(k, r, c, n)]);
  }
  return make_result(m, n, std::move(out), {a, b}, [k, m, n, da, db](Node& self) {
    Node& pa = parent(self, 0);
    Node& pb = parent(self, 1);
    const Real* g = self.grad.data();
    Real* ga = pa.requires_grad ? pa.g() : nullptr;
    Real* gb = pb.requires_grad ? pb.g() : nullptr;
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        const std::size_t i = idx(r, c, n);
        const std::size_t j = bindex(k, r, c, n);
        if (ga) ga[i] += g[i] * da(pa.value[i], pb.value[j]);
        if (gb) gb[j] += g[i] * db(pa.value[i], pb.value[j]);
      }
    }
  });
}

template <typename F, typename D>
Tensor unary(const Tensor& a, F f, D d) {
  Vec out(a.size());
  const auto& av = a.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(av[i]);
  return make_result(a.rows(), a.cols(), std::move(out), {a}, [d](Node& self) {
    Node& pa = parent(self, 0);
    Real* ga = pa.g();
    for (std::size_t i = 0; i < self.size(); ++i) ga[i] += self.grad[i] * d(pa.value[i], self.value[i]);
  });
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("matmul", b.shape_str(), std::to_string(a.cols()) + "xN");
  const int m = a.rows(), k = a.cols(), n = b.cols();
  Vec out(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), Real(0));
  gemm_nn(a.values().data(), b.values().data(), out.data(), m, k, n);
  return make_result(m, n, std::move(out), {a, b}, [m, k, n](Node& self) {
    Node& pa = parent(self, 0);
    Node& pb = parent(self, 1);
    if (pa.requires_grad) gemm_nt(self.grad.data(), pb.value.data(), pa.g(), m, n, k);
    if (pb.requires_grad) gemm_tn(pa.value.data(), self.grad.data(), pb.g(), m, k, n);
  });
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("matmul_nt", b.shape_str(), "Nx" + std::to_string(a.cols()));
  const int m = a.rows(), k = a.cols(), n = b.rows();
  Vec out(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), Real(0));
  gemm_nt(a.values().data(), b.values().data(), out.data(), m, k, n);
  return make_result(m, n, std::move(out), {a, b}, [m, k, n](Node& self) {
    Node& pa = parent(self, 0);
    Node& pb = parent(self, 1);
    // dA = dC B, dB = dC^T A
    if (pa.requires_grad) gemm_nn(self.grad.data(), pb.value.data(), pa.g(), m, n, k);
    if (pb.requires_grad) gemm_tn(self.grad.data(), pa.value.data(), pb.g(), m, n, k);
  });
}

Tensor transpose(const Tensor& a) {
  const int m = a.rows(), n = a.cols();
  Vec out(a.size());
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) out[idx(c, r, m)] = a.values()[idx(r, c, n)];
  }
  return make_result(n, m, std::move(out), {a}, [m, n](Node& self) {
    Real* ga = parent(self, 0).g();
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) ga[idx(r, c, n)] += self.grad[idx(c, r, m)];
    }
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  return binary(
      "add", a, b, [](Real x, Real y) { return x + y; }, [](Real, Real) { return Real(1); },
      [](Real, Real) { return Real(1); });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  return binary(
      "sub", a, b, [](Real x, Real y) { return x - y; }, [](Real, Real) { return Real(1); },
      [](Real, Real) { return Real(-1); });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  return binary(
      "mul", a, b, [](Real x, Real y) { return x * y; }, [](Real, Real y) { return y; },
      [](Real x, Real) { return x; });
}

Tensor scale(const Tensor& a, Real s) {
  return unary(a, [s](Real x) { return x * s; }, [s](Real, Real) { return s; });
}

Tensor add_scalar(const Tensor& a, Real s) {
  return unary(a, [s](Real x) { return x + s; }, [](Real, Real) { return Real(1); });
}

Tensor lerp(const Tensor& gate, const Tensor& a, const Tensor& b) { return add(mul(sub(a, b), gate), b); }

Tensor concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeMismatch("concat_cols", "no parts", "at least one");
  const int m = parts[0].rows();
  int n = 0;
  std::vector<int> offsets;
  for (const auto& p : parts) {
    if (p.rows() != m) throw ShapeMismatch("concat_cols", p.shape_str(), std::to_string(m) + "xN");
    offsets.push_back(n);
    n += p.cols();
  }
  Vec out(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int w = parts[k].cols();
    for (int r = 0; r < m; ++r) {
      std::copy_n(parts[k].values().data() + idx(r, 0, w), w, out.data() + idx(r, offsets[k], n));
    }
  }
  return make_result(m, n, std::move(out), parts, [m, n, offsets](Node& self) {
    for (std::size_t k = 0; k < self.parents.size(); ++k) {
      Node& p = parent(self, k);
      if (!p.requires_grad) continue;
      Real* gp = p.g();
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < p.cols; ++c) gp[idx(r, c, p.cols)] += self.grad[idx(r, offsets[k] + c, n)];
      }
    }
  });
}

Tensor concat_rows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeMismatch("concat_rows", "no parts", "at least one");
  const int n = parts[0].cols();
  int m = 0;
  std::vector<std::size_t> offsets;
  for (const auto& p : parts) {
    if (p.cols() != n) throw ShapeMismatch("concat_rows", p.shape_str(), "Mx" + std::to_string(n));
    offsets.push_back(idx(m, 0, n));
    m += p.rows();
  }
  Vec out;
  out.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (const auto& p : parts) out.insert(out.end(), p.values().begin(), p.values().end());
  return make_result(m, n, std::move(out), parts, [offsets](Node& self) {
    for (std::size_t k = 0; k < self.parents.size(); ++k) {
      Node& p = parent(self, k);
      if (!p.requires_grad) continue;
      Real* gp = p.g();
      for (std::size_t i = 0; i < p.size(); ++i) gp[i] += self.grad[offsets[k] + i];
    }
  });
}

Tensor slice_rows(const Tensor& a, int begin, int end) {
  if (begin < 0 || end > a.rows() || begin > end) {
    throw ShapeMismatch("slice_rows", "[" + std::to_string(begin) + "," + std::to_string(end) + ")", "rows of " + a.shape_str());
  }
  const int n = a.cols();
  Vec out(a.values().begin() + static_cast<std::ptrdiff_t>(idx(begin, 0, n)),
          a.values().begin() + static_cast<std::ptrdiff_t>(idx(end, 0, n)));
  return make_result(end - begin, n, std::move(out), {a}, [begin, n](Node& self) {
    Real* ga = parent(self, 0).g() + idx(begin, 0, n);
    for (std::size_t i = 0; i < self.size(); ++i) ga[i] += self.grad[i];
  });
}

Tensor slice_cols(const Tensor& a, int begin, int end) {
  if (begin < 0 || end > a.cols() || begin > end) {
    throw ShapeMismatch("slice_cols", "[" + std::to_string(begin) + "," + std::to_string(end) + ")", "cols of " + a.shape_str());
  }
  const int m = a.rows(), n = a.cols(), w = end - begin;
  Vec out(static_cast<std::size_t>(m) * static_cast<std::size_t>(w));
  for (int r = 0; r < m; ++r) std::copy_n(a.values().data() + idx(r, begin, n), w, out.data() + idx(r, 0, w));
  return make_result(m, w, std::move(out), {a}, [m, n, w, begin](Node& self) {
    Real* ga = parent(self, 0).g();
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < w; ++c) ga[idx(r, begin + c, n)] += self.grad[idx(r, c, w)];
    }
  });
}

Tensor softmax(const Tensor& a, int axis, const std::vector<char>* allowed) {
  if (axis != 0 && axis != 1) throw ShapeMismatch("softmax", "axis " + std::to_string(axis), "0 or 1");
  if (allowed && allowed->size() != a.size()) throw ShapeMismatch("softmax", "mask of " + std::to_string(allowed->size()), a.shape_str());
  const int m = a.rows(), n = a.cols();
  // walk lines: rows for axis 1, columns for axis 0
  const int lines = axis == 1 ? m : n;
  const int len = axis == 1 ? n : m;
  auto at = [axis, n](int line, int k) { return axis == 1 ? idx(line, k, n) : idx(k, line, n); };
  Vec out(a.size(), Real(0));
  const auto& v = a.values();
  for (int l = 0; l < lines; ++l) {
    Real mx = -std::numeric_limits<Real>::infinity();
    for (int k = 0; k < len; ++k) {
      const std::size_t i = at(l, k);
      if (!allowed || (*allowed)[i]) mx = std::max(mx, v[i]);
    }
    if (mx == -std::numeric_limits<Real>::infinity()) continue;
    Real total = 0;
    for (int k = 0; k < len; ++k) {
      const std::size_t i = at(l, k);
      if (allowed && !(*allowed)[i]) continue;
      out[i] = std::exp(v[i] - mx);
      total += out[i];
    }
    for (int k = 0; k < len; ++k) out[at(l, k)] /= total;
  }
  return make_result(m, n, std::move(out), {a}, [lines, len, at](Node& self) {
    Real* ga = parent(self, 0).g();
    for (int l = 0; l < lines; ++l) {
      Real dot = 0;
      for (int k = 0; k < len; ++k) dot += self.grad[at(l, k)] * self.value[at(l, k)];
      for (int k = 0; k < len; ++k) {
        const std::size_t i = at(l, k);
        ga[i] += self.value[i] * (self.grad[i] - dot);
      }
    }
  });
}

Tensor sigmoid(const Tensor& a) {
  return unary(
      a,
      [](Real x) {
        if (x >= 0) return Real(1) / (Real(1) + std::exp(-x));
        Real e = std::exp(x);
        return e / (Real(1) + e);
      },
      [](Real, Real y) { return y * (Real(1) - y); });
}

Tensor tanh(const Tensor& a) {
  return unary(a, [](Real x) { return std::tanh(x); }, [](Real, Real y) { return Real(1) - y * y; });
}

Tensor relu(const Tensor& a) {
  return unary(a, [](Real x) { return x > 0 ? x : Real(0); }, [](Real x, Real) { return x > 0 ? Real(1) : Real(0); });
}

Tensor gelu(const Tensor& a) {
  constexpr Real inv_sqrt2 = Real(0.70710678118654752440);
  constexpr Real inv_sqrt2pi = Real(0.39894228040143267794);
  return unary(
      a, [=](Real x) { return Real(0.5) * x * (Real(1) + std::erf(x * inv_sqrt2)); },
      [=](Real x, Real) {
        return Real(0.5) * (Real(1) + std::erf(x * inv_sqrt2)) + x * inv_sqrt2pi * std::exp(Real(-0.5) * x * x);
      });
}

Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, Real eps) {
  const int m = x.rows(), n = x.cols();
  if (gamma.rows() != 1 || gamma.cols() != n) throw ShapeMismatch("layer_norm gamma", gamma.shape_str(), "1x" + std::to_string(n));
  if (beta.rows() != 1 || beta.cols() != n) throw ShapeMismatch("layer_norm beta", beta.shape_str(), "1x" + std::to_string(n));
  Vec xhat(x.size()), inv_std(static_cast<std::size_t>(m)), out(x.size());
  const auto& v = x.values();
  for (int r = 0; r < m; ++r) {
    Real mean = 0;
    for (int c = 0; c < n; ++c) mean += v[idx(r, c, n)];
    mean /= Real(n);
    Real var = 0;
    for (int c = 0; c < n; ++c) {
      Real d = v[idx(r, c, n)] - mean;
      var += d * d;
    }
    var /= Real(n);
    const Real is = Real(1) / std::sqrt(var + eps);
    inv_std[static_cast<std::size_t>(r)] = is;
    for (int c = 0; c < n; ++c) {
      const std::size_t i = idx(r, c, n);
      xhat[i] = (v[i] - mean) * is;
      out[i] = xhat[i] * gamma.values()[static_cast<std::size_t>(c)] + beta.values()[static_cast<std::size_t>(c)];
    }
  }
  return make_result(m, n, std::move(out), {x, gamma, beta},
                     [m, n, xhat = std::move(xhat), inv_std = std::move(inv_std)](Node& self) {
    Node& px = parent(self, 0);
    Node& pg = parent(self, 1);
    Node& pb = parent(self, 2);
    const Real* g = self.grad.data();
    if (pg.requires_grad || pb.requires_grad) {
      Real* gg = pg.requires_grad ? pg.g() : nullptr;
      Real* gb = pb.requires_grad ? pb.g() : nullptr;
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) {
          const std::size_t i = idx(r, c, n);
          if (gg) gg[c] += g[i] * xhat[i];
          if (gb) gb[c] += g[i];
        }
      }
    }
    if (!px.requires_grad) return;
    Real* gx = px.g();
    for (int r = 0; r < m; ++r) {
      Real mean_dy = 0, mean_dy_xhat = 0;
      for (int c = 0; c < n; ++c) {
        const std::size_t i = idx(r, c, n);
        const Real dy = g[i] * pg.value[static_cast<std::size_t>(c)];
        mean_dy += dy;
        mean_dy_xhat += dy * xhat[i];
      }
      mean_dy /= Real(n);
      mean_dy_xhat /= Real(n);
      for (int c = 0; c < n; ++c) {
        const std::size_t i = idx(r, c, n);
        const Real dy = g[i] * pg.value[static_cast<std::size_t>(c)];
        gx[i] += inv_std[static_cast<std::size_t>(r)] * (dy - mean_dy - xhat[i] * mean_dy_xhat);
      }
    }
  });
}

Tensor gather_rows(const Tensor& table, const std::vector<int>& ids) {
  const int n = table.cols();
  Vec out;
  out.reserve(ids.size() * static_cast<std::size_t>(n));
  for (int id : ids) {
    if (id < 0 || id >= table.rows()) throw ShapeMismatch("gather_rows", "row " + std::to_string(id), "< " + std::to_string(table.rows()));
    auto begin = table.values().begin() + static_cast<std::ptrdiff_t>(idx(id, 0, n));
    out.insert(out.end(), begin, begin + n);
  }
  return make_result(static_cast<int>(ids.size()), n, std::move(out), {table}, [ids, n](Node& self) {
    Real* gt = parent(self, 0).g();
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Real* row = gt + idx(ids[k], 0, n);
      const Real* g = self.grad.data() + k * static_cast<std::size_t>(n);
      for (int c = 0; c < n; ++c) row[c] += g[c];
    }
  });
}

Tensor scatter_add_rows(const Tensor& src, const std::vector<int>& index, int rows) {
  if (index.size() != static_cast<std::size_t>(src.rows())) {
    throw ShapeMismatch("scatter_add_rows", std::to_string(index.size()) + " indices", std::to_string(src.rows()));
  }
  const int n = src.cols();
  Vec out(static_cast<std::size_t>(rows) * static_cast<std::size_t>(n), Real(0));
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] < 0 || index[k] >= rows) throw ShapeMismatch("scatter_add_rows", "row " + std::to_string(index[k]), "< " + std::to_string(rows));
    for (int c = 0; c < n; ++c) out[idx(index[k], c, n)] += src.values()[idx(static_cast<int>(k), c, n)];
  }
  return make_result(rows, n, std::move(out), {src}, [index, n](Node& self) {
    Real* gs = parent(self, 0).g();
    for (std::size_t k = 0; k < index.size(); ++k) {
      for (int c = 0; c < n; ++c) gs[idx(static_cast<int>(k), c, n)] += self.grad[idx(index[k], c, n)];
    }
  });
}

Tensor max_pool(const Tensor& a, int axis) {
  if (axis != 0 && axis != 1) throw ShapeMismatch("max_pool", "axis " + std::to_string(axis), "0 or 1");
  const int m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) throw ShapeMismatch("max_pool", a.shape_str(), "non-empty");
  const int lines = axis == 0 ? n : m;
  const int len = axis == 0 ? m : n;
  std::vector<std::size_t> arg(static_cast<std::size_t>(lines));
  Vec out(static_cast<std::size_t>(lines));
  for (int l = 0; l < lines; ++l) {
    std::size_t best = axis == 0 ? idx(0, l, n) : idx(l, 0, n);
    for (int k = 1; k < len; ++k) {
      std::size_t i = axis == 0 ? idx(k, l, n) : idx(l, k, n);
      if (a.values()[i] > a.values()[best]) best = i;
    }
    arg[static_cast<std::size_t>(l)] = best;
    out[static_cast<std::size_t>(l)] = a.values()[best];
  }
  return make_result(axis == 0 ? 1 : m, axis == 0 ? n : 1, std::move(out), {a}, [arg](Node& self) {
    Real* ga = parent(self, 0).g();
    for (std::size_t l = 0; l < arg.size(); ++l) ga[arg[l]] += self.grad[l];
  });
}

Tensor sum(const Tensor& a) {
  Real s = 0;
  for (Real v : a.values()) s += v;
  return make_result(1, 1, {s}, {a}, [](Node& self) {
    Node& p = parent(self, 0);
    Real* gp = p.g();
    for (std::size_t i = 0; i < p.size(); ++i) gp[i] += self.grad[0];
  });
}

Tensor row_sum(const Tensor& a) {
  const int m = a.rows(), n = a.cols();
  Vec out(static_cast<std::size_t>(m), Real(0));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) out[static_cast<std::size_t>(r)] += a.values()[idx(r, c, n)];
  }
  return make_result(m, 1, std::move(out), {a}, [m, n](Node& self) {
    Real* ga = parent(self, 0).g();
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) ga[idx(r, c, n)] += self.grad[static_cast<std::size_t>(r)];
    }
  });
}

Tensor mean_rows(const Tensor& a) {
  const int m = a.rows(), n = a.cols();
  if (m == 0) throw ShapeMismatch("mean_rows", a.shape_str(), "at least one row");
  Vec out(static_cast<std::size_t>(n), Real(0));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) out[static_cast<std::size_t>(c)] += a.values()[idx(r, c, n)];
  }
  for (auto& v : out) v /= Real(m);
  return make_result(1, n, std::move(out), {a}, [m, n](Node& self) {
    Real* ga = parent(self, 0).g();
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) ga[idx(r, c, n)] += self.grad[static_cast<std::size_t>(c)] / Real(m);
    }
  });
}

Tensor segment_softmax(const Tensor& scores, const std::vector<int>& segment, int segments) {
  const int e = scores.rows(), h = scores.cols();
  if (segment.size() != static_cast<std::size_t>(e)) {
    throw ShapeMismatch("segment_softmax", std::to_string(segment.size()) + " segment ids", std::to_string(e));
  }
  const auto nseg = static_cast<std::size_t>(segments);
  Vec mx(nseg * static_cast<std::size_t>(h), -std::numeric_limits<Real>::infinity());
  Vec total(nseg * static_cast<std::size_t>(h), Real(0));
  const auto& v = scores.values();
  for (int r = 0; r < e; ++r) {
    for (int c = 0; c < h; ++c) {
      Real& m = mx[idx(segment[static_cast<std::size_t>(r)], c, h)];
      m = std::max(m, v[idx(r, c, h)]);
    }
  }
  Vec out(scores.size());
  for (int r = 0; r < e; ++r) {
    for (int c = 0; c < h; ++c) {
      const std::size_t s = idx(segment[static_cast<std::size_t>(r)], c, h);
      out[idx(r, c, h)] = std::exp(v[idx(r, c, h)] - mx[s]);
      total[s] += out[idx(r, c, h)];
    }
  }
  for (int r = 0; r < e; ++r) {
    for (int c = 0; c < h; ++c) out[idx(r, c, h)] /= total[idx(segment[static_cast<std::size_t>(r)], c, h)];
  }
  return make_result(e, h, std::move(out), {scores}, [segment, nseg, e, h](Node& self) {
    Vec dot(nseg * static_cast<std::size_t>(h), Real(0));
    for (int r = 0; r < e; ++r) {
      for (int c = 0; c < h; ++c) {
        dot[idx(segment[static_cast<std::size_t>(r)], c, h)] += self.grad[idx(r, c, h)] * self.value[idx(r, c, h)];
      }
    }
    Real* gs = parent(self, 0).g();
    for (int r = 0; r < e; ++r) {
      for (int c = 0; c < h; ++c) {
        const std::size_t i = idx(r, c, h);
        gs[i] += self.value[i] * (self.grad[i] - dot[idx(segment[static_cast<std::size_t>(r)], c, h)]);
      }
    }
  });
}

Tensor cross_entropy(const Tensor& logits, const std::vector<int>& targets, Reduction reduction) {
  const int t = logits.rows(), v = logits.cols();
  if (targets.size() != static_cast<std::size_t>(t)) {
    throw ShapeMismatch("cross_entropy", std::to_string(targets.size()) + " targets", std::to_string(t));
  }
  Vec prob(logits.size());
  Real loss = 0;
  int counted = 0;
  for (int r = 0; r < t; ++r) {
    const Real* row = logits.values().data() + idx(r, 0, v);
    Real mx = *std::max_element(row, row + v);
    Real total = 0;
    for (int c = 0; c < v; ++c) total += std::exp(row[c] - mx);
    for (int c = 0; c < v; ++c) prob[idx(r, c, v)] = std::exp(row[c] - mx) / total;
    const int y = targets[static_cast<std::size_t>(r)];
    if (y < 0) continue;
    if (y >= v) throw ShapeMismatch("cross_entropy", "target " + std::to_string(y), "< " + std::to_string(v));
    loss += -(row[y] - mx - std::log(total));
    ++counted;
  }
  const Real denom = reduction == Reduction::mean ? Real(std::max(counted, 1)) : Real(1);
  return make_result(1, 1, {loss / denom}, {logits}, [prob = std::move(prob), targets, t, v, denom](Node& self) {
    Real* gl = parent(self, 0).g();
    const Real g = self.grad[0] / denom;
    for (int r = 0; r < t; ++r) {
      const int y = targets[static_cast<std::size_t>(r)];
      if (y < 0) continue;
      for (int c = 0; c < v; ++c) gl[idx(r, c, v)] += g * (prob[idx(r, c, v)] - (c == y ? Real(1) : Real(0)));
    }
  });
}

}  // namespace hnet::num
