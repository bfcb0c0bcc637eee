#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hcr/hcr.h"
#include "model/config.h"
#include "num/optim.h"
#include "num/tensor.h"

namespace hnet::model {

using num::Real;
using num::Tensor;

class UnknownType : public DataError {
 public:
  explicit UnknownType(const std::string& type) : DataError("node type '" + type + "' is not in the type vocabulary") {}
};

class SequenceTooLong : public DataError {
 public:
  SequenceTooLong(int k, int max) : DataError("sequence of " + std::to_string(k) + " nodes exceeds max_src_len " + std::to_string(max)) {}
};

class PrefixTooLong : public DataError {
 public:
  PrefixTooLong(int t, int max) : DataError("target prefix of " + std::to_string(t) + " exceeds max_tgt_len " + std::to_string(max)) {}
};

// Reserved ids shared by both tokenizers.
inline constexpr int kPad = 0;
inline constexpr int kBos = 1;
inline constexpr int kEos = 2;
inline constexpr int kUnk = 3;
inline constexpr int kStr = 4;
inline constexpr int kNoToken = 5;

// Coarse node types seen by the graph layer.
enum class UnitKind { header = 0, statement = 1, expression = 2, structural = 3 };
inline constexpr int kUnitKinds = 4;

// One subtree as the tree convolution sees it. Nodes are L positions in
// pre-order; coefficients describe each node's slot under its parent.
struct TreeShape {
  std::vector<int> positions;
  std::vector<int> parent;   // local index, -1 for the root
  std::vector<Real> eta_l;   // left/right interpolation as a child
  std::vector<Real> eta_r;
};

struct InputEdge {
  int src = 0;
  int dst = 0;
  int type = 0;  // graph::EdgeType as int
};

// Everything the network reads from one method.
struct ModelInput {
  std::vector<std::vector<int>> pieces;  // per L position; empty means <notoken>
  std::vector<int> types;                // per L position
  std::vector<int> token_positions;
  std::vector<int> token_owner;          // unit index per token position
  std::vector<TreeShape> subtrees;
  std::vector<int> unit_subtree;         // subtree index or -1
  std::vector<int> unit_position;        // L position for non-subtree units, else -1
  std::vector<int> unit_kind;
  std::vector<InputEdge> edges;

  int length() const { return static_cast<int>(types.size()); }
  int units() const { return static_cast<int>(unit_kind.size()); }
};

using PieceFn = std::function<std::vector<int>(const std::string& token)>;

// Type ids are indices into syntax::node_type_vocabulary().
int type_id(const std::string& type);
int type_vocab_size();

// Structure plus ids from `bundle`; edges come from bundle.graph filtered by `flags`.
ModelInput build_input(const hcr::HcrBundle& bundle, const PieceFn& pieces, const graph::EdgeFlags& flags);

// Coefficients of child `rank` (0-based) among `siblings` children.
void child_coefficients(int rank, int siblings, Real& eta_l, Real& eta_r);

// Every attention distribution computed while a trace is attached.
struct AttentionRecord {
  std::string name;
  Tensor weights;            // [queries, keys] or, for HGT, [edges, heads]
  std::vector<int> segment;  // HGT: target per edge row
  int segments = 0;
};
struct AttentionTrace {
  std::vector<AttentionRecord> records;
};

// Encoder-side results reused across decoding steps.
struct Encoded {
  Tensor memory_a;  // [m+1, d] = [N; g], undefined in tokens-only mode
  Tensor memory_b;  // [k', d] gated token memory
  Tensor lambda;    // gate value, [1,1] or [1,d]
};

class Model {
 public:
  Model(ModelConfig cfg, std::uint64_t seed);

  const ModelConfig& config() const { return cfg_; }
  num::ParamStore& params() { return params_; }
  const num::ParamStore& params() const { return params_; }
  void set_trace(AttentionTrace* t) { trace_ = t; }

  // Layers, exposed so each can be checked on its own.
  Tensor embed_nodes(const ModelInput& x) const;
  // `valid` < k marks positions >= valid as padding.
  Tensor encode_sequence(const Tensor& s, int valid = -1) const;
  Tensor encoder_block(int layer, const Tensor& x, const std::vector<char>* key_mask) const;
  Tensor tbcnn(const Tensor& s, const ModelInput& x) const;
  Tensor hgt(const Tensor& t, const ModelInput& x) const;
  Tensor hgt_layer(int layer, const Tensor& h, const ModelInput& x) const;
  Tensor graph_aggregate(const Tensor& n) const;
  Tensor token_select(const Tensor& h, const ModelInput& x) const;
  Tensor haca(const Tensor& hp, const Tensor& t_owner, const Tensor& n, const Tensor& g) const;
  Tensor gate_lambda(const Tensor& g) const;
  Tensor gate(const Tensor& lambda, const Tensor& c, const Tensor& hp) const;
  Tensor decode(const std::vector<int>& prefix, const Tensor& memory_a, const Tensor& memory_b) const;
  Tensor decoder_block(int layer, const Tensor& y, const Tensor& memory_a, const Tensor& memory_b) const;

  Encoded encode(const ModelInput& x) const;
  // Mean cross-entropy of [y..., eos] given [bos, y...]; targets are cut to fit.
  Tensor loss(const ModelInput& x, const std::vector<int>& target) const;
  std::vector<int> greedy(const ModelInput& x, int max_len = -1) const;
  std::vector<Real> gate_values(const ModelInput& x) const;

 private:
  Tensor& p(const std::string& name) const;
  Tensor linear(const Tensor& x, const std::string& prefix) const;
  Tensor typed_linear(const Tensor& h, const std::string& prefix, const std::vector<int>& kinds) const;
  Tensor attention(const std::string& name, const Tensor& q, const Tensor& k, const Tensor& v,
                   const std::vector<char>* allowed) const;
  Tensor mha(const std::string& prefix, const Tensor& xq, const Tensor& xkv, const std::vector<char>* allowed) const;
  Tensor ffn(const std::string& prefix, const Tensor& x) const;

  void add_linear(std::mt19937_64& rng, const std::string& prefix, int in, int out);
  void add_norm(const std::string& prefix);
  void add_mha(std::mt19937_64& rng, const std::string& prefix);

  ModelConfig cfg_;
  mutable num::ParamStore params_;
  AttentionTrace* trace_ = nullptr;
};

}  // namespace hnet::model
