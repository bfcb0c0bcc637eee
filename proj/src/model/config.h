#pragma once

#include <string>

#include <json.hpp>

#include "graph/dependence.h"

namespace hnet::model {

enum class GatingMode { scalar, vector };
enum class TreePooling { attention, max };

// Which encoder paths are live. `tokens_only` drops the tree, graph, HACA and
// gate; `no_graph` keeps the tree encoder but feeds its output straight to
// aggregation (no HGT).
enum class Variant { full, no_graph, tokens_only };

struct ModelConfig {
  int d = 64;
  int ffn = 128;
  int enc_layers = 2;
  int dec_layers = 2;
  int tbcnn_layers = 1;
  int hgt_layers = 2;
  int heads = 4;
  int src_vocab = 0;   // node-token BPE vocabulary
  int type_vocab = 0;  // node types
  int tgt_vocab = 0;   // summary BPE vocabulary
  int max_src_len = 512;
  int max_tgt_len = 32;
  GatingMode gating = GatingMode::scalar;
  TreePooling pooling = TreePooling::attention;
  Variant variant = Variant::full;
  graph::EdgeFlags edges;
  bool fc_identity = false;  // test mode: f_c is the identity

  int head_dim() const { return d / heads; }
  void validate() const;
};

const char* gating_name(GatingMode g);
GatingMode parse_gating(const std::string& s);
const char* variant_name(Variant v);
Variant parse_variant(const std::string& s);

nlohmann::json to_json(const ModelConfig& c);
// Missing keys keep the defaults of `base`.
ModelConfig config_from_json(const nlohmann::json& j, ModelConfig base = {});

}  // namespace hnet::model
