#include "model/config.h"

namespace hnet::model {

void ModelConfig::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw UsageError("invalid model config: " + what);
  };
  need(d > 0 && d % 2 == 0, "d must be positive and even");
  need(heads > 0 && d % heads == 0, "d must be divisible by heads");
  need(ffn > 0, "ffn must be positive");
  need(enc_layers >= 1 && dec_layers >= 1, "encoder and decoder need at least one layer");
  need(tbcnn_layers >= 1 && hgt_layers >= 1, "tbcnn_layers and hgt_layers must be >= 1");
  need(max_src_len > 0 && max_tgt_len > 1, "max lengths must be positive");
  need(variant != Variant::full || edges.use_ast, "the graph layer needs AST edges");
}

const char* gating_name(GatingMode g) { return g == GatingMode::scalar ? "scalar" : "vector"; }

GatingMode parse_gating(const std::string& s) {
  if (s == "scalar") return GatingMode::scalar;
  if (s == "vector") return GatingMode::vector;
  throw UsageError("gating must be scalar or vector, got '" + s + "'");
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::full: return "full";
    case Variant::no_graph: return "no_graph";
    case Variant::tokens_only: return "tokens_only";
  }
  return "full";
}

Variant parse_variant(const std::string& s) {
  if (s == "full") return Variant::full;
  if (s == "no_graph") return Variant::no_graph;
  if (s == "tokens_only") return Variant::tokens_only;
  throw UsageError("unknown model variant '" + s + "'");
}

nlohmann::json to_json(const ModelConfig& c) {
  return {{"d", c.d},
          {"ffn", c.ffn},
          {"enc_layers", c.enc_layers},
          {"dec_layers", c.dec_layers},
          {"tbcnn_layers", c.tbcnn_layers},
          {"hgt_layers", c.hgt_layers},
          {"heads", c.heads},
          {"src_vocab", c.src_vocab},
          {"type_vocab", c.type_vocab},
          {"tgt_vocab", c.tgt_vocab},
          {"max_src_len", c.max_src_len},
          {"max_tgt_len", c.max_tgt_len},
          {"gating", gating_name(c.gating)},
          {"pooling", c.pooling == TreePooling::attention ? "attention" : "max"},
          {"variant", variant_name(c.variant)},
          {"edges", c.edges.to_string()},
          {"reverse_edges", c.edges.reverse},
          {"fc_identity", c.fc_identity}};
}

ModelConfig config_from_json(const nlohmann::json& j, ModelConfig c) {
  auto get_int = [&](const char* key, int& field) {
    if (j.contains(key)) field = j.at(key).get<int>();
  };
  get_int("d", c.d);
  get_int("ffn", c.ffn);
  get_int("enc_layers", c.enc_layers);
  get_int("dec_layers", c.dec_layers);
  get_int("tbcnn_layers", c.tbcnn_layers);
  get_int("hgt_layers", c.hgt_layers);
  get_int("heads", c.heads);
  get_int("src_vocab", c.src_vocab);
  get_int("type_vocab", c.type_vocab);
  get_int("tgt_vocab", c.tgt_vocab);
  get_int("max_src_len", c.max_src_len);
  get_int("max_tgt_len", c.max_tgt_len);
  if (j.contains("gating")) c.gating = parse_gating(j.at("gating").get<std::string>());
  if (j.contains("pooling")) {
    auto p = j.at("pooling").get<std::string>();
    if (p != "attention" && p != "max") throw UsageError("pooling must be attention or max");
    c.pooling = p == "max" ? TreePooling::max : TreePooling::attention;
  }
  if (j.contains("variant")) c.variant = parse_variant(j.at("variant").get<std::string>());
  bool reverse = j.value("reverse_edges", c.edges.reverse);
  if (j.contains("edges")) c.edges = graph::EdgeFlags::parse(j.at("edges").get<std::string>(), reverse);
  c.edges.reverse = reverse;
  if (j.contains("fc_identity")) c.fc_identity = j.at("fc_identity").get<bool>();
  return c;
}

}  // namespace hnet::model
