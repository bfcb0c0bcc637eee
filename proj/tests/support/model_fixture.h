#pragma once

#include <string>
#include <vector>

#include "hcr/hcr.h"
#include "model/model.h"

namespace hnet::testing {

// Stable toy piece ids so tests don't need a trained tokenizer.
inline std::vector<int> toy_pieces(const std::string& token, int vocab) {
  unsigned h = 7;
  for (unsigned char c : token) h = h * 31 + c;
  return {model::kNoToken + 1 + static_cast<int>(h % static_cast<unsigned>(vocab - model::kNoToken - 1))};
}

inline model::ModelConfig tiny_config(int d = 8, int heads = 2) {
  model::ModelConfig c;
  c.d = d;
  c.ffn = 2 * d;
  c.heads = heads;
  c.enc_layers = c.dec_layers = c.tbcnn_layers = c.hgt_layers = 1;
  c.src_vocab = 40;
  c.tgt_vocab = 20;
  c.type_vocab = model::type_vocab_size();
  c.max_src_len = 256;
  c.max_tgt_len = 12;
  return c;
}

inline model::ModelInput input_for(const std::string& code, const model::ModelConfig& c) {
  auto b = hcr::build_hcr(code, c.edges);
  return model::build_input(b, [&](const std::string& t) { return toy_pieces(t, c.src_vocab); }, c.edges);
}

}  // namespace hnet::testing
