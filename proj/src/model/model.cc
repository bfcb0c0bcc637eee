#include "model/model.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "num/ops.h"
#include "syntax/ast.h"

namespace hnet::model {

using namespace num;

namespace {

constexpr int kEdgeTypes = static_cast<int>(graph::kEdgeTypeCount);

std::string str(int i) { return std::to_string(i); }

Tensor column(const std::vector<Real>& v) { return Tensor::from(static_cast<int>(v.size()), 1, v); }

int unit_kind_of(const hierarchy::Hierarchy& h, const hierarchy::CoarseUnit& u) {
  if (!u.is_subtree()) return static_cast<int>(UnitKind::structural);
  switch (h.subtrees.at(static_cast<std::size_t>(u.subtree)).kind.category) {
    case hierarchy::SubtreeCategory::method_header: return static_cast<int>(UnitKind::header);
    case hierarchy::SubtreeCategory::simple_statement: return static_cast<int>(UnitKind::statement);
    case hierarchy::SubtreeCategory::expression: return static_cast<int>(UnitKind::expression);
  }
  return static_cast<int>(UnitKind::structural);
}

}  // namespace

int type_id(const std::string& type) {
  static const std::map<std::string, int> index = [] {
    std::map<std::string, int> m;
    const auto& vocab = syntax::node_type_vocabulary();
    for (std::size_t i = 0; i < vocab.size(); ++i) m.emplace(vocab[i], static_cast<int>(i));
    return m;
  }();
  auto it = index.find(type);
  if (it == index.end()) throw UnknownType(type);
  return it->second;
}

int type_vocab_size() { return static_cast<int>(syntax::node_type_vocabulary().size()); }

void child_coefficients(int rank, int siblings, Real& eta_l, Real& eta_r) {
  eta_r = siblings <= 1 ? Real(0.5) : Real(rank) / Real(siblings - 1);
  eta_l = Real(1) - eta_r;
}

ModelInput build_input(const hcr::HcrBundle& b, const PieceFn& pieces, const graph::EdgeFlags& flags) {
  ModelInput x;
  const auto& seq = b.seq.nodes;
  std::vector<int> pos(b.tree.size(), -1);
  for (std::size_t i = 0; i < seq.size(); ++i) pos[static_cast<std::size_t>(seq[i])] = static_cast<int>(i);

  x.pieces.resize(seq.size());
  x.types.resize(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& n = b.tree.at(seq[i]);
    x.types[i] = type_id(n.type);
    if (n.has_token()) x.pieces[i] = pieces(n.token);
  }
  const auto& al = b.hierarchy.alignment;
  for (auto tp : b.seq.token_positions) {
    x.token_positions.push_back(static_cast<int>(tp));
    x.token_owner.push_back(al.owner.at(tp));
  }

  for (const auto& st : b.hierarchy.subtrees) {
    TreeShape shape;
    std::map<int, int> local;
    for (int id : st.nodes) {
      const auto& n = b.tree.at(id);
      int li = static_cast<int>(shape.positions.size());
      local[id] = li;
      shape.positions.push_back(pos.at(static_cast<std::size_t>(id)));
      Real el = 0, er = 0;
      int parent = -1;
      if (id != st.root) {
        parent = local.at(n.parent);
        const auto& sib = b.tree.at(n.parent).children;
        int rank = static_cast<int>(std::find(sib.begin(), sib.end(), id) - sib.begin());
        child_coefficients(rank, static_cast<int>(sib.size()), el, er);
      }
      shape.parent.push_back(parent);
      shape.eta_l.push_back(el);
      shape.eta_r.push_back(er);
    }
    x.subtrees.push_back(std::move(shape));
  }

  for (const auto& u : al.units) {
    x.unit_subtree.push_back(u.subtree);
    x.unit_position.push_back(u.is_subtree() ? -1 : pos.at(static_cast<std::size_t>(u.ast_node)));
    x.unit_kind.push_back(unit_kind_of(b.hierarchy, u));
  }
  for (const auto& e : b.graph.filtered(flags).edges) x.edges.push_back({e.src, e.dst, static_cast<int>(e.type)});
  return x;
}

// ---------------------------------------------------------------------------
// parameters

Model::Model(ModelConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)) {
  cfg_.validate();
  if (cfg_.src_vocab <= kNoToken || cfg_.tgt_vocab <= kNoToken || cfg_.type_vocab <= 0) {
    throw UsageError("model vocabularies must be set before construction");
  }
  std::mt19937_64 rng(seed);
  const int d = cfg_.d, dk = cfg_.head_dim();
  const double emb_std = 1.0 / std::sqrt(static_cast<double>(d));

  params_.add("emb.token", normal_init(rng, cfg_.src_vocab, d / 2, emb_std));
  params_.add("emb.type", normal_init(rng, cfg_.type_vocab, d / 2, emb_std));
  params_.add("enc.pos", normal_init(rng, cfg_.max_src_len, d, emb_std));
  for (int l = 0; l < cfg_.enc_layers; ++l) {
    const std::string pre = "enc." + str(l);
    add_norm(pre + ".ln1");
    add_mha(rng, pre + ".self");
    add_norm(pre + ".ln2");
    add_linear(rng, pre + ".ffn.1", d, cfg_.ffn);
    add_linear(rng, pre + ".ffn.2", cfg_.ffn, d);
  }
  add_norm("enc.ln");

  for (int l = 0; l < cfg_.tbcnn_layers; ++l) {
    const std::string pre = "tbcnn." + str(l);
    params_.add(pre + ".top", xavier_uniform(rng, d, d));
    params_.add(pre + ".left", xavier_uniform(rng, d, d));
    params_.add(pre + ".right", xavier_uniform(rng, d, d));
    params_.add(pre + ".b", Tensor::zeros(1, d));
  }
  params_.add("tbcnn.alpha", normal_init(rng, d, 1, emb_std));
  add_linear(rng, "ns", d, d);

  for (int l = 0; l < cfg_.hgt_layers; ++l) {
    const std::string pre = "hgt." + str(l);
    for (const char* role : {"k", "q", "m", "a"}) {
      for (int t = 0; t < kUnitKinds; ++t) add_linear(rng, pre + "." + role + "." + str(t), d, d);
    }
    for (int e = 0; e < kEdgeTypes; ++e) {
      for (int h = 0; h < cfg_.heads; ++h) {
        params_.add(pre + ".att." + str(e) + "." + str(h), xavier_uniform(rng, dk, dk));
        params_.add(pre + ".msg." + str(e) + "." + str(h), xavier_uniform(rng, dk, dk));
      }
    }
    params_.add(pre + ".mu", Tensor::filled(kEdgeTypes, cfg_.heads, 1));
    add_linear(rng, pre + ".ffn.1", d, cfg_.ffn);
    add_linear(rng, pre + ".ffn.2", cfg_.ffn, d);
  }
  params_.add("agg.beta", normal_init(rng, d, 1, emb_std));

  add_linear(rng, "haca.ca", 2 * d, d);
  params_.add("haca.k.w", xavier_uniform(rng, d, d));
  add_linear(rng, "haca.v", d, d);
  add_linear(rng, "haca.o", d, d);
  add_linear(rng, "gate", d, cfg_.gating == GatingMode::scalar ? 1 : d);
  add_linear(rng, "gate.fc", d, d);

  params_.add("dec.emb", normal_init(rng, cfg_.tgt_vocab, d, emb_std));
  params_.add("dec.pos", normal_init(rng, cfg_.max_tgt_len, d, emb_std));
  for (int l = 0; l < cfg_.dec_layers; ++l) {
    const std::string pre = "dec." + str(l);
    add_norm(pre + ".ln1");
    add_mha(rng, pre + ".self");
    add_norm(pre + ".ln2");
    add_mha(rng, pre + ".cross_a");
    add_norm(pre + ".ln3");
    add_mha(rng, pre + ".cross_b");
    add_norm(pre + ".ln4");
    add_linear(rng, pre + ".ffn.1", d, cfg_.ffn);
    add_linear(rng, pre + ".ffn.2", cfg_.ffn, d);
  }
  add_norm("dec.ln");
  add_linear(rng, "out", d, cfg_.tgt_vocab);
}

void Model::add_linear(std::mt19937_64& rng, const std::string& prefix, int in, int out) {
  params_.add(prefix + ".w", xavier_uniform(rng, in, out));
  params_.add(prefix + ".b", Tensor::zeros(1, out));
}

void Model::add_norm(const std::string& prefix) {
  params_.add(prefix + ".g", Tensor::filled(1, cfg_.d, 1));
  params_.add(prefix + ".b", Tensor::zeros(1, cfg_.d));
}

void Model::add_mha(std::mt19937_64& rng, const std::string& prefix) {
  // no key bias: it shifts every score of a query row equally, which softmax ignores
  add_linear(rng, prefix + ".q", cfg_.d, cfg_.d);
  params_.add(prefix + ".k.w", xavier_uniform(rng, cfg_.d, cfg_.d));
  add_linear(rng, prefix + ".v", cfg_.d, cfg_.d);
  add_linear(rng, prefix + ".o", cfg_.d, cfg_.d);
}

Tensor& Model::p(const std::string& name) const { return params_.get(name); }

Tensor Model::linear(const Tensor& x, const std::string& prefix) const {
  return add(matmul(x, p(prefix + ".w")), p(prefix + ".b"));
}

Tensor Model::ffn(const std::string& prefix, const Tensor& x) const {
  return linear(gelu(linear(x, prefix + ".1")), prefix + ".2");
}

// Row r goes through the projection of kinds[r].
Tensor Model::typed_linear(const Tensor& h, const std::string& prefix, const std::vector<int>& kinds) const {
  const int m = h.rows();
  Tensor out;
  for (int t = 0; t < kUnitKinds; ++t) {
    std::vector<int> rows;
    for (int i = 0; i < m; ++i) {
      if (kinds[static_cast<std::size_t>(i)] == t) rows.push_back(i);
    }
    if (rows.empty()) continue;
    Tensor part = scatter_add_rows(linear(gather_rows(h, rows), prefix + "." + str(t)), rows, m);
    out = out.defined() ? add(out, part) : part;
  }
  return out;
}

// ---------------------------------------------------------------------------
// attention

Tensor Model::attention(const std::string& name, const Tensor& q, const Tensor& k, const Tensor& v,
                        const std::vector<char>* allowed) const {
  const int dk = cfg_.head_dim();
  const Real inv = Real(1) / std::sqrt(static_cast<Real>(dk));
  std::vector<Tensor> heads;
  for (int h = 0; h < cfg_.heads; ++h) {
    const int a = h * dk, b = a + dk;
    Tensor scores = scale(matmul_nt(slice_cols(q, a, b), slice_cols(k, a, b)), inv);
    Tensor w = softmax(scores, 1, allowed);
    if (trace_) trace_->records.push_back({name + ".h" + str(h), w, {}, 0});
    heads.push_back(matmul(w, slice_cols(v, a, b)));
  }
  return concat_cols(heads);
}

Tensor Model::mha(const std::string& prefix, const Tensor& xq, const Tensor& xkv,
                  const std::vector<char>* allowed) const {
  Tensor q = linear(xq, prefix + ".q");
  Tensor k = matmul(xkv, p(prefix + ".k.w"));
  Tensor v = linear(xkv, prefix + ".v");
  return linear(attention(prefix, q, k, v, allowed), prefix + ".o");
}

// ---------------------------------------------------------------------------
// sequence side

Tensor Model::embed_nodes(const ModelInput& x) const {
  const int k = x.length();
  std::vector<int> ids, rows;
  std::vector<Real> weight;
  bool uniform = true;
  for (int i = 0; i < k; ++i) {
    const auto& pc = x.pieces[static_cast<std::size_t>(i)];
    if (pc.empty()) {
      ids.push_back(kNoToken);
      rows.push_back(i);
      weight.push_back(1);
      continue;
    }
    uniform = uniform && pc.size() == 1;
    for (int id : pc) {
      if (id < 0 || id >= cfg_.src_vocab) throw DataError("source piece id " + str(id) + " outside vocabulary");
      ids.push_back(id);
      rows.push_back(i);
      weight.push_back(Real(1) / Real(pc.size()));
    }
  }
  for (int t : x.types) {
    if (t < 0 || t >= cfg_.type_vocab) throw UnknownType("#" + str(t));
  }
  Tensor tok = gather_rows(p("emb.token"), ids);
  if (!uniform) tok = mul(tok, column(weight));
  tok = scatter_add_rows(tok, rows, k);
  return concat_cols({tok, gather_rows(p("emb.type"), x.types)});
}

Tensor Model::encoder_block(int layer, const Tensor& x, const std::vector<char>* key_mask) const {
  const std::string pre = "enc." + str(layer);
  Tensor h = layer_norm(x, p(pre + ".ln1.g"), p(pre + ".ln1.b"));
  Tensor y = add(x, mha(pre + ".self", h, h, key_mask));
  return add(y, ffn(pre + ".ffn", layer_norm(y, p(pre + ".ln2.g"), p(pre + ".ln2.b"))));
}

Tensor Model::encode_sequence(const Tensor& s, int valid) const {
  const int k = s.rows();
  if (k > cfg_.max_src_len) throw SequenceTooLong(k, cfg_.max_src_len);
  std::vector<char> mask;
  if (valid >= 0 && valid < k) {
    mask.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < valid; ++j) mask[static_cast<std::size_t>(i * k + j)] = 1;
    }
  }
  Tensor x = add(s, slice_rows(p("enc.pos"), 0, k));
  for (int l = 0; l < cfg_.enc_layers; ++l) x = encoder_block(l, x, mask.empty() ? nullptr : &mask);
  return layer_norm(x, p("enc.ln.g"), p("enc.ln.b"));
}

Tensor Model::token_select(const Tensor& h, const ModelInput& x) const { return gather_rows(h, x.token_positions); }

// ---------------------------------------------------------------------------
// subtree side

Tensor Model::tbcnn(const Tensor& s, const ModelInput& x) const {
  // All subtrees share one node table; children point at parent rows.
  std::vector<int> node_pos, seg, child_row, parent_row;
  std::vector<Real> eta_l, eta_r;
  const int nsub = static_cast<int>(x.subtrees.size());
  for (int si = 0; si < nsub; ++si) {
    const auto& st = x.subtrees[static_cast<std::size_t>(si)];
    const int base = static_cast<int>(node_pos.size());
    for (std::size_t j = 0; j < st.positions.size(); ++j) {
      node_pos.push_back(st.positions[j]);
      seg.push_back(si);
      if (st.parent[j] >= 0) {
        child_row.push_back(base + static_cast<int>(j));
        parent_row.push_back(base + st.parent[j]);
        eta_l.push_back(st.eta_l[j]);
        eta_r.push_back(st.eta_r[j]);
      }
    }
  }

  std::vector<Tensor> rows;
  if (nsub > 0) {
    const int n = static_cast<int>(node_pos.size());
    Tensor h = gather_rows(s, node_pos);
    for (int l = 0; l < cfg_.tbcnn_layers; ++l) {
      const std::string pre = "tbcnn." + str(l);
      Tensor y = add(matmul(h, p(pre + ".top")), p(pre + ".b"));
      if (!child_row.empty()) {
        Tensor c = gather_rows(h, child_row);
        Tensor mix = add(mul(matmul(c, p(pre + ".left")), column(eta_l)), mul(matmul(c, p(pre + ".right")), column(eta_r)));
        y = add(y, scatter_add_rows(mix, parent_row, n));
      }
      h = tanh(y);
    }
    if (cfg_.pooling == TreePooling::attention) {
      Tensor w = segment_softmax(matmul(h, p("tbcnn.alpha")), seg, nsub);
      rows.push_back(scatter_add_rows(mul(h, w), seg, nsub));
    } else {
      int off = 0;
      for (const auto& st : x.subtrees) {
        const int len = static_cast<int>(st.positions.size());
        rows.push_back(max_pool(slice_rows(h, off, off + len), 0));
        off += len;
      }
    }
  }

  std::vector<int> ns_pos, order;
  for (int u = 0; u < x.units(); ++u) {
    if (x.unit_subtree[static_cast<std::size_t>(u)] >= 0) {
      order.push_back(x.unit_subtree[static_cast<std::size_t>(u)]);
    } else {
      order.push_back(nsub + static_cast<int>(ns_pos.size()));
      ns_pos.push_back(x.unit_position[static_cast<std::size_t>(u)]);
    }
  }
  if (!ns_pos.empty()) rows.push_back(tanh(linear(gather_rows(s, ns_pos), "ns")));
  return gather_rows(concat_rows(rows), order);
}

// ---------------------------------------------------------------------------
// graph side

Tensor Model::hgt_layer(int layer, const Tensor& h, const ModelInput& x) const {
  if (x.edges.empty()) return h;
  const std::string pre = "hgt." + str(layer);
  const int m = h.rows(), dk = cfg_.head_dim();
  const Real inv = Real(1) / std::sqrt(static_cast<Real>(dk));

  Tensor k = typed_linear(h, pre + ".k", x.unit_kind);
  Tensor q = typed_linear(h, pre + ".q", x.unit_kind);
  Tensor msg = typed_linear(h, pre + ".m", x.unit_kind);

  std::vector<Tensor> score_parts, msg_parts;
  std::vector<int> dst;
  std::vector<Real> has_in(static_cast<std::size_t>(m), 0);
  for (int et = 0; et < kEdgeTypes; ++et) {
    std::vector<int> src_e, dst_e;
    for (const auto& e : x.edges) {
      if (e.type != et) continue;
      src_e.push_back(e.src);
      dst_e.push_back(e.dst);
      has_in[static_cast<std::size_t>(e.dst)] = 1;
    }
    if (src_e.empty()) continue;
    Tensor ks = gather_rows(k, src_e), qt = gather_rows(q, dst_e), ms = gather_rows(msg, src_e);
    std::vector<Tensor> sh, mh;
    for (int hd = 0; hd < cfg_.heads; ++hd) {
      const int a = hd * dk, b = a + dk;
      const std::string tag = str(et) + "." + str(hd);
      Tensor mu = slice_cols(slice_rows(p(pre + ".mu"), et, et + 1), hd, hd + 1);
      Tensor dot = row_sum(mul(matmul(slice_cols(ks, a, b), p(pre + ".att." + tag)), slice_cols(qt, a, b)));
      sh.push_back(mul(scale(dot, inv), mu));
      mh.push_back(matmul(slice_cols(ms, a, b), p(pre + ".msg." + tag)));
    }
    score_parts.push_back(concat_cols(sh));
    msg_parts.push_back(concat_cols(mh));
    dst.insert(dst.end(), dst_e.begin(), dst_e.end());
  }

  Tensor att = segment_softmax(concat_rows(score_parts), dst, m);
  if (trace_) trace_->records.push_back({pre, att, dst, m});
  Tensor messages = concat_rows(msg_parts);
  std::vector<Tensor> weighted;
  for (int hd = 0; hd < cfg_.heads; ++hd) {
    weighted.push_back(mul(slice_cols(messages, hd * dk, (hd + 1) * dk), slice_cols(att, hd, hd + 1)));
  }
  Tensor agg = scatter_add_rows(concat_cols(weighted), dst, m);
  Tensor update = ffn(pre + ".ffn", typed_linear(gelu(agg), pre + ".a", x.unit_kind));
  // nodes without incoming edges keep only the residual path
  return add(h, mul(update, column(has_in)));
}

Tensor Model::hgt(const Tensor& t, const ModelInput& x) const {
  Tensor h = t;
  for (int l = 0; l < cfg_.hgt_layers; ++l) h = hgt_layer(l, h, x);
  return h;
}

Tensor Model::graph_aggregate(const Tensor& n) const {
  Tensor w = softmax(matmul(n, p("agg.beta")), 0);
  if (trace_) trace_->records.push_back({"agg", transpose(w), {}, 0});
  return matmul(transpose(w), n);
}

Tensor Model::haca(const Tensor& hp, const Tensor& t_owner, const Tensor& n, const Tensor& g) const {
  Tensor mem = concat_rows({n, g});
  Tensor q = linear(concat_cols({hp, t_owner}), "haca.ca");
  Tensor out = attention("haca", q, matmul(mem, p("haca.k.w")), linear(mem, "haca.v"), nullptr);
  return linear(out, "haca.o");
}

Tensor Model::gate_lambda(const Tensor& g) const { return sigmoid(linear(g, "gate")); }

Tensor Model::gate(const Tensor& lambda, const Tensor& c, const Tensor& hp) const {
  Tensor fc = cfg_.fc_identity ? c : tanh(linear(c, "gate.fc"));
  return lerp(lambda, fc, hp);
}

// ---------------------------------------------------------------------------
// decoder

Tensor Model::decoder_block(int layer, const Tensor& y, const Tensor& memory_a, const Tensor& memory_b) const {
  const std::string pre = "dec." + str(layer);
  const int t = y.rows();
  std::vector<char> causal(static_cast<std::size_t>(t) * static_cast<std::size_t>(t), 0);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j <= i; ++j) causal[static_cast<std::size_t>(i * t + j)] = 1;
  }
  auto norm = [&](const Tensor& v, const char* ln) {
    return layer_norm(v, p(pre + "." + ln + ".g"), p(pre + "." + ln + ".b"));
  };
  Tensor h = norm(y, "ln1");
  Tensor out = add(y, mha(pre + ".self", h, h, &causal));
  if (memory_a.defined()) out = add(out, mha(pre + ".cross_a", norm(out, "ln2"), memory_a, nullptr));
  out = add(out, mha(pre + ".cross_b", norm(out, "ln3"), memory_b, nullptr));
  return add(out, ffn(pre + ".ffn", norm(out, "ln4")));
}

Tensor Model::decode(const std::vector<int>& prefix, const Tensor& memory_a, const Tensor& memory_b) const {
  const int t = static_cast<int>(prefix.size());
  if (t > cfg_.max_tgt_len) throw PrefixTooLong(t, cfg_.max_tgt_len);
  for (int id : prefix) {
    if (id < 0 || id >= cfg_.tgt_vocab) throw DataError("target id " + str(id) + " outside vocabulary");
  }
  Tensor y = add(gather_rows(p("dec.emb"), prefix), slice_rows(p("dec.pos"), 0, t));
  for (int l = 0; l < cfg_.dec_layers; ++l) y = decoder_block(l, y, memory_a, memory_b);
  return linear(layer_norm(y, p("dec.ln.g"), p("dec.ln.b")), "out");
}

// ---------------------------------------------------------------------------
// whole model

Encoded Model::encode(const ModelInput& x) const {
  if (x.token_positions.empty()) throw DataError("method has no token-bearing nodes");
  Tensor s = embed_nodes(x);
  Tensor hp = token_select(encode_sequence(s), x);
  Encoded out;
  if (cfg_.variant == Variant::tokens_only) {
    out.memory_b = hp;
    return out;
  }
  Tensor t = tbcnn(s, x);
  Tensor n = cfg_.variant == Variant::no_graph ? t : hgt(t, x);
  Tensor g = graph_aggregate(n);
  Tensor c = haca(hp, gather_rows(t, x.token_owner), n, g);
  out.lambda = gate_lambda(g);
  out.memory_b = gate(out.lambda, c, hp);
  out.memory_a = concat_rows({n, g});
  return out;
}

Tensor Model::loss(const ModelInput& x, const std::vector<int>& target) const {
  std::vector<int> y(target.begin(), target.begin() + std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(target.size()), cfg_.max_tgt_len - 1));
  std::vector<int> prefix{kBos};
  prefix.insert(prefix.end(), y.begin(), y.end());
  y.push_back(kEos);
  Encoded enc = encode(x);
  return cross_entropy(decode(prefix, enc.memory_a, enc.memory_b), y);
}

std::vector<int> Model::greedy(const ModelInput& x, int max_len) const {
  NoGradGuard guard;
  if (max_len < 0 || max_len > cfg_.max_tgt_len - 1) max_len = cfg_.max_tgt_len - 1;
  Encoded enc = encode(x);
  std::vector<int> prefix{kBos};
  std::vector<int> out;
  for (int step = 0; step < max_len; ++step) {
    Tensor logits = decode(prefix, enc.memory_a, enc.memory_b);
    const int last = logits.rows() - 1;
    int best = 0;
    for (int v = 1; v < logits.cols(); ++v) {
      if (logits.at(last, v) > logits.at(last, best)) best = v;
    }
    if (best == kEos) break;
    out.push_back(best);
    prefix.push_back(best);
  }
  return out;
}

std::vector<Real> Model::gate_values(const ModelInput& x) const {
  NoGradGuard guard;
  Encoded enc = encode(x);
  if (!enc.lambda.defined()) return {};
  return enc.lambda.values();
}

}  // namespace hnet::model
