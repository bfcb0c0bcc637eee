#include "hierarchynet/hierarchynet.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "app/app.h"
#include "corpus/preprocess.h"

struct hnet_hcr {
  hnet::hcr::HcrBundle bundle;
};

struct hnet_run {
  hnet::app::Run run;
};

namespace {

using nlohmann::json;

thread_local std::string g_error;

hnet_status status_of(hnet::ErrorKind k) {
  switch (k) {
    case hnet::ErrorKind::usage: return HNET_E_USAGE;
    case hnet::ErrorKind::data: return HNET_E_DATA;
    case hnet::ErrorKind::numeric: return HNET_E_NUMERIC;
    case hnet::ErrorKind::io: return HNET_E_IO;
    case hnet::ErrorKind::internal: return HNET_E_INTERNAL;
  }
  return HNET_E_INTERNAL;
}

// Runs `f`, turning exceptions into status codes and the thread's last error.
template <typename F>
hnet_status guarded(F&& f) {
  g_error.clear();
  try {
    f();
    return HNET_OK;
  } catch (const hnet::Error& e) {
    g_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    g_error = std::string("json: ") + e.what();
    return HNET_E_USAGE;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return HNET_E_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return HNET_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw hnet::UsageError(std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hnet::graph::EdgeFlags flags_of(const char* edges) {
  return edges && *edges ? hnet::graph::EdgeFlags::parse(edges) : hnet::graph::EdgeFlags{};
}

hnet::app::RunConfig config_of(const char* text) {
  need(text, "config_json");
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw hnet::UsageError("config is not a JSON object");
  return hnet::app::run_config_from_json(j);
}

json train_json(const hnet::app::TrainResult& r) {
  json epochs = json::array();
  for (const auto& e : r.epochs) {
    json row{{"epoch", e.epoch}, {"lr", e.lr}, {"loss", e.loss}};
    if (e.valid_bleu >= 0) row["valid_bleu"] = e.valid_bleu;
    epochs.push_back(row);
  }
  return {{"epochs", epochs},
          {"steps", r.steps},
          {"best_bleu", r.best_bleu},
          {"best_epoch", r.best_epoch},
          {"train_examples", r.train_examples},
          {"skipped", r.skipped}};
}

hnet::app::Logger logger(hnet_log_fn log, void* user) {
  if (!log) return {};
  return [log, user](const std::string& s) { log(s.c_str(), user); };
}

}  // namespace

extern "C" {

const char* hnet_last_error(void) { return g_error.c_str(); }

const char* hnet_version(void) { return "0.1.0"; }

void hnet_string_free(char* s) { std::free(s); }

hnet_status hnet_hcr_build(const char* code, const char* edges, hnet_hcr** out) {
  return guarded([&] {
    need(code, "code");
    need(out, "out");
    *out = nullptr;
    auto h = std::make_unique<hnet_hcr>();
    h->bundle = hnet::hcr::build_hcr(hnet::corpus::preprocess_code(code), flags_of(edges));
    *out = h.release();
  });
}

void hnet_hcr_free(hnet_hcr* h) { delete h; }

hnet_status hnet_hcr_json(const hnet_hcr* h, const char* section, char** out) {
  return guarded([&] {
    need(h, "hcr");
    need(out, "out");
    const std::string s = section ? section : "all";
    json j;
    if (s == "all") {
      j = hnet::hcr::to_json(h->bundle);
    } else if (s == "ast") {
      j = hnet::hcr::ast_to_json(h->bundle.tree);
    } else if (s == "subtrees") {
      j = hnet::hcr::subtrees_to_json(h->bundle);
    } else if (s == "graph") {
      j = hnet::hcr::graph_to_json(h->bundle.graph);
    } else {
      throw hnet::UsageError("unknown section '" + s + "'");
    }
    *out = dup(j.dump(2));
  });
}

hnet_status hnet_hcr_dot(const hnet_hcr* h, const char* layer, char** out) {
  return guarded([&] {
    need(h, "hcr");
    need(out, "out");
    const std::string s = layer ? layer : "graph";
    if (s == "graph") {
      *out = dup(hnet::hcr::graph_to_dot(h->bundle));
    } else if (s == "subtrees") {
      *out = dup(hnet::hcr::reduced_tree_to_dot(h->bundle));
    } else {
      throw hnet::UsageError("no DOT form for layer '" + s + "'");
    }
  });
}

hnet_status hnet_hcr_edge_count(const hnet_hcr* h, const char* type, size_t* out) {
  return guarded([&] {
    need(h, "hcr");
    need(type, "type");
    need(out, "out");
    *out = h->bundle.graph.count(hnet::graph::parse_edge_type(type));
  });
}

hnet_status hnet_hcr_sizes(const hnet_hcr* h, size_t* sequence, size_t* subtrees, size_t* graph_nodes) {
  return guarded([&] {
    need(h, "hcr");
    if (sequence) *sequence = h->bundle.seq.nodes.size();
    if (subtrees) *subtrees = h->bundle.hierarchy.subtrees.size();
    if (graph_nodes) *graph_nodes = h->bundle.graph.nodes.size();
  });
}

hnet_status hnet_extract(const char* input, const char* output, const char* manifest, const char* edges,
                         int max_summary_words, size_t* accepted, size_t* skipped) {
  return guarded([&] {
    need(input, "input");
    need(output, "output");
    auto r = hnet::app::extract(input, output, manifest ? manifest : "", flags_of(edges), max_summary_words);
    if (accepted) *accepted = r.accepted;
    if (skipped) *skipped = r.skipped.size();
  });
}

hnet_status hnet_train(const char* config_json, hnet_log_fn log, void* user, char** result_json) {
  return guarded([&] {
    auto r = hnet::app::train(config_of(config_json), logger(log, user));
    if (result_json) *result_json = dup(train_json(r).dump(2));
  });
}

hnet_status hnet_ablation_config(const char* config_json, int row, char** out) {
  return guarded([&] {
    need(out, "out");
    auto c = hnet::app::ablation_config(config_of(config_json), row);
    *out = dup(hnet::app::to_json(c).dump(2));
  });
}

hnet_status hnet_ablate(const char* config_json, int row, hnet_log_fn log, void* user, char** report_json) {
  return guarded([&] {
    auto r = hnet::app::ablate(config_of(config_json), row, logger(log, user));
    if (report_json) {
      json j{{"row", r.row},
             {"label", hnet::app::ablation_label(r.row)},
             {"train", train_json(r.train)},
             {"report", hnet::eval::to_json(r.report)}};
      *report_json = dup(j.dump(2));
    }
  });
}

hnet_status hnet_run_open(const char* dir, hnet_run** out) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    *out = nullptr;
    auto r = std::make_unique<hnet_run>();
    r->run = hnet::app::load_run(dir);
    *out = r.release();
  });
}

void hnet_run_free(hnet_run* r) { delete r; }

hnet_status hnet_run_summarize(const hnet_run* r, const char* code, char** out) {
  return guarded([&] {
    need(r, "run");
    need(code, "code");
    need(out, "out");
    auto b = hnet::hcr::build_hcr(hnet::corpus::preprocess_code(code), r->run.config.model.edges);
    *out = dup(r->run.summarize(b));
  });
}

hnet_status hnet_run_gates(const hnet_run* r, const char* code, double* values, size_t cap, size_t* count) {
  return guarded([&] {
    need(r, "run");
    need(code, "code");
    if (r->run.config.model.variant == hnet::model::Variant::tokens_only) {
      throw hnet::UsageError("the tokens-only variant has no gate");
    }
    auto v = hnet::app::inspect_gates(r->run, code);
    for (size_t i = 0; values && i < v.size() && i < cap; ++i) values[i] = v[i];
    if (count) *count = v.size();
  });
}

hnet_status hnet_run_evaluate(const hnet_run* r, const char* data, const char* split, int threads, char** report_json,
                              char** table) {
  return guarded([&] {
    need(r, "run");
    auto rep = hnet::app::evaluate(r->run, data ? data : "", split ? split : "test", threads < 1 ? 1 : threads);
    if (report_json) *report_json = dup(hnet::eval::to_json(rep).dump(2));
    if (table) *table = dup(hnet::eval::to_table(rep));
  });
}

hnet_status hnet_score_texts(const char* refs_json, const char* hyps_json, char** report_json) {
  return guarded([&] {
    need(refs_json, "refs_json");
    need(hyps_json, "hyps_json");
    need(report_json, "report_json");
    auto refs = json::parse(refs_json).get<std::vector<std::string>>();
    auto hyps = json::parse(hyps_json).get<std::vector<std::string>>();
    *report_json = dup(hnet::eval::to_json(hnet::eval::evaluate(refs, hyps)).dump(2));
  });
}

}  // extern "C"
