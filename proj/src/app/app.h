#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus/bpe.h"
#include "corpus/dataset.h"
#include "eval/metrics.h"
#include "hcr/hcr.h"
#include "model/model.h"

namespace hnet::app {

// Everything a run needs, resolved before it starts and saved as config.json.
struct RunConfig {
  std::string data;                 // JSONL: raw {code, summary, split} or extracted HCR records
  std::string valid_split = "valid";  // falls back to train when the corpus has none
  std::string out_dir;
  model::ModelConfig model;
  double lr = 1e-3;
  int warmup_steps = 0;
  bool inverse_sqrt = false;
  double weight_decay = 0.01;
  double clip = 1.0;
  int epochs = 100;
  int batch_size = 8;
  int patience = 20;
  int eval_every = 1;
  double stop_at_bleu = 0;  // > 0: stop once validation BLEU reaches it
  int max_steps = 0;        // > 0: stop after this many optimizer steps
  int src_vocab_size = 800;
  int tgt_vocab_size = 400;
  int max_summary_words = 0;
  std::uint64_t seed = 1;
  int threads = 1;  // evaluation only; training is single-threaded
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_run_config(const std::string& path);

// One accepted method.
struct Record {
  hcr::HcrBundle bundle;
  std::string summary;  // preprocessed
  corpus::Split split = corpus::Split::train;
};

struct Skip {
  std::size_t index = 0;
  std::string reason;
};

struct LoadResult {
  std::vector<Record> records;
  std::vector<Skip> skipped;
  std::size_t total = 0;
};

// Reads either format; unparseable methods are skipped with a reason.
LoadResult load_records(const std::string& path, const graph::EdgeFlags& flags, int max_summary_words = 0);

nlohmann::json record_to_json(const Record& r);

struct ExtractResult {
  std::size_t accepted = 0;
  std::vector<Skip> skipped;
};

// Raw corpus -> HCR JSONL plus a JSON manifest of counts and skip reasons.
ExtractResult extract(const std::string& input, const std::string& output, const std::string& manifest,
                      const graph::EdgeFlags& flags, int max_summary_words = 0);

class MissingCheckpoint : public UsageError {
 public:
  explicit MissingCheckpoint(const std::string& path) : UsageError("missing checkpoint " + path) {}
};

// A trained model with its tokenizers.
struct Run {
  RunConfig config;
  corpus::BpeTokenizer src;
  corpus::BpeTokenizer tgt;
  std::unique_ptr<model::Model> model;

  model::ModelInput input(const hcr::HcrBundle& b) const;
  std::vector<int> target(const std::string& summary) const;
  std::string summarize(const hcr::HcrBundle& b) const;
};

Run load_run(const std::string& dir);

struct EpochLog {
  int epoch = 0;
  double lr = 0;
  double loss = 0;
  double valid_bleu = -1;  // -1 when not evaluated
};

struct TrainResult {
  std::vector<EpochLog> epochs;
  std::size_t steps = 0;
  double best_bleu = 0;
  int best_epoch = -1;
  std::size_t train_examples = 0;
  std::size_t skipped = 0;
};

using Logger = std::function<void(const std::string&)>;

// Trains into cfg.out_dir: config.json, src/tgt tokenizers, model.ckpt (best
// validation BLEU), train.log.
TrainResult train(const RunConfig& cfg, const Logger& log = {});

// Greedy summaries for `split` of `data` (the run's own corpus when empty).
eval::EvalReport evaluate(const Run& run, const std::string& data, const std::string& split, int threads = 1);
eval::EvalReport evaluate(const Run& run, const std::vector<Record>& records, int threads = 1);

inline constexpr int kAblationRows = 10;
// Rows: 1 tokens only, 2 tokens+subtrees, 3..10 edge subsets
// ast / ast,cd / ast,df / ast,cd,df / ast,ns / ast,ns,cd / ast,ns,df / all.
RunConfig ablation_config(const RunConfig& base, int row);
std::string ablation_label(int row);

struct AblationResult {
  int row = 0;
  TrainResult train;
  eval::EvalReport report;
};
AblationResult ablate(const RunConfig& base, int row, const Logger& log = {});

// Inspection dumps for one method.
std::string inspect_ast(const std::string& code);
std::string inspect_subtrees(const std::string& code, bool dot);
std::string inspect_graph(const std::string& code, const graph::EdgeFlags& flags, bool dot);
std::vector<double> inspect_gates(const Run& run, const std::string& code);

}  // namespace hnet::app
