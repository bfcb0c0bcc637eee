#include "app/app.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "corpus/preprocess.h"
#include "num/checkpoint.h"
#include "num/ops.h"

namespace hnet::app {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// config

json to_json(const RunConfig& c) {
  return {{"data", c.data},
          {"valid_split", c.valid_split},
          {"out_dir", c.out_dir},
          {"model", model::to_json(c.model)},
          {"lr", c.lr},
          {"warmup_steps", c.warmup_steps},
          {"inverse_sqrt", c.inverse_sqrt},
          {"weight_decay", c.weight_decay},
          {"clip", c.clip},
          {"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"patience", c.patience},
          {"eval_every", c.eval_every},
          {"stop_at_bleu", c.stop_at_bleu},
          {"max_steps", c.max_steps},
          {"src_vocab_size", c.src_vocab_size},
          {"tgt_vocab_size", c.tgt_vocab_size},
          {"max_summary_words", c.max_summary_words},
          {"seed", c.seed},
          {"threads", c.threads}};
}

RunConfig run_config_from_json(const json& j, RunConfig c) {
  try {
    c.data = j.value("data", c.data);
    c.valid_split = j.value("valid_split", c.valid_split);
    c.out_dir = j.value("out_dir", c.out_dir);
    if (j.contains("model")) c.model = model::config_from_json(j.at("model"), c.model);
    c.lr = j.value("lr", c.lr);
    c.warmup_steps = j.value("warmup_steps", c.warmup_steps);
    c.inverse_sqrt = j.value("inverse_sqrt", c.inverse_sqrt);
    c.weight_decay = j.value("weight_decay", c.weight_decay);
    c.clip = j.value("clip", c.clip);
    c.epochs = j.value("epochs", c.epochs);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.patience = j.value("patience", c.patience);
    c.eval_every = j.value("eval_every", c.eval_every);
    c.stop_at_bleu = j.value("stop_at_bleu", c.stop_at_bleu);
    c.max_steps = j.value("max_steps", c.max_steps);
    c.src_vocab_size = j.value("src_vocab_size", c.src_vocab_size);
    c.tgt_vocab_size = j.value("tgt_vocab_size", c.tgt_vocab_size);
    c.max_summary_words = j.value("max_summary_words", c.max_summary_words);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad run config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw UsageError("config " + path + " is not valid JSON");
  return run_config_from_json(j);
}

namespace {

void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw UsageError("invalid run config: " + what);
  };
  need(!c.data.empty(), "data path is required");
  need(!c.out_dir.empty(), "out_dir is required");
  need(c.epochs >= 1 && c.batch_size >= 1 && c.eval_every >= 1, "epochs, batch_size and eval_every must be >= 1");
  need(c.lr > 0 && c.clip >= 0 && c.weight_decay >= 0, "lr must be positive, clip and weight_decay non-negative");
  need(c.patience >= 0 && c.warmup_steps >= 0 && c.max_steps >= 0, "patience, warmup_steps, max_steps must be >= 0");
  need(c.threads >= 1, "threads must be >= 1");
  corpus::parse_split(c.valid_split);
  auto m = c.model;
  m.validate();
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << s;
}

}  // namespace

// ---------------------------------------------------------------------------
// data

json record_to_json(const Record& r) {
  return {{"summary", r.summary}, {"split", corpus::split_name(r.split)}, {"hcr", hcr::to_json(r.bundle)}};
}

LoadResult load_records(const std::string& path, const graph::EdgeFlags& flags, int max_summary_words) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  LoadResult out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::size_t index = out.total++;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw DataError(path + ":" + std::to_string(lineno) + ": not a JSON object");
    try {
      Record r;
      r.split = corpus::parse_split(j.value("split", std::string("train")));
      if (j.contains("hcr")) {
        r.bundle = hcr::from_json(j.at("hcr"));
        r.summary = j.at("summary").get<std::string>();
      } else {
        r.summary = corpus::preprocess_summary(j.at("summary").get<std::string>(), max_summary_words);
        r.bundle = hcr::build_hcr(corpus::preprocess_code(j.at("code").get<std::string>()), flags);
      }
      out.records.push_back(std::move(r));
    } catch (const DataError& e) {
      out.skipped.push_back({index, e.what()});
    } catch (const json::exception& e) {
      out.skipped.push_back({index, std::string("malformed record: ") + e.what()});
    }
  }
  return out;
}

ExtractResult extract(const std::string& input, const std::string& output, const std::string& manifest,
                      const graph::EdgeFlags& flags, int max_summary_words) {
  auto loaded = load_records(input, flags, max_summary_words);
  std::ofstream out(output);
  if (!out) throw IoError("cannot write " + output);
  for (const auto& r : loaded.records) out << record_to_json(r).dump() << '\n';
  json skips = json::array();
  std::map<std::string, int> by_reason;
  for (const auto& s : loaded.skipped) {
    skips.push_back({{"index", s.index}, {"reason", s.reason}});
    by_reason[s.reason.substr(0, s.reason.find(':'))]++;
  }
  json m{{"input", input},
         {"output", output},
         {"edges", flags.to_string()},
         {"total", loaded.total},
         {"accepted", loaded.records.size()},
         {"skipped", loaded.skipped.size()},
         {"skip_reasons", by_reason},
         {"skips", skips}};
  if (!manifest.empty()) write_text(manifest, m.dump(2) + "\n");
  return {loaded.records.size(), loaded.skipped};
}

// ---------------------------------------------------------------------------
// runs

model::ModelInput Run::input(const hcr::HcrBundle& b) const {
  return model::build_input(
      b,
      [this](const std::string& token) -> std::vector<int> {
        if (token == corpus::kStrToken) return {model::kStr};
        auto ids = src.encode(token);
        if (ids.empty()) ids.push_back(model::kUnk);
        return ids;
      },
      config.model.edges);
}

std::vector<int> Run::target(const std::string& summary) const { return tgt.encode(summary); }

std::string Run::summarize(const hcr::HcrBundle& b) const { return tgt.decode(model->greedy(input(b))); }

Run load_run(const std::string& dir) {
  Run run;
  run.config = load_run_config((fs::path(dir) / "config.json").string());
  run.src = corpus::BpeTokenizer::load(dir, "src");
  run.tgt = corpus::BpeTokenizer::load(dir, "tgt");
  run.model = std::make_unique<model::Model>(run.config.model, run.config.seed);
  const auto ckpt = fs::path(dir) / "model.ckpt";
  if (!fs::exists(ckpt)) throw MissingCheckpoint(ckpt.string());
  num::load_checkpoint(run.model->params(), ckpt.string());
  return run;
}

namespace {

std::vector<const Record*> of_split(const std::vector<Record>& all, corpus::Split s) {
  std::vector<const Record*> out;
  for (const auto& r : all) {
    if (r.split == s) out.push_back(&r);
  }
  return out;
}

struct Prepared {
  model::ModelInput x;
  std::vector<int> target;
  std::string summary;
};

// Greedy decoding spread over worker threads; results land by index.
std::vector<std::string> decode_all(const Run& run, const std::vector<model::ModelInput>& xs, int threads) {
  std::vector<std::string> out(xs.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < xs.size(); i += stride) out[i] = run.tgt.decode(run.model->greedy(xs[i]));
  };
  const std::size_t t = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(threads), xs.size()));
  if (t == 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < t; ++k) pool.emplace_back(work, k, t);
  for (auto& th : pool) th.join();
  return out;
}

double bleu_of(const Run& run, const std::vector<Prepared>& data, int threads) {
  std::vector<model::ModelInput> xs;
  std::vector<std::string> refs;
  for (const auto& p : data) {
    xs.push_back(p.x);
    refs.push_back(p.summary);
  }
  auto hyps = decode_all(run, xs, threads);
  return eval::evaluate(refs, hyps).bleu4;
}

}  // namespace

eval::EvalReport evaluate(const Run& run, const std::vector<Record>& records, int threads) {
  std::vector<model::ModelInput> xs;
  std::vector<std::string> refs;
  for (const auto& r : records) {
    xs.push_back(run.input(r.bundle));
    refs.push_back(r.summary);
  }
  return eval::evaluate(refs, decode_all(run, xs, threads));
}

eval::EvalReport evaluate(const Run& run, const std::string& data, const std::string& split, int threads) {
  auto loaded = load_records(data.empty() ? run.config.data : data, run.config.model.edges, run.config.max_summary_words);
  std::vector<Record> picked;
  for (auto& r : loaded.records) {
    if (split == "all" || r.split == corpus::parse_split(split)) picked.push_back(std::move(r));
  }
  return evaluate(run, picked, threads);
}

TrainResult train(const RunConfig& cfg_in, const Logger& log) {
  validate(cfg_in);
  RunConfig cfg = cfg_in;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  std::ofstream logf(dir / "train.log");
  auto say = [&](const std::string& s) {
    logf << s << '\n';
    logf.flush();
    if (log) log(s);
  };

  auto loaded = load_records(cfg.data, cfg.model.edges, cfg.max_summary_words);
  auto train_recs = of_split(loaded.records, corpus::Split::train);
  auto valid_recs = of_split(loaded.records, corpus::parse_split(cfg.valid_split));
  if (train_recs.empty()) throw DataError("no usable training examples in " + cfg.data);
  if (valid_recs.empty()) valid_recs = train_recs;

  std::vector<std::string> src_text, tgt_text;
  for (const Record* r : train_recs) {
    for (auto& t : syntax::sequence_tokens(r->bundle.tree, r->bundle.seq)) {
      if (t != corpus::kStrToken) src_text.push_back(t);
    }
    tgt_text.push_back(r->summary);
  }

  Run run;
  run.src = corpus::BpeTokenizer::train(src_text, cfg.src_vocab_size);
  run.tgt = corpus::BpeTokenizer::train(tgt_text, cfg.tgt_vocab_size);
  cfg.model.src_vocab = run.src.size();
  cfg.model.tgt_vocab = run.tgt.size();
  cfg.model.type_vocab = model::type_vocab_size();
  run.config = cfg;
  run.src.save(dir.string(), "src");
  run.tgt.save(dir.string(), "tgt");
  write_text(dir / "config.json", to_json(cfg).dump(2) + "\n");
  run.model = std::make_unique<model::Model>(cfg.model, cfg.seed);
  auto& params = run.model->params();

  TrainResult res;
  res.skipped = loaded.skipped.size();
  auto prepare = [&](const std::vector<const Record*>& recs) {
    std::vector<Prepared> out;
    for (const Record* r : recs) {
      Prepared p{run.input(r->bundle), run.target(r->summary), r->summary};
      if (p.x.length() > cfg.model.max_src_len) {
        ++res.skipped;
        continue;
      }
      out.push_back(std::move(p));
    }
    return out;
  };
  const auto train_set = prepare(train_recs);
  const auto valid_set = prepare(valid_recs);
  if (train_set.empty()) throw DataError("every training example exceeds max_src_len");
  res.train_examples = train_set.size();
  say("examples train " + std::to_string(train_set.size()) + " valid " + std::to_string(valid_set.size()) +
      " skipped " + std::to_string(res.skipped) + " params " + std::to_string(params.scalar_count()));

  num::AdamW opt({cfg.lr, 0.9, 0.999, 1e-8, cfg.weight_decay});
  corpus::EarlyStopping stopper(cfg.patience);
  const std::vector<corpus::Split> splits(train_set.size(), corpus::Split::train);
  const auto ckpt = (dir / "model.ckpt").string();
  bool saved = false;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double loss_sum = 0, lr = 0;
    bool out_of_steps = false;
    for (const auto& batch : corpus::make_batches(splits, corpus::Split::train, static_cast<std::size_t>(cfg.batch_size),
                                                  cfg.seed + static_cast<std::uint64_t>(epoch), true)) {
      params.zero_grad();
      const double inv = 1.0 / static_cast<double>(batch.indices.size());
      for (std::size_t i : batch.indices) {
        num::Tensor l = run.model->loss(train_set[i].x, train_set[i].target);
        const double v = l.item();
        if (!std::isfinite(v)) {
          throw NumericError("non-finite loss at epoch " + std::to_string(epoch + 1) + ", step " +
                             std::to_string(res.steps + 1) + ", example '" + train_set[i].summary + "'");
        }
        num::scale(l, static_cast<num::Real>(inv)).backward();
        loss_sum += v;
      }
      if (cfg.clip > 0) num::clip_grad_norm(params, cfg.clip);
      lr = num::linear_warmup_lr(static_cast<std::int64_t>(res.steps) + 1, cfg.warmup_steps, cfg.lr, cfg.inverse_sqrt);
      opt.step(params, lr);
      ++res.steps;
      if (cfg.max_steps > 0 && static_cast<int>(res.steps) >= cfg.max_steps) {
        out_of_steps = true;
        break;
      }
    }

    EpochLog e{epoch + 1, lr, loss_sum / static_cast<double>(train_set.size()), -1};
    const bool last = out_of_steps || epoch + 1 == cfg.epochs;
    bool stop = out_of_steps;
    if ((epoch + 1) % cfg.eval_every == 0 || last) {
      e.valid_bleu = bleu_of(run, valid_set, cfg.threads);
      stop = stopper.update(e.valid_bleu) || stop;
      if (stopper.improved()) {
        num::save_checkpoint(params, ckpt);
        saved = true;
        res.best_bleu = e.valid_bleu;
        res.best_epoch = epoch + 1;
      }
      if (cfg.stop_at_bleu > 0 && e.valid_bleu >= cfg.stop_at_bleu) stop = true;
    }
    res.epochs.push_back(e);
    char buf[160];
    std::snprintf(buf, sizeof buf, "epoch %d lr %.6g loss %.6f valid_bleu ", e.epoch, e.lr, e.loss);
    std::string line = buf;
    if (e.valid_bleu >= 0) {
      std::snprintf(buf, sizeof buf, "%.2f", e.valid_bleu);
      line += buf;
    } else {
      line += "-";
    }
    say(line);
    if (stop) break;
  }
  if (!saved) num::save_checkpoint(params, ckpt);
  say("best valid_bleu " + std::to_string(res.best_bleu) + " at epoch " + std::to_string(res.best_epoch));
  return res;
}

// ---------------------------------------------------------------------------
// ablation

std::string ablation_label(int row) {
  static const char* labels[] = {"tokens",        "tokens+subtrees", "ast",       "ast,cd",    "ast,df",
                                 "ast,cd,df",     "ast,ns",          "ast,ns,cd", "ast,ns,df", "ast,ns,cd,df"};
  if (row < 1 || row > kAblationRows) throw UsageError("ablation row must be 1..10, got " + std::to_string(row));
  return labels[row - 1];
}

RunConfig ablation_config(const RunConfig& base, int row) {
  const std::string label = ablation_label(row);
  RunConfig c = base;
  c.out_dir = (fs::path(base.out_dir) / ("row" + std::to_string(row))).string();
  if (row == 1) {
    c.model.variant = model::Variant::tokens_only;
  } else if (row == 2) {
    c.model.variant = model::Variant::no_graph;
  } else {
    c.model.variant = model::Variant::full;
    c.model.edges = graph::EdgeFlags::parse(label, base.model.edges.reverse);
  }
  return c;
}

AblationResult ablate(const RunConfig& base, int row, const Logger& log) {
  RunConfig c = ablation_config(base, row);
  AblationResult out;
  out.row = row;
  out.train = train(c, log);
  Run run = load_run(c.out_dir);
  out.report = evaluate(run, "", c.valid_split, c.threads);
  write_text(fs::path(c.out_dir) / "report.json", eval::to_json(out.report).dump(2) + "\n");
  return out;
}

// ---------------------------------------------------------------------------
// inspection

namespace {
hcr::HcrBundle bundle_of(const std::string& code, const graph::EdgeFlags& flags = {}) {
  return hcr::build_hcr(corpus::preprocess_code(code), flags);
}
}  // namespace

std::string inspect_ast(const std::string& code) { return hcr::ast_to_json(bundle_of(code).tree).dump(2); }

std::string inspect_subtrees(const std::string& code, bool dot) {
  auto b = bundle_of(code);
  return dot ? hcr::reduced_tree_to_dot(b) : hcr::subtrees_to_json(b).dump(2);
}

std::string inspect_graph(const std::string& code, const graph::EdgeFlags& flags, bool dot) {
  auto b = bundle_of(code, flags);
  return dot ? hcr::graph_to_dot(b) : hcr::graph_to_json(b.graph).dump(2);
}

std::vector<double> inspect_gates(const Run& run, const std::string& code) {
  auto v = run.model->gate_values(run.input(bundle_of(code, run.config.model.edges)));
  return {v.begin(), v.end()};
}

}  // namespace hnet::app
