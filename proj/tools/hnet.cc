// hnet: batch commands over the hierarchynet C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hierarchynet/hierarchynet.h"

using nlohmann::json;

namespace {

// 0 ok, 1 usage, 2 data (and io), 3 numeric.
int exit_code(hnet_status s) {
  switch (s) {
    case HNET_OK: return 0;
    case HNET_E_USAGE: return 1;
    case HNET_E_NUMERIC: return 3;
    default: return 2;
  }
}

struct Failed {
  hnet_status status;
};

void check(hnet_status s) {
  if (s != HNET_OK) {
    std::cerr << "hnet: " << hnet_last_error() << "\n";
    throw Failed{s};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  hnet_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "hnet: cannot read " << path << "\n";
    throw Failed{HNET_E_IO};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "hnet: cannot write " << path << "\n";
    throw Failed{HNET_E_IO};
  }
  out << text;
}

void print_line(const char* line, void*) { std::cerr << line << std::endl; }

// Flag overrides layered over the JSON config file.
struct Overrides {
  std::string config, data, out, edges, gating, valid_split;
  std::optional<int> dims, layers, heads, patience, epochs, threads, max_steps;
  std::optional<long long> seed;
  std::optional<double> stop_at_bleu;
  bool deterministic = false;
  bool no_reverse = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "run config JSON")->check(CLI::ExistingFile);
    cmd->add_option("--data", data, "corpus JSONL (raw or extracted)");
    cmd->add_option("--out", out, "run directory");
    cmd->add_option("--valid-split", valid_split, "split used for early stopping");
    cmd->add_option("--edges", edges, "edge kinds: subset of ast,ns,cd,df, or all");
    cmd->add_flag("--no-reverse", no_reverse, "drop reverse edges");
    cmd->add_option("--gating", gating, "scalar or vector")->check(CLI::IsMember({"scalar", "vector"}));
    cmd->add_option("--dims", dims, "model width d");
    cmd->add_option("--layers", layers, "encoder and decoder layers");
    cmd->add_option("--heads", heads, "attention heads");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--patience", patience, "early-stopping patience in evaluations");
    cmd->add_option("--epochs", epochs, "maximum epochs");
    cmd->add_option("--max-steps", max_steps, "stop after this many optimizer steps");
    cmd->add_option("--stop-at-bleu", stop_at_bleu, "stop once validation BLEU reaches this");
    cmd->add_option("--threads", threads, "evaluation threads");
    cmd->add_flag("--deterministic", deterministic, "force single-threaded execution");
  }

  json resolve() const {
    json j = config.empty() ? json::object() : json::parse(slurp(config), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      std::cerr << "hnet: config " << config << " is not a JSON object\n";
      throw Failed{HNET_E_USAGE};
    }
    if (!j.contains("model")) j["model"] = json::object();
    if (!data.empty()) j["data"] = data;
    if (!out.empty()) j["out_dir"] = out;
    if (!valid_split.empty()) j["valid_split"] = valid_split;
    if (!edges.empty()) j["model"]["edges"] = edges;
    if (no_reverse) j["model"]["reverse_edges"] = false;
    if (!gating.empty()) j["model"]["gating"] = gating;
    if (dims) {
      j["model"]["d"] = *dims;
      j["model"]["ffn"] = 2 * *dims;
    }
    if (layers) j["model"]["enc_layers"] = j["model"]["dec_layers"] = *layers;
    if (heads) j["model"]["heads"] = *heads;
    if (seed) j["seed"] = *seed;
    if (patience) j["patience"] = *patience;
    if (epochs) j["epochs"] = *epochs;
    if (max_steps) j["max_steps"] = *max_steps;
    if (stop_at_bleu) j["stop_at_bleu"] = *stop_at_bleu;
    if (threads) j["threads"] = *threads;
    if (deterministic) j["threads"] = 1;
    return j;
  }
};

std::vector<std::string> methods_in(const std::string& path) {
  // .jsonl: one method per record ("code"); anything else: a single method
  if (path.size() < 6 || path.substr(path.size() - 6) != ".jsonl") return {slurp(path)};
  std::vector<std::string> out;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("code")) {
      std::cerr << "hnet: " << path << ": record without code\n";
      throw Failed{HNET_E_DATA};
    }
    out.push_back(j["code"].get<std::string>());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hierarchynet: code representations and summarization models for Java methods"};
  app.require_subcommand(1);

  // extract
  std::string ex_in, ex_out, ex_manifest, ex_edges = "all";
  int ex_words = 0;
  auto* extract = app.add_subcommand("extract", "build HCR records from a raw corpus");
  extract->add_option("--input", ex_in, "raw corpus JSONL")->required()->check(CLI::ExistingFile);
  extract->add_option("--output", ex_out, "HCR JSONL output")->required();
  extract->add_option("--manifest", ex_manifest, "manifest JSON (default: <output>.manifest.json)");
  extract->add_option("--edges", ex_edges, "edge kinds to keep");
  extract->add_option("--max-summary-words", ex_words, "truncate summaries (0 = no limit)");

  // inspect
  std::string in_method, in_layer = "graph", in_format, in_edges = "all", in_run, in_out;
  auto* inspect = app.add_subcommand("inspect", "dump one layer of a method");
  inspect->add_option("--method", in_method, "file with one Java method, or a .jsonl of records")
      ->required()
      ->check(CLI::ExistingFile);
  inspect->add_option("--layer", in_layer, "ast, subtrees, graph or gates")
      ->check(CLI::IsMember({"ast", "subtrees", "graph", "gates"}));
  inspect->add_option("--format", in_format, "json or dot (graph defaults to dot)")->check(CLI::IsMember({"json", "dot"}));
  inspect->add_option("--edges", in_edges, "edge kinds for the graph layer");
  inspect->add_option("--run", in_run, "trained run directory (gates)");
  inspect->add_option("--output", in_out, "write here instead of stdout");

  // train
  Overrides train_ov;
  std::string train_result;
  auto* train = app.add_subcommand("train", "train a model");
  train_ov.attach(train);
  train->add_option("--result", train_result, "write the training summary JSON here");

  // evaluate
  std::string ev_run, ev_data, ev_split = "test", ev_out;
  int ev_threads = 1;
  bool ev_det = false;
  auto* evaluate = app.add_subcommand("evaluate", "score greedy summaries of a trained run");
  evaluate->add_option("--run", ev_run, "run directory")->required();
  evaluate->add_option("--data", ev_data, "corpus JSONL (default: the run's corpus)");
  evaluate->add_option("--split", ev_split, "train, valid, test or all");
  evaluate->add_option("--threads", ev_threads, "decoding threads");
  evaluate->add_flag("--deterministic", ev_det, "single-threaded");
  evaluate->add_option("--output", ev_out, "report JSON path");

  // ablate
  Overrides ab_ov;
  std::string ab_rows = "all", ab_out;
  bool ab_dry = false;
  auto* ablate = app.add_subcommand("ablate", "run the ten ablation rows (tokens, subtrees, edge subsets)");
  ab_ov.attach(ablate);
  ablate->add_option("--row", ab_rows, "row id 1..10 or all");
  ablate->add_flag("--dry-run", ab_dry, "print the resolved row configs only");
  ablate->add_option("--output", ab_out, "summary JSON path");

  // score
  std::string sc_refs, sc_hyps;
  auto* score = app.add_subcommand("score", "BLEU-4 / ROUGE-L / F1 of two line-aligned text files");
  score->add_option("--refs", sc_refs, "references, one per line")->required()->check(CLI::ExistingFile);
  score->add_option("--hyps", sc_hyps, "hypotheses, one per line")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*extract) {
      size_t accepted = 0, skipped = 0;
      const std::string manifest = ex_manifest.empty() ? ex_out + ".manifest.json" : ex_manifest;
      check(hnet_extract(ex_in.c_str(), ex_out.c_str(), manifest.c_str(), ex_edges.c_str(), ex_words, &accepted, &skipped));
      std::cout << "accepted " << accepted << " skipped " << skipped << "\n";
      if (accepted == 0) std::cerr << "hnet: warning: no records written\n";
    } else if (*inspect) {
      auto methods = methods_in(in_method);
      if (in_layer == "gates") {
        if (in_run.empty()) {
          std::cerr << "hnet: --layer gates needs --run with a checkpoint\n";
          return 1;
        }
        hnet_run* run = nullptr;
        check(hnet_run_open(in_run.c_str(), &run));
        json out = json::array();
        for (std::size_t i = 0; i < methods.size(); ++i) {
          size_t n = 0;
          hnet_status s = hnet_run_gates(run, methods[i].c_str(), nullptr, 0, &n);
          std::vector<double> v(n);
          if (s == HNET_OK) s = hnet_run_gates(run, methods[i].c_str(), v.data(), v.size(), &n);
          if (s != HNET_OK) {
            hnet_run_free(run);
            check(s);
          }
          out.push_back({{"example", i}, {"lambda", n == 1 ? json(v[0]) : json(v)}});
        }
        hnet_run_free(run);
        emit(out.dump(2), in_out);
      } else {
        std::string text;
        for (const auto& m : methods) {
          hnet_hcr* h = nullptr;
          check(hnet_hcr_build(m.c_str(), in_edges.c_str(), &h));
          char* s = nullptr;
          const bool dot = in_format == "dot" || (in_format.empty() && in_layer == "graph");
          hnet_status st = dot ? hnet_hcr_dot(h, in_layer.c_str(), &s) : hnet_hcr_json(h, in_layer.c_str(), &s);
          hnet_hcr_free(h);
          check(st);
          text += take(s);
          if (text.back() != '\n') text += '\n';
        }
        emit(text, in_out);
      }
    } else if (*train) {
      json cfg = train_ov.resolve();
      char* result = nullptr;
      check(hnet_train(cfg.dump().c_str(), print_line, nullptr, &result));
      std::string r = take(result);
      if (!train_result.empty()) emit(r, train_result);
      std::cout << "best valid BLEU " << json::parse(r)["best_bleu"].get<double>() << "\n";
    } else if (*evaluate) {
      hnet_run* run = nullptr;
      check(hnet_run_open(ev_run.c_str(), &run));
      char *report = nullptr, *table = nullptr;
      hnet_status s = hnet_run_evaluate(run, ev_data.c_str(), ev_split.c_str(), ev_det ? 1 : ev_threads, &report, &table);
      hnet_run_free(run);
      check(s);
      std::cout << take(table);
      const std::string r = take(report);
      emit(r, ev_out.empty() ? ev_run + "/report_" + ev_split + ".json" : ev_out);
    } else if (*ablate) {
      json base = ab_ov.resolve();
      std::vector<int> rows;
      if (ab_rows == "all") {
        for (int r = 1; r <= 10; ++r) rows.push_back(r);
      } else {
        try {
          rows.push_back(std::stoi(ab_rows));
        } catch (const std::exception&) {
          std::cerr << "hnet: --row must be 1..10 or all\n";
          return 1;
        }
      }
      json summary = json::array();
      for (int row : rows) {
        char* out = nullptr;
        if (ab_dry) {
          check(hnet_ablation_config(base.dump().c_str(), row, &out));
          summary.push_back(json::parse(take(out)));
          continue;
        }
        check(hnet_ablate(base.dump().c_str(), row, print_line, nullptr, &out));
        json r = json::parse(take(out));
        std::printf("row %2d %-16s BLEU %6.2f ROUGE-L %6.2f F1 %6.2f\n", row, r["label"].get<std::string>().c_str(),
                    r["report"]["bleu4"].get<double>(), r["report"]["rouge_l"].get<double>(),
                    r["report"]["f1"].get<double>());
        summary.push_back({{"row", row}, {"label", r["label"]}, {"bleu4", r["report"]["bleu4"]},
                           {"rouge_l", r["report"]["rouge_l"]}, {"f1", r["report"]["f1"]}});
      }
      if (ab_dry || !ab_out.empty()) emit(summary.dump(2), ab_out);
    } else if (*score) {
      auto lines = [](const std::string& text) {
        json arr = json::array();
        std::istringstream in(text);
        std::string l;
        while (std::getline(in, l)) arr.push_back(l);
        return arr;
      };
      char* report = nullptr;
      check(hnet_score_texts(lines(slurp(sc_refs)).dump().c_str(), lines(slurp(sc_hyps)).dump().c_str(), &report));
      json r = json::parse(take(report));
      std::printf("BLEU-4 %.2f ROUGE-L %.2f F1 %.2f (%zu pairs)\n", r["bleu4"].get<double>(), r["rouge_l"].get<double>(),
                  r["f1"].get<double>(), r["count"].get<std::size_t>());
    }
  } catch (const Failed& f) {
    return exit_code(f.status);
  }
  return 0;
}
