// Exercises the shared library through its public header only, and the CLI
// exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hierarchynet/hierarchynet.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kMax = "int max(int a,int b){int max=a; if(a<b){max=b;} return max;}";

std::string take(char* s) {
  std::string out = s ? s : "";
  hnet_string_free(s);
  return out;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(HNET_CLI) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(rc);
#else
  return rc;
#endif
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("hnet_capi_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("hcr handle") {
  hnet_hcr* h = nullptr;
  REQUIRE(hnet_hcr_build(kMax, "all", &h) == HNET_OK);
  CHECK(std::string(hnet_last_error()).empty());

  size_t n = 0;
  CHECK(hnet_hcr_edge_count(h, "CD", &n) == HNET_OK);
  CHECK(n == 1);
  CHECK(hnet_hcr_edge_count(h, "DF_rev", &n) == HNET_OK);
  CHECK(n == 5);
  CHECK(hnet_hcr_edge_count(h, "XX", &n) == HNET_E_DATA);
  CHECK_FALSE(std::string(hnet_last_error()).empty());

  size_t seq = 0, sub = 0, nodes = 0;
  CHECK(hnet_hcr_sizes(h, &seq, &sub, &nodes) == HNET_OK);
  CHECK(sub == 5);
  CHECK(nodes == 15);

  char* s = nullptr;
  REQUIRE(hnet_hcr_json(h, "graph", &s) == HNET_OK);
  auto g = json::parse(take(s));
  CHECK(g["nodes"].size() == 15);
  REQUIRE(hnet_hcr_dot(h, "graph", &s) == HNET_OK);
  CHECK(take(s).rfind("digraph", 0) == 0);
  CHECK(hnet_hcr_dot(h, "ast", &s) == HNET_E_USAGE);
  CHECK(hnet_hcr_json(h, "nope", &s) == HNET_E_USAGE);
  hnet_hcr_free(h);
}

TEST_CASE("status codes") {
  hnet_hcr* h = nullptr;
  CHECK(hnet_hcr_build("int f() { goto x; }", nullptr, &h) == HNET_E_DATA);
  CHECK(h == nullptr);
  CHECK(hnet_hcr_build(nullptr, nullptr, &h) == HNET_E_USAGE);
  CHECK(hnet_hcr_build(kMax, "ast,bogus", &h) == HNET_E_USAGE);
  hnet_run* r = nullptr;
  CHECK(hnet_run_open("/nonexistent/run", &r) != HNET_OK);
  CHECK(r == nullptr);
  char* out = nullptr;
  CHECK(hnet_ablation_config("{}", 11, &out) == HNET_E_USAGE);
  CHECK(hnet_train("not json", nullptr, nullptr, &out) == HNET_E_USAGE);
  CHECK(hnet_score_texts("[\"a\"]", "[]", &out) == HNET_E_USAGE);
}

TEST_CASE("score texts") {
  char* out = nullptr;
  REQUIRE(hnet_score_texts("[\"the cat sat\"]", "[\"the cat sat\"]", &out) == HNET_OK);
  auto j = json::parse(take(out));
  CHECK(j["bleu4"] == 100.0);
  CHECK(j["rouge_l"] == 100.0);
}

TEST_CASE("train, open, summarize, gates, evaluate") {
  auto d = scratch("train");
  {
    std::ofstream f(d / "raw.jsonl");
    f << json{{"code", kMax}, {"summary", "Returns the max."}, {"split", "train"}}.dump() << "\n";
    f << json{{"code", "int f(int a){return a+1;}"}, {"summary", "Adds one."}, {"split", "valid"}}.dump() << "\n";
  }
  json cfg{{"data", (d / "raw.jsonl").string()},
           {"out_dir", (d / "run").string()},
           {"epochs", 1},
           {"src_vocab_size", 80},
           {"tgt_vocab_size", 40},
           {"model", {{"d", 8}, {"ffn", 16}, {"heads", 2}, {"enc_layers", 1}, {"dec_layers", 1}, {"hgt_layers", 1}}}};
  std::vector<std::string> lines;
  auto log = [](const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(line); };
  char* res = nullptr;
  REQUIRE(hnet_train(cfg.dump().c_str(), log, &lines, &res) == HNET_OK);
  CHECK(json::parse(take(res))["epochs"].size() == 1);
  CHECK_FALSE(lines.empty());

  hnet_run* r = nullptr;
  REQUIRE(hnet_run_open((d / "run").string().c_str(), &r) == HNET_OK);
  char* s = nullptr;
  CHECK(hnet_run_summarize(r, kMax, &s) == HNET_OK);
  take(s);
  size_t count = 0;
  CHECK(hnet_run_gates(r, kMax, nullptr, 0, &count) == HNET_OK);
  CHECK(count == 1);
  double lambda = -1;
  CHECK(hnet_run_gates(r, kMax, &lambda, 1, &count) == HNET_OK);
  CHECK(lambda > 0);
  CHECK(lambda < 1);
  char *rep = nullptr, *table = nullptr;
  CHECK(hnet_run_evaluate(r, nullptr, "valid", 1, &rep, &table) == HNET_OK);
  CHECK(json::parse(take(rep))["count"] == 1);
  CHECK(take(table).find("BLEU-4") != std::string::npos);
  hnet_run_free(r);
  fs::remove_all(d);
}

TEST_CASE("cli exit codes") {
  auto d = scratch("cli");
  {
    std::ofstream(d / "m.java") << kMax;
    std::ofstream(d / "bad.java") << "int f() { goto x; }";
    std::ofstream(d / "nan.json") << R"({"model": {"d": 7}})";
  }
  const std::string m = (d / "m.java").string();
  CHECK(run_cli("inspect --method " + m + " --layer graph") == 0);
  CHECK(run_cli("inspect --method " + m + " --layer ast --format json") == 0);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("inspect --method " + m + " --layer bogus") == 1);
  CHECK(run_cli("inspect --method " + m + " --layer gates") == 1);
  CHECK(run_cli("inspect --method " + (d / "bad.java").string() + " --layer ast") == 2);
  CHECK(run_cli("inspect --method " + m + " --layer gates --run " + (d / "none").string()) == 2);
  CHECK(run_cli("train --config " + (d / "nan.json").string() + " --data x --out " + (d / "o").string()) == 1);
  CHECK(run_cli("ablate --row 12 --dry-run") == 1);
  fs::remove_all(d);
}
