#include "corpus/dataset.h"

#include <algorithm>
#include <fstream>
#include <random>

#include <json.hpp>

namespace hnet::corpus {

using nlohmann::json;

const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::valid: return "valid";
    case Split::test: return "test";
  }
  return "train";
}

Split parse_split(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "valid" || s == "dev" || s == "validation") return Split::valid;
  if (s == "test") return Split::test;
  throw UsageError("unknown split '" + s + "'");
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

json parse_line(const std::string& line, const std::string& path, std::size_t lineno) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

std::string field(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const char* k : keys) {
    if (j.contains(k) && j.at(k).is_string()) return j.at(k).get<std::string>();
  }
  throw DataError(where + ": missing field '" + *keys.begin() + "'");
}

}  // namespace

std::vector<RawExample> read_jsonl(const std::string& path, Split fallback) {
  auto in = open_in(path);
  std::vector<RawExample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = parse_line(line, path, lineno);
    const std::string where = path + ":" + std::to_string(lineno);
    RawExample ex{field(j, {"code"}, where), field(j, {"summary"}, where), fallback};
    if (j.contains("split")) ex.split = parse_split(j.at("split").get<std::string>());
    if (ex.code.empty() || ex.summary.empty()) throw DataError(where + ": empty code or summary");
    out.push_back(std::move(ex));
  }
  return out;
}

void write_jsonl(const std::string& path, const std::vector<RawExample>& examples) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& e : examples) {
    out << json{{"code", e.code}, {"summary", e.summary}, {"split", split_name(e.split)}}.dump() << '\n';
  }
}

std::vector<RawExample> convert(const std::string& format, const std::vector<std::string>& inputs, Split split) {
  std::vector<RawExample> out;
  if (format == "tlcodesum" || format == "codesearchnet") {
    for (const auto& path : inputs) {
      auto in = open_in(path);
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = parse_line(line, path, lineno);
        const std::string where = path + ":" + std::to_string(lineno);
        out.push_back({field(j, {"code", "original_string"}, where), field(j, {"comment", "docstring", "nl"}, where), split});
      }
    }
  } else if (format == "deepcom") {
    if (inputs.size() != 2) throw UsageError("deepcom needs a code file and a comment file");
    auto code = open_in(inputs[0]);
    auto nl = open_in(inputs[1]);
    std::string c, s;
    while (std::getline(code, c)) {
      if (!std::getline(nl, s)) throw DataError("deepcom files have different line counts");
      out.push_back({c, s, split});
    }
    if (std::getline(nl, s)) throw DataError("deepcom files have different line counts");
  } else if (format == "funcom") {
    if (inputs.size() != 2) throw UsageError("funcom needs a functions file and a comments file");
    auto fi = open_in(inputs[0]);
    auto ci = open_in(inputs[1]);
    json fns = json::parse(fi, nullptr, false), coms = json::parse(ci, nullptr, false);
    if (fns.is_discarded() || coms.is_discarded()) throw DataError("funcom inputs must be JSON objects");
    for (auto it = fns.begin(); it != fns.end(); ++it) {
      if (!coms.contains(it.key())) continue;
      out.push_back({it.value().get<std::string>(), coms.at(it.key()).get<std::string>(), split});
    }
  } else {
    throw UsageError("unknown corpus format '" + format + "'");
  }
  return out;
}

bool EarlyStopping::update(double metric) {
  improved_ = best_epoch_ < 0 || metric > best_;
  if (improved_) {
    best_ = metric;
    best_epoch_ = epoch_;
  }
  ++epoch_;
  return epoch_ - 1 - best_epoch_ >= std::max(patience_, 0) && !improved_;
}

std::vector<Batch> make_batches(const std::vector<Split>& splits, Split which, std::size_t batch_size,
                                std::uint64_t seed, bool shuffle) {
  if (batch_size == 0) throw UsageError("batch size must be positive");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits[i] == which) idx.push_back(i);
  }
  if (shuffle) {
    std::mt19937_64 rng(seed);
    // Fisher-Yates with our own draws: std::shuffle is not portable across libraries
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
  }
  std::vector<Batch> out;
  for (std::size_t i = 0; i < idx.size(); i += batch_size) {
    Batch b{which, {}};
    b.indices.assign(idx.begin() + static_cast<std::ptrdiff_t>(i),
                     idx.begin() + static_cast<std::ptrdiff_t>(std::min(idx.size(), i + batch_size)));
    out.push_back(std::move(b));
  }
  return out;
}

Padded pad_sequences(const std::vector<std::vector<int>>& seqs, int pad_id) {
  std::size_t len = 0;
  for (auto& s : seqs) len = std::max(len, s.size());
  Padded p;
  for (auto& s : seqs) {
    std::vector<int> row(s);
    std::vector<char> mask(s.size(), 1);
    row.resize(len, pad_id);
    mask.resize(len, 0);
    p.ids.push_back(std::move(row));
    p.mask.push_back(std::move(mask));
  }
  return p;
}

}  // namespace hnet::corpus
