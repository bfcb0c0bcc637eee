#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "common/error.h"

namespace hnet::corpus {

enum class Split { train, valid, test };
const char* split_name(Split s);
Split parse_split(const std::string& s);

struct RawExample {
  std::string code;
  std::string summary;
  Split split = Split::train;
};

// JSON lines with "code", "summary" and optional "split" (default: `fallback`).
std::vector<RawExample> read_jsonl(const std::string& path, Split fallback = Split::train);
void write_jsonl(const std::string& path, const std::vector<RawExample>& examples);

// Converters from the layouts the public corpora ship in. Formats:
//   "funcom"   JSON object {id: code} plus JSON object {id: comment}
//   "deepcom"  parallel line files (code per line, comment per line)
//   "tlcodesum" / "codesearchnet"  JSON lines with code+comment / code+docstring
std::vector<RawExample> convert(const std::string& format, const std::vector<std::string>& inputs, Split split);

// Stops after `patience` epochs without a strict improvement over the best.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience) : patience_(patience) {}
  // Returns true when training should stop after this epoch's metric.
  bool update(double metric);
  bool improved() const { return improved_; }
  double best() const { return best_; }
  int best_epoch() const { return best_epoch_; }  // 0-based
  int epochs() const { return epoch_; }

 private:
  int patience_;
  int epoch_ = 0;
  int best_epoch_ = -1;
  double best_ = 0;
  bool improved_ = false;
};

// Shuffled (or not) index batches over one split.
struct Batch {
  Split split = Split::train;
  std::vector<std::size_t> indices;
};
std::vector<Batch> make_batches(const std::vector<Split>& splits, Split which, std::size_t batch_size,
                                std::uint64_t seed, bool shuffle);

// Right-pads id sequences with <pad>; mask is 1 on real positions.
struct Padded {
  std::vector<std::vector<int>> ids;
  std::vector<std::vector<char>> mask;
};
Padded pad_sequences(const std::vector<std::vector<int>>& seqs, int pad_id = 0);

}  // namespace hnet::corpus
