#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "common/error.h"

namespace hnet::corpus {

class VocabTooSmall : public UsageError {
 public:
  VocabTooSmall(int asked, int needed)
      : UsageError("BPE vocab size " + std::to_string(asked) + " is below the " + std::to_string(needed) +
                   " reserved and alphabet symbols") {}
};

// Byte-level pair-merge tokenizer. Text is cut into chunks of leading
// whitespace plus a non-space run; merges never cross chunks, so decoding is
// plain concatenation.
class BpeTokenizer {
 public:
  static const std::vector<std::string>& reserved();  // <pad> <bos> <eos> <unk> <str> <notoken>

  // Frequency ties go to the lexicographically smallest pair.
  static BpeTokenizer train(const std::vector<std::string>& corpus, int vocab_size);

  std::vector<int> encode(std::string_view text) const;
  std::string decode(const std::vector<int>& ids) const;

  int size() const { return static_cast<int>(vocab_.size()); }
  const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }
  const std::string& symbol(int id) const { return vocab_.at(static_cast<std::size_t>(id)); }
  int id_of(const std::string& symbol) const;  // -1 when absent

  // <dir>/<name>.merges and <dir>/<name>.vocab
  void save(const std::string& dir, const std::string& name) const;
  static BpeTokenizer load(const std::string& dir, const std::string& name);

 private:
  void build_index();
  std::vector<int> encode_chunk(const std::string& chunk) const;

  std::vector<std::string> vocab_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::unordered_map<std::string, int> index_;
  std::map<std::pair<std::string, std::string>, int> rank_;
  mutable std::unordered_map<std::string, std::vector<int>> cache_;
};

std::vector<std::string> split_chunks(std::string_view text);

}  // namespace hnet::corpus
