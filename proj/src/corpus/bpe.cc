#include "corpus/bpe.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>

namespace hnet::corpus {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case ' ': out += "\\s"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 's': out += ' '; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      default: out += s[i];
    }
  }
  return out;
}

bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<std::string> split_chunks(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && space(text[j])) ++j;
    while (j < text.size() && !space(text[j])) ++j;
    out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

const std::vector<std::string>& BpeTokenizer::reserved() {
  static const std::vector<std::string> r = {"<pad>", "<bos>", "<eos>", "<unk>", "<str>", "<notoken>"};
  return r;
}

void BpeTokenizer::build_index() {
  index_.clear();
  rank_.clear();
  cache_.clear();
  for (std::size_t i = 0; i < vocab_.size(); ++i) index_.emplace(vocab_[i], static_cast<int>(i));
  for (std::size_t i = 0; i < merges_.size(); ++i) rank_.emplace(merges_[i], static_cast<int>(i));
}

int BpeTokenizer::id_of(const std::string& symbol) const {
  auto it = index_.find(symbol);
  return it == index_.end() ? -1 : it->second;
}

BpeTokenizer BpeTokenizer::train(const std::vector<std::string>& corpus, int vocab_size) {
  const int nres = static_cast<int>(reserved().size());
  if (vocab_size <= nres) throw VocabTooSmall(vocab_size, nres + 1);

  // unique chunks with counts, in first-seen order for determinism
  std::map<std::string, long> freq;
  for (const auto& text : corpus) {
    for (auto& c : split_chunks(text)) ++freq[c];
  }
  std::set<unsigned char> alphabet;
  for (auto& [chunk, _] : freq) alphabet.insert(chunk.begin(), chunk.end());

  BpeTokenizer tok;
  tok.vocab_ = reserved();
  for (unsigned char c : alphabet) tok.vocab_.emplace_back(1, static_cast<char>(c));
  const int base = static_cast<int>(tok.vocab_.size());
  if (vocab_size < base) throw VocabTooSmall(vocab_size, base);

  struct Word {
    std::vector<std::string> sym;
    long count;
  };
  std::vector<Word> words;
  for (auto& [chunk, count] : freq) {
    Word w{{}, count};
    for (char c : chunk) w.sym.emplace_back(1, c);
    words.push_back(std::move(w));
  }

  while (static_cast<int>(tok.vocab_.size()) < vocab_size) {
    std::map<std::pair<std::string, std::string>, long> pairs;
    for (auto& w : words) {
      for (std::size_t i = 0; i + 1 < w.sym.size(); ++i) pairs[{w.sym[i], w.sym[i + 1]}] += w.count;
    }
    if (pairs.empty()) break;
    // map order is lexicographic, so the first maximum wins ties
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const auto [a, b] = best->first;
    const std::string merged = a + b;
    tok.merges_.push_back({a, b});
    if (std::find(tok.vocab_.begin(), tok.vocab_.end(), merged) == tok.vocab_.end()) tok.vocab_.push_back(merged);
    for (auto& w : words) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < w.sym.size(); ++i) {
        if (i + 1 < w.sym.size() && w.sym[i] == a && w.sym[i + 1] == b) {
          out.push_back(merged);
          ++i;
        } else {
          out.push_back(w.sym[i]);
        }
      }
      w.sym = std::move(out);
    }
  }
  tok.build_index();
  return tok;
}

std::vector<int> BpeTokenizer::encode_chunk(const std::string& chunk) const {
  auto hit = cache_.find(chunk);
  if (hit != cache_.end()) return hit->second;
  std::vector<std::string> sym;
  for (char c : chunk) sym.emplace_back(1, c);
  while (sym.size() > 1) {
    int best_rank = -1;
    std::size_t at = 0;
    for (std::size_t i = 0; i + 1 < sym.size(); ++i) {
      auto r = rank_.find({sym[i], sym[i + 1]});
      if (r != rank_.end() && (best_rank < 0 || r->second < best_rank)) {
        best_rank = r->second;
        at = i;
      }
    }
    if (best_rank < 0) break;
    const auto& [a, b] = merges_[static_cast<std::size_t>(best_rank)];
    std::vector<std::string> out;
    for (std::size_t i = 0; i < sym.size(); ++i) {
      if (i >= at && i + 1 < sym.size() && sym[i] == a && sym[i + 1] == b) {
        out.push_back(a + b);
        ++i;
      } else {
        out.push_back(sym[i]);
      }
    }
    sym = std::move(out);
  }
  std::vector<int> ids;
  for (auto& s : sym) {
    int id = id_of(s);
    ids.push_back(id < 0 ? 3 : id);
  }
  cache_.emplace(chunk, ids);
  return ids;
}

std::vector<int> BpeTokenizer::encode(std::string_view text) const {
  std::vector<int> out;
  for (auto& chunk : split_chunks(text)) {
    auto ids = encode_chunk(chunk);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

std::string BpeTokenizer::decode(const std::vector<int>& ids) const {
  std::string out;
  const int nres = static_cast<int>(reserved().size());
  for (int id : ids) {
    if (id < 0 || id >= size()) continue;
    if (id < nres) {
      if (id == 3 || id == 4) out += vocab_[static_cast<std::size_t>(id)];
      continue;
    }
    out += vocab_[static_cast<std::size_t>(id)];
  }
  return out;
}

void BpeTokenizer::save(const std::string& dir, const std::string& name) const {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir) / name;
  std::ofstream m(base.string() + ".merges"), v(base.string() + ".vocab");
  if (!m || !v) throw IoError("cannot write tokenizer files under " + dir);
  for (auto& [a, b] : merges_) m << escape(a) << ' ' << escape(b) << '\n';
  for (std::size_t i = 0; i < vocab_.size(); ++i) v << i << '\t' << escape(vocab_[i]) << '\n';
}

BpeTokenizer BpeTokenizer::load(const std::string& dir, const std::string& name) {
  const auto base = std::filesystem::path(dir) / name;
  std::ifstream m(base.string() + ".merges"), v(base.string() + ".vocab");
  if (!m || !v) throw IoError("cannot read tokenizer '" + name + "' from " + dir);
  BpeTokenizer tok;
  std::string line;
  while (std::getline(v, line)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("bad vocab line: " + line);
    if (std::stoul(line.substr(0, tab)) != tok.vocab_.size()) throw DataError("vocab ids out of order");
    tok.vocab_.push_back(unescape(line.substr(tab + 1)));
  }
  while (std::getline(m, line)) {
    auto sp = line.find(' ');
    if (sp == std::string::npos) throw DataError("bad merge line: " + line);
    tok.merges_.push_back({unescape(line.substr(0, sp)), unescape(line.substr(sp + 1))});
  }
  if (tok.vocab_.size() < reserved().size() ||
      !std::equal(reserved().begin(), reserved().end(), tok.vocab_.begin())) {
    throw DataError("tokenizer '" + name + "' lacks the reserved symbols");
  }
  tok.build_index();
  return tok;
}

}  // namespace hnet::corpus
