#include "syntax/sequence.h"

#include <cctype>

namespace hnet::syntax {

namespace {

bool identifier_shaped(std::string_view t) {
  if (t.empty()) return false;
  auto start = static_cast<unsigned char>(t.front());
  if (!(std::isalpha(start) || start == '_' || start == '$')) return false;
  for (char c : t) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '_' || c == '$')) return false;
  }
  return true;
}

enum class CharClass { lower, upper, digit };

CharClass classify(char c) {
  auto u = static_cast<unsigned char>(c);
  if (std::isdigit(u)) return CharClass::digit;
  if (std::isupper(u)) return CharClass::upper;
  return CharClass::lower;
}

std::string lowered(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void split_word(std::string_view word, std::vector<std::string>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < word.size(); ++i) {
    CharClass prev = classify(word[i - 1]);
    CharClass here = classify(word[i]);
    bool boundary = false;
    if ((prev == CharClass::digit) != (here == CharClass::digit)) {
      boundary = true;
    } else if (prev == CharClass::lower && here == CharClass::upper) {
      boundary = true;
    } else if (prev == CharClass::upper && here == CharClass::upper && i + 1 < word.size() &&
               classify(word[i + 1]) == CharClass::lower) {
      // "HTTPResponse" -> "HTTP" | "Response"
      boundary = true;
    }
    if (boundary) {
      out.push_back(lowered(word.substr(start, i - start)));
      start = i;
    }
  }
  if (start < word.size()) out.push_back(lowered(word.substr(start)));
}

}  // namespace

std::vector<std::string> split_subtokens(std::string_view token) {
  if (!identifier_shaped(token)) return {std::string(token)};
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= token.size(); ++i) {
    if (i == token.size() || token[i] == '_' || token[i] == '$') {
      if (i > start) split_word(token.substr(start, i - start), pieces);
      start = i + 1;
    }
  }
  if (pieces.empty()) return {std::string(token)};
  return pieces;
}

Ast insert_subtoken_nodes(Ast tree) {
  const std::size_t original = tree.size();
  for (std::size_t i = 0; i < original; ++i) {
    AstNode& node = tree.nodes[i];
    if (!node.is_leaf() || !node.has_token()) continue;
    auto pieces = split_subtokens(node.token);
    if (pieces.size() == 1) {
      node.token = pieces.front();
      continue;
    }
    const int parent = node.id;
    const Span span = node.span;
    tree.at(parent).token.clear();
    for (auto& piece : pieces) {
      int child = tree.add("sub_token", span, std::move(piece));
      tree.append_child(parent, child);
    }
  }
  return tree;
}

LinearSeq linearize(const Ast& tree) {
  LinearSeq seq;
  seq.nodes = tree.preorder();
  for (std::size_t i = 0; i < seq.nodes.size(); ++i) {
    if (tree.at(seq.nodes[i]).has_token()) seq.token_positions.push_back(i);
  }
  return seq;
}

std::vector<std::string> sequence_tokens(const Ast& tree, const LinearSeq& seq) {
  std::vector<std::string> out;
  out.reserve(seq.token_positions.size());
  for (auto pos : seq.token_positions) out.push_back(tree.at(seq.nodes[pos]).token);
  return out;
}

}  // namespace hnet::syntax
