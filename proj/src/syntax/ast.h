#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.h"

namespace hnet::syntax {

// Half-open character range [begin, end) into the method source.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct AstNode {
  int id = 0;
  std::string type;
  std::string token;  // non-empty only on leaves
  std::vector<int> children;
  Span span;
  int parent = -1;

  bool has_token() const { return !token.empty(); }
  bool is_leaf() const { return children.empty(); }
};

// Arena-backed syntax tree. Node ids are indices into `nodes`.
class Ast {
 public:
  std::vector<AstNode> nodes;
  int root = -1;

  const AstNode& at(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
  AstNode& at(int id) { return nodes.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return nodes.size(); }

  int add(std::string type, Span span, std::string token = {});
  void append_child(int parent, int child);

  // Pre-order ids of the subtree rooted at `id`.
  std::vector<int> preorder(int id) const;
  std::vector<int> preorder() const { return preorder(root); }
};

class SyntaxError : public DataError {
 public:
  SyntaxError(Span span, const std::string& message);
  Span span() const { return span_; }

 private:
  Span span_;
};

class UnsupportedConstruct : public DataError {
 public:
  UnsupportedConstruct(Span span, const std::string& construct);
  Span span() const { return span_; }
  const std::string& construct() const { return construct_; }

 private:
  Span span_;
  std::string construct_;
};

// Every node_type the parser can emit, plus `sub_token`. Leaves for keywords,
// operators and separators carry the categories `keyword`, `operator`, `separator`.
const std::vector<std::string>& node_type_vocabulary();
bool is_known_node_type(std::string_view type);

}  // namespace hnet::syntax
