#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "graph/dependence.h"
#include "hierarchy/hierarchy.h"
#include "syntax/ast.h"
#include "syntax/sequence.h"

namespace hnet::hcr {

// One method's full representation: T (sub-tokenized), L, ST, T', G.
struct HcrBundle {
  std::string code;
  syntax::Ast tree;
  syntax::LinearSeq seq;
  hierarchy::Hierarchy hierarchy;
  graph::HetGraph graph;
};

// Parses `code` and builds every layer. The graph carries the edge kinds in
// `flags` only.
HcrBundle build_hcr(std::string code, const graph::EdgeFlags& flags = {});

nlohmann::json ast_to_json(const syntax::Ast& tree);
nlohmann::json subtrees_to_json(const HcrBundle& b);
// Edges reference T' node ids.
nlohmann::json graph_to_json(const graph::HetGraph& g);
graph::HetGraph graph_from_json(const nlohmann::json& j);

nlohmann::json to_json(const HcrBundle& b);
HcrBundle from_json(const nlohmann::json& j);

std::string reduced_tree_to_dot(const HcrBundle& b);
std::string graph_to_dot(const HcrBundle& b);
const char* edge_color(graph::EdgeType t);

}  // namespace hnet::hcr
