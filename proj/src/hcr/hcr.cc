#include "hcr/hcr.h"

#include <map>
#include <sstream>

#include "syntax/parser.h"

namespace hnet::hcr {

using nlohmann::json;

HcrBundle build_hcr(std::string code, const graph::EdgeFlags& flags) {
  HcrBundle b;
  b.code = std::move(code);
  b.tree = syntax::insert_subtoken_nodes(syntax::parse_method(b.code));
  b.seq = syntax::linearize(b.tree);
  b.hierarchy = hierarchy::extract_hierarchy(b.tree, b.seq.nodes);
  auto semantic = graph::analyze(b.tree, b.hierarchy, b.code);
  b.graph = graph::assemble_graph(b.hierarchy, semantic, flags);
  return b;
}

json ast_to_json(const syntax::Ast& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    json j{{"id", n.id}, {"node_type", n.type}, {"children", n.children},
           {"span", {n.span.begin, n.span.end}}};
    if (n.has_token()) j["token"] = n.token;
    nodes.push_back(std::move(j));
  }
  return {{"root", tree.root}, {"nodes", std::move(nodes)}};
}

namespace {

json kind_to_json(const hierarchy::SubtreeKind& k) {
  return {{"category", hierarchy::category_name(k.category)}, {"variant", k.variant}};
}

hierarchy::SubtreeKind kind_from_json(const json& j) {
  return {hierarchy::parse_category(j.at("category").get<std::string>()), j.at("variant").get<std::string>()};
}

syntax::Ast ast_from_json(const json& j) {
  syntax::Ast tree;
  for (const auto& n : j.at("nodes")) {
    syntax::AstNode node;
    node.id = n.at("id").get<int>();
    if (node.id != static_cast<int>(tree.nodes.size())) throw DataError("AST node ids must be dense");
    node.type = n.at("node_type").get<std::string>();
    node.token = n.value("token", std::string{});
    node.children = n.at("children").get<std::vector<int>>();
    node.span = {n.at("span")[0].get<std::size_t>(), n.at("span")[1].get<std::size_t>()};
    tree.nodes.push_back(std::move(node));
  }
  for (const auto& n : tree.nodes) {
    for (int c : n.children) tree.at(c).parent = n.id;
  }
  tree.root = j.at("root").get<int>();
  return tree;
}

}  // namespace

json subtrees_to_json(const HcrBundle& b) {
  const auto& h = b.hierarchy;
  json subtrees = json::array();
  for (const auto& st : h.subtrees) {
    subtrees.push_back({{"id", st.id}, {"kind", kind_to_json(st.kind)}, {"root", st.root},
                        {"nodes", st.nodes}, {"placeholder", st.placeholder}});
  }
  json reduced = json::array();
  for (const auto& n : h.reduced.nodes) {
    json j{{"id", n.id}, {"type", n.type}, {"children", n.children}, {"parent", n.parent}};
    if (n.is_placeholder()) j["subtree"] = n.subtree;
    else j["original"] = n.original;
    if (!n.token.empty()) j["token"] = n.token;
    reduced.push_back(std::move(j));
  }
  json units = json::array();
  for (const auto& u : h.alignment.units) {
    json j{{"tprime_id", u.tprime_id}};
    if (u.is_subtree()) j["subtree"] = u.subtree;
    else j["ast_node"] = u.ast_node;
    units.push_back(std::move(j));
  }
  std::size_t owned = 0;
  for (const auto& st : h.subtrees) owned += st.nodes.size();
  return {{"subtrees", std::move(subtrees)},
          {"reduced", {{"root", h.reduced.root}, {"nodes", std::move(reduced)}}},
          {"units", std::move(units)},
          {"owner", h.alignment.owner},
          {"partition", {{"ast_nodes", b.tree.size()},
                         {"subtree_nodes", owned},
                         {"surviving_nodes", h.reduced.nodes.size() - h.subtrees.size()}}}};
}

json graph_to_json(const graph::HetGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json j{{"id", n.id}, {"type", n.type}};
    if (n.subtree_kind) j["subtree_kind"] = kind_to_json(*n.subtree_kind);
    nodes.push_back(std::move(j));
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"src", g.nodes[static_cast<std::size_t>(e.src)].id},
                     {"dst", g.nodes[static_cast<std::size_t>(e.dst)].id},
                     {"type", graph::edge_type_name(e.type)}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

graph::HetGraph graph_from_json(const json& j) {
  graph::HetGraph g;
  std::map<int, int> index;
  for (const auto& n : j.at("nodes")) {
    graph::GraphNode node;
    node.id = n.at("id").get<int>();
    node.type = n.at("type").get<std::string>();
    if (n.contains("subtree_kind")) node.subtree_kind = kind_from_json(n.at("subtree_kind"));
    index[node.id] = static_cast<int>(g.nodes.size());
    g.nodes.push_back(std::move(node));
  }
  auto lookup = [&](int id) {
    auto it = index.find(id);
    if (it == index.end()) throw DataError("edge references unknown node " + std::to_string(id));
    return it->second;
  };
  for (const auto& e : j.at("edges")) {
    g.edges.push_back({lookup(e.at("src").get<int>()), lookup(e.at("dst").get<int>()),
                       graph::parse_edge_type(e.at("type").get<std::string>())});
  }
  return g;
}

json to_json(const HcrBundle& b) {
  return {{"code", b.code},
          {"ast", ast_to_json(b.tree)},
          {"sequence", {{"nodes", b.seq.nodes}, {"token_positions", b.seq.token_positions}}},
          {"hierarchy", subtrees_to_json(b)},
          {"graph", graph_to_json(b.graph)}};
}

HcrBundle from_json(const json& j) {
  HcrBundle b;
  b.code = j.at("code").get<std::string>();
  b.tree = ast_from_json(j.at("ast"));
  b.seq.nodes = j.at("sequence").at("nodes").get<std::vector<int>>();
  b.seq.token_positions = j.at("sequence").at("token_positions").get<std::vector<std::size_t>>();

  const auto& hj = j.at("hierarchy");
  auto& h = b.hierarchy;
  for (const auto& s : hj.at("subtrees")) {
    hierarchy::Subtree st;
    st.id = s.at("id").get<int>();
    st.kind = kind_from_json(s.at("kind"));
    st.root = s.at("root").get<int>();
    st.nodes = s.at("nodes").get<std::vector<int>>();
    st.placeholder = s.at("placeholder").get<int>();
    h.subtrees.push_back(std::move(st));
  }
  h.reduced.root = hj.at("reduced").at("root").get<int>();
  for (const auto& n : hj.at("reduced").at("nodes")) {
    hierarchy::ReducedNode rn;
    rn.id = n.at("id").get<int>();
    rn.type = n.at("type").get<std::string>();
    rn.token = n.value("token", std::string{});
    rn.children = n.at("children").get<std::vector<int>>();
    rn.parent = n.at("parent").get<int>();
    rn.subtree = n.value("subtree", -1);
    rn.original = n.value("original", -1);
    h.reduced.nodes.push_back(std::move(rn));
  }
  for (const auto& u : hj.at("units")) {
    h.alignment.units.push_back({u.at("tprime_id").get<int>(), u.value("subtree", -1), u.value("ast_node", -1)});
  }
  h.alignment.owner = hj.at("owner").get<std::vector<int>>();
  h.alignment.unit_of_subtree.assign(h.subtrees.size(), -1);
  for (std::size_t u = 0; u < h.alignment.units.size(); ++u) {
    int s = h.alignment.units[u].subtree;
    if (s >= 0) h.alignment.unit_of_subtree.at(static_cast<std::size_t>(s)) = static_cast<int>(u);
  }
  b.graph = graph_from_json(j.at("graph"));
  if (b.graph.nodes.size() != h.alignment.units.size()) throw DataError("graph nodes do not match coarse units");
  return b;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Source text of a subtree, collapsed to one line.
std::string snippet(const HcrBundle& b, int ast_node) {
  const auto& sp = b.tree.at(ast_node).span;
  std::string text = b.code.substr(sp.begin, sp.end - sp.begin);
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  if (out.size() > 40) out = out.substr(0, 37) + "...";
  return out;
}

std::string unit_label(const HcrBundle& b, std::size_t u) {
  const auto& unit = b.hierarchy.alignment.units[u];
  if (unit.is_subtree()) {
    const auto& st = b.hierarchy.subtrees[static_cast<std::size_t>(unit.subtree)];
    return st.kind.variant + "\\n" + escape(snippet(b, st.root));
  }
  const auto& rn = b.hierarchy.reduced.nodes[u];
  return rn.token.empty() ? rn.type : rn.type + "\\n" + escape(rn.token);
}

}  // namespace

const char* edge_color(graph::EdgeType t) {
  switch (graph::is_reverse(t) ? graph::reverse_of(t) : t) {
    case graph::EdgeType::ast: return "green";
    case graph::EdgeType::cd: return "red";
    case graph::EdgeType::df: return "gold";
    case graph::EdgeType::ns: return "blue";
    default: return "black";
  }
}

std::string reduced_tree_to_dot(const HcrBundle& b) {
  std::ostringstream os;
  os << "digraph reduced {\n  node [shape=box, fontname=\"monospace\"];\n";
  const auto& nodes = b.hierarchy.reduced.nodes;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    os << "  n" << nodes[u].id << " [label=\"" << unit_label(b, u) << "\"";
    if (nodes[u].is_placeholder()) os << ", style=filled, fillcolor=lightgrey";
    os << "];\n";
  }
  for (const auto& n : nodes) {
    for (int c : n.children) os << "  n" << n.id << " -> n" << c << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string graph_to_dot(const HcrBundle& b) {
  std::ostringstream os;
  os << "digraph hcr {\n  node [shape=box, fontname=\"monospace\"];\n";
  const auto& g = b.graph;
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    os << "  n" << g.nodes[u].id << " [label=\"" << unit_label(b, u) << "\"";
    if (g.nodes[u].subtree_kind) os << ", style=filled, fillcolor=lightgrey";
    os << "];\n";
  }
  for (const auto& e : g.edges) {
    os << "  n" << g.nodes[static_cast<std::size_t>(e.src)].id << " -> n"
       << g.nodes[static_cast<std::size_t>(e.dst)].id << " [color=" << edge_color(e.type)
       << ", label=\"" << graph::edge_type_name(e.type) << "\"";
    if (graph::is_reverse(e.type)) os << ", style=dotted";
    else if (e.type != graph::EdgeType::ast) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hnet::hcr
