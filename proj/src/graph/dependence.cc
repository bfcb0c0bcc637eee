#include "graph/dependence.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace hnet::graph {

using hierarchy::Hierarchy;
using hierarchy::SubtreeCategory;
using syntax::Ast;

Cfg Cfg::with_units(std::size_t units) {
  Cfg cfg;
  cfg.unit_count = units;
  cfg.succ.resize(units + 2);
  cfg.entry = static_cast<int>(units);
  cfg.exit = static_cast<int>(units + 1);
  return cfg;
}

void Cfg::add_edge(int from, int to) {
  auto& s = succ.at(static_cast<std::size_t>(from));
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

namespace {

bool is_punctuation(const Ast& tree, int node) {
  const std::string& t = tree.at(node).type;
  return t == "keyword" || t == "separator" || t == "operator";
}

std::vector<int> subtree_of_root(const Ast& tree, const Hierarchy& h) {
  std::vector<int> out(tree.size(), -1);
  for (const auto& st : h.subtrees) out[static_cast<std::size_t>(st.root)] = st.id;
  return out;
}

// for_statement children split into init / condition / update / body.
struct ForParts {
  std::vector<int> init;
  int cond = -1;
  std::vector<int> update;
  int body = -1;
};

ForParts split_for(const Ast& tree, int node) {
  ForParts parts;
  const auto& kids = tree.at(node).children;
  parts.body = kids.back();
  int section = 0;
  for (std::size_t i = 2; i + 1 < kids.size(); ++i) {
    int k = kids[i];
    const auto& n = tree.at(k);
    if (n.type == "separator" && n.token == ";") { ++section; continue; }
    if (n.type == "separator") continue;  // ',' and ')'
    if (section == 0) parts.init.push_back(k);
    else if (section == 1) parts.cond = k;
    else parts.update.push_back(k);
  }
  return parts;
}

class CfgBuilder {
 public:
  CfgBuilder(const Ast& tree, const Hierarchy& h)
      : tree_(tree), h_(h), root_sub_(subtree_of_root(tree, h)) {
    units_ = h.subtrees.size();
    succ_.resize(units_ + 2);
  }

  Cfg build() {
    const int entry = static_cast<int>(units_);
    const int exit = static_cast<int>(units_ + 1);
    exit_ = exit;
    std::vector<int> preds{entry};
    for (int k : tree_.at(tree_.root).children) {
      if (is_punctuation(tree_, k)) continue;
      preds = stmt(k, preds);
    }
    connect(preds, exit);
    contract();

    Cfg cfg = Cfg::with_units(units_);
    for (std::size_t i = 0; i < units_ + 2; ++i) {
      for (int s : succ_[i]) cfg.add_edge(static_cast<int>(i), s);
    }
    return cfg;
  }

 private:
  struct Jumps {
    std::vector<int> breaks;
    int continue_target = -1;  // -1 for switch
  };

  int synth() {
    succ_.emplace_back();
    return static_cast<int>(succ_.size() - 1);
  }

  void edge(int from, int to) {
    auto& s = succ_[static_cast<std::size_t>(from)];
    if (std::find(s.begin(), s.end(), to) == s.end()) s.push_back(to);
  }

  void connect(const std::vector<int>& preds, int to) {
    for (int p : preds) edge(p, to);
  }

  int unit(int node) const {
    int s = root_sub_.at(static_cast<std::size_t>(node));
    if (s < 0) throw InternalError("expected a subtree root at node " + std::to_string(node));
    return s;
  }

  static std::vector<int> merged(std::vector<int> a, const std::vector<int>& b) {
    for (int x : b) {
      if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
    }
    return a;
  }

  std::vector<int> seq(const std::vector<int>& nodes, std::vector<int> preds) {
    for (int n : nodes) preds = stmt(n, std::move(preds));
    return preds;
  }

  std::vector<int> statement_children(int node) const {
    std::vector<int> out;
    for (int k : tree_.at(node).children) {
      if (!is_punctuation(tree_, k)) out.push_back(k);
    }
    return out;
  }

  std::vector<int> stmt(int node, std::vector<int> preds) {
    if (root_sub_[static_cast<std::size_t>(node)] >= 0) return simple(node, preds);
    const auto& n = tree_.at(node);
    const auto& kids = n.children;
    const std::string& type = n.type;
    if (type == "block") return seq(statement_children(node), std::move(preds));
    if (type == "if_statement") {
      int c = unit(kids[2]);
      connect(preds, c);
      auto outs = stmt(kids[4], {c});
      auto alt = kids.size() > 6 ? stmt(kids[6], {c}) : std::vector<int>{c};
      return merged(outs, alt);
    }
    if (type == "while_statement") {
      int c = unit(kids[2]);
      connect(preds, c);
      jumps_.push_back({{}, c});
      auto outs = stmt(kids[4], {c});
      connect(outs, c);
      auto brk = pop_jumps();
      return merged({c}, brk);
    }
    if (type == "dowhile_statement") {
      int c = unit(kids[4]);
      int head = synth();
      connect(preds, head);
      jumps_.push_back({{}, c});
      auto outs = stmt(kids[1], {head});
      connect(outs, c);
      edge(c, head);
      auto brk = pop_jumps();
      return merged({c}, brk);
    }
    if (type == "for_statement") {
      ForParts parts = split_for(tree_, node);
      for (int i : parts.init) {
        int u = unit(i);
        connect(preds, u);
        preds = {u};
      }
      int head = synth();
      connect(preds, head);
      std::vector<int> body_preds{head};
      std::vector<int> exits;
      if (parts.cond >= 0) {
        int c = unit(parts.cond);
        edge(head, c);
        body_preds = {c};
        exits = {c};
      }
      int step = synth();
      jumps_.push_back({{}, step});
      auto outs = stmt(parts.body, body_preds);
      connect(outs, step);
      std::vector<int> tail{step};
      for (int up : parts.update) {
        int u = unit(up);
        connect(tail, u);
        tail = {u};
      }
      connect(tail, head);
      auto brk = pop_jumps();
      return merged(exits, brk);
    }
    if (type == "switchcase_statement") {
      int s = unit(kids[2]);
      connect(preds, s);
      jumps_.push_back({{}, -1});
      std::vector<int> fall;
      bool has_default = false;
      for (int group : tree_.at(kids[4]).children) {
        if (tree_.at(group).type != "switch_group") continue;
        std::vector<int> body;
        for (int k : tree_.at(group).children) {
          if (tree_.at(k).type == "switch_label") {
            if (tree_.at(tree_.at(k).children.front()).token == "default") has_default = true;
          } else {
            body.push_back(k);
          }
        }
        fall = seq(body, merged({s}, fall));
      }
      auto brk = pop_jumps();
      auto outs = merged(fall, brk);
      if (!has_default) outs = merged(outs, {s});
      return outs;
    }
    if (type == "try_statement" || type == "try_with_resources_statement") {
      std::size_t i = 1;
      std::vector<int> guarded;
      if (type == "try_with_resources_statement") {
        int r = unit(kids[1]);
        connect(preds, r);
        preds = {r};
        guarded.push_back(r);
        i = 2;
      }
      int body = kids[i];
      for (int d : tree_.preorder(body)) {
        int s = root_sub_[static_cast<std::size_t>(d)];
        if (s >= 0) guarded.push_back(s);
      }
      // an empty try block can still throw on entry
      if (guarded.empty()) guarded = preds;
      auto outs = stmt(body, preds);
      int finally_block = -1;
      for (++i; i < kids.size(); ++i) {
        const auto& clause = tree_.at(kids[i]);
        if (clause.type == "catch_clause") {
          int entry = synth();
          connect(guarded, entry);
          outs = merged(outs, stmt(clause.children.back(), {entry}));
        } else if (clause.type == "finally_clause") {
          finally_block = clause.children.back();
        }
      }
      if (finally_block >= 0) outs = stmt(finally_block, outs);
      return outs;
    }
    throw InternalError("unexpected statement node '" + type + "'");
  }

  std::vector<int> simple(int node, const std::vector<int>& preds) {
    int u = unit(node);
    connect(preds, u);
    const std::string& variant = h_.subtrees[static_cast<std::size_t>(u)].kind.variant;
    if (variant == "return_statement" || variant == "throw_statement") {
      edge(u, exit_);
      return {};
    }
    if (variant == "break_statement") {
      if (jumps_.empty()) throw DataError("break outside loop or switch");
      jumps_.back().breaks.push_back(u);
      return {};
    }
    if (variant == "continue_statement") {
      for (auto it = jumps_.rbegin(); it != jumps_.rend(); ++it) {
        if (it->continue_target >= 0) {
          edge(u, it->continue_target);
          return {};
        }
      }
      throw DataError("continue outside loop");
    }
    return {u};
  }

  std::vector<int> pop_jumps() {
    auto brk = std::move(jumps_.back().breaks);
    jumps_.pop_back();
    return brk;
  }

  // Removes synthetic join nodes, rewiring predecessors to successors.
  void contract() {
    const std::size_t first_synth = units_ + 2;
    for (std::size_t x = first_synth; x < succ_.size(); ++x) {
      const int xi = static_cast<int>(x);
      std::vector<int> outs;
      for (int s : succ_[x]) {
        if (s != xi) outs.push_back(s);
      }
      for (std::size_t p = 0; p < succ_.size(); ++p) {
        if (p == x) continue;
        auto& s = succ_[p];
        auto it = std::find(s.begin(), s.end(), xi);
        if (it == s.end()) continue;
        s.erase(it);
        for (int o : outs) edge(static_cast<int>(p), o);
      }
      succ_[x].clear();
    }
  }

  const Ast& tree_;
  const Hierarchy& h_;
  std::vector<int> root_sub_;
  std::size_t units_ = 0;
  int exit_ = 0;
  std::vector<std::vector<int>> succ_;
  std::vector<Jumps> jumps_;
};

// ---- defs / uses ----

class DefUseCollector {
 public:
  DefUseCollector(const Ast& tree, std::string_view source) : tree_(tree), src_(source) {}

  DefsUses collect(int root, SubtreeCategory category) {
    out_ = {};
    if (category == SubtreeCategory::method_header) {
      for (int k : tree_.preorder(root)) {
        if (tree_.at(k).type == "formal_parameter") def(name_child(k));
      }
    } else {
      visit(root);
    }
    return out_;
  }

 private:
  std::string name(int node) const {
    const auto& sp = tree_.at(node).span;
    return std::string(src_.substr(sp.begin, sp.end - sp.begin));
  }

  int name_child(int node) const {
    for (int k : tree_.at(node).children) {
      if (tree_.at(k).type == "identifier") return k;
    }
    throw InternalError("declaration without identifier");
  }

  void def(int ident) { out_.defs.insert(name(ident)); }
  void use(int ident) { out_.uses.insert(name(ident)); }

  static bool is_type(const std::string& t) {
    return t == "primitive_type" || t == "type_identifier" || t == "scoped_type_identifier" ||
           t == "generic_type" || t == "array_type" || t == "type_arguments" || t == "dimensions";
  }

  void visit(int node) {
    const auto& n = tree_.at(node);
    const auto& kids = n.children;
    const std::string& t = n.type;
    if (t == "identifier") { use(node); return; }
    if (is_type(t) || t == "class_literal") return;
    if (t == "assignment_expression") {
      int lhs = kids[0];
      if (tree_.at(lhs).type == "identifier") {
        def(lhs);
        if (tree_.at(kids[1]).token != "=") use(lhs);
      } else {
        visit(lhs);
      }
      visit(kids[2]);
      return;
    }
    if (t == "update_expression") {
      for (int k : kids) {
        if (tree_.at(k).type == "identifier") {
          def(k);
          use(k);
        } else if (tree_.at(k).type != "operator") {
          visit(k);
        }
      }
      return;
    }
    if (t == "variable_declarator") {
      // `int x;` declares without defining
      if (kids.size() > 1) def(kids[0]);
      for (std::size_t i = 1; i < kids.size(); ++i) visit(kids[i]);
      return;
    }
    if (t == "resource" && kids.size() >= 3 && tree_.at(kids[kids.size() - 2]).token == "=") {
      def(kids[kids.size() - 3]);
      visit(kids.back());
      return;
    }
    if (t == "method_invocation") {
      // [object '.'] name argument_list: the method name is not a variable
      if (kids.size() == 4) visit(kids[0]);
      visit(kids.back());
      return;
    }
    if (t == "field_access") {
      visit(kids[0]);
      return;
    }
    for (int k : kids) visit(k);
  }

  const Ast& tree_;
  std::string_view src_;
  DefsUses out_;
};

// ---- control dependence ----

class CdWalker {
 public:
  CdWalker(const Ast& tree, const Hierarchy& h, std::vector<UnitEdge>& out)
      : tree_(tree), h_(h), root_sub_(subtree_of_root(tree, h)), out_(out) {}

  void walk(int node, int governor) {
    int s = root_sub_[static_cast<std::size_t>(node)];
    if (s >= 0) {
      if (governor >= 0 && h_.subtrees[static_cast<std::size_t>(s)].kind.category != SubtreeCategory::method_header) {
        out_.push_back({governor, s});
      }
      return;
    }
    const auto& n = tree_.at(node);
    const auto& kids = n.children;
    const std::string& t = n.type;
    if (t == "if_statement") {
      int c = sub(kids[2]);
      walk(kids[2], governor);
      walk(kids[4], c);
      if (kids.size() > 6) walk(kids[6], c);
    } else if (t == "while_statement") {
      walk(kids[2], governor);
      walk(kids[4], sub(kids[2]));
    } else if (t == "dowhile_statement") {
      walk(kids[1], sub(kids[4]));
      walk(kids[4], governor);
    } else if (t == "for_statement") {
      ForParts parts = split_for(tree_, node);
      for (int i : parts.init) walk(i, governor);
      if (parts.cond >= 0) walk(parts.cond, governor);
      for (int u : parts.update) walk(u, governor);
      walk(parts.body, parts.cond >= 0 ? sub(parts.cond) : governor);
    } else if (t == "switchcase_statement") {
      walk(kids[2], governor);
      walk(kids[4], sub(kids[2]));
    } else if (t == "try_with_resources_statement") {
      walk(kids[1], governor);
      walk(kids[2], sub(kids[1]));
      for (std::size_t i = 3; i < kids.size(); ++i) walk(kids[i], governor);
    } else {
      for (int k : kids) walk(k, governor);
    }
  }

 private:
  int sub(int node) const { return root_sub_.at(static_cast<std::size_t>(node)); }

  const Ast& tree_;
  const Hierarchy& h_;
  std::vector<int> root_sub_;
  std::vector<UnitEdge>& out_;
};

}  // namespace

Cfg build_cfg(const Ast& tree, const Hierarchy& h) { return CfgBuilder(tree, h).build(); }

std::vector<DefsUses> collect_defs_uses(const Ast& tree, const Hierarchy& h, std::string_view source) {
  DefUseCollector collector(tree, source);
  std::vector<DefsUses> out;
  out.reserve(h.subtrees.size() + 2);
  for (const auto& st : h.subtrees) out.push_back(collector.collect(st.root, st.kind.category));
  out.resize(h.subtrees.size() + 2);  // entry / exit markers
  return out;
}

std::vector<DefUse> reaching_definitions(const Cfg& cfg, const std::vector<DefsUses>& defs_uses) {
  const std::size_t n = cfg.size();
  if (defs_uses.size() < n) throw InternalError("defs/uses table smaller than CFG");

  struct Def {
    int node;
    std::string var;
  };
  std::vector<Def> defs;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& v : defs_uses[i].defs) defs.push_back({static_cast<int>(i), v});
  }
  const std::size_t d = defs.size();
  using Bits = std::vector<char>;
  std::vector<Bits> gen(n, Bits(d, 0)), kill(n, Bits(d, 0)), in(n, Bits(d, 0)), out(n, Bits(d, 0));
  for (std::size_t j = 0; j < d; ++j) {
    const auto node = static_cast<std::size_t>(defs[j].node);
    gen[node][j] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != node && defs_uses[i].defs.count(defs[j].var)) kill[i][j] = 1;
    }
  }
  std::vector<std::vector<int>> preds(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : cfg.succ[i]) preds[static_cast<std::size_t>(s)].push_back(static_cast<int>(i));
  }

  const std::size_t limit = n * n;
  std::size_t passes = 0;
  bool changed = true;
  while (changed) {
    if (++passes > limit) throw InternalError("reaching definitions did not converge");
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      Bits next_in(d, 0);
      for (int p : preds[i]) {
        const auto& po = out[static_cast<std::size_t>(p)];
        for (std::size_t j = 0; j < d; ++j) next_in[j] |= po[j];
      }
      Bits next_out(d, 0);
      for (std::size_t j = 0; j < d; ++j) next_out[j] = gen[i][j] | (next_in[j] & !kill[i][j]);
      if (next_out != out[i] || next_in != in[i]) {
        changed = true;
        in[i] = std::move(next_in);
        out[i] = std::move(next_out);
      }
    }
  }

  std::vector<DefUse> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& v : defs_uses[i].uses) {
      for (std::size_t j = 0; j < d; ++j) {
        if (in[i][j] && defs[j].var == v) pairs.push_back({defs[j].node, static_cast<int>(i), v});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<UnitEdge> control_dependence_edges(const Ast& tree, const Hierarchy& h) {
  std::vector<UnitEdge> out;
  CdWalker(tree, h, out).walk(tree.root, -1);
  return out;
}

std::vector<UnitEdge> next_subtree_edges(const Hierarchy& h) {
  std::vector<int> order;
  for (const auto& st : h.subtrees) {
    if (st.kind.category != SubtreeCategory::method_header) order.push_back(st.id);
  }
  std::vector<UnitEdge> out;
  for (std::size_t i = 1; i < order.size(); ++i) out.push_back({order[i - 1], order[i]});
  return out;
}

// ---- edge types and flags ----

const char* edge_type_name(EdgeType t) {
  switch (t) {
    case EdgeType::ast: return "AST";
    case EdgeType::cd: return "CD";
    case EdgeType::df: return "DF";
    case EdgeType::ns: return "NS";
    case EdgeType::ast_rev: return "AST_rev";
    case EdgeType::cd_rev: return "CD_rev";
    case EdgeType::df_rev: return "DF_rev";
    case EdgeType::ns_rev: return "NS_rev";
  }
  return "AST";
}

EdgeType parse_edge_type(std::string_view name) {
  for (std::size_t i = 0; i < kEdgeTypeCount; ++i) {
    auto t = static_cast<EdgeType>(i);
    if (name == edge_type_name(t)) return t;
  }
  throw DataError("unknown edge type '" + std::string(name) + "'");
}

bool is_reverse(EdgeType t) { return static_cast<int>(t) >= 4; }

EdgeType reverse_of(EdgeType t) {
  int i = static_cast<int>(t);
  return static_cast<EdgeType>(i >= 4 ? i - 4 : i + 4);
}

bool EdgeFlags::enabled(EdgeType t) const {
  if (is_reverse(t) && !reverse) return false;
  switch (is_reverse(t) ? reverse_of(t) : t) {
    case EdgeType::ast: return use_ast;
    case EdgeType::cd: return use_cd;
    case EdgeType::df: return use_df;
    case EdgeType::ns: return use_ns;
    default: return false;
  }
}

EdgeFlags EdgeFlags::parse(std::string_view csv, bool reverse) {
  EdgeFlags f{false, false, false, false, reverse};
  std::string item;
  std::stringstream ss{std::string(csv)};
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    for (char& c : item) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (item.empty() || item == "none") continue;
    if (item == "ast") f.use_ast = true;
    else if (item == "ns") f.use_ns = true;
    else if (item == "cd") f.use_cd = true;
    else if (item == "df") f.use_df = true;
    else if (item == "all") f.use_ast = f.use_ns = f.use_cd = f.use_df = true;
    else throw UsageError("unknown edge kind '" + item + "' (expected ast, ns, cd, df)");
  }
  return f;
}

std::string EdgeFlags::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(use_ast, "ast");
  add(use_ns, "ns");
  add(use_cd, "cd");
  add(use_df, "df");
  return out;
}

std::size_t HetGraph::count(EdgeType t) const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [t](const GraphEdge& e) { return e.type == t; }));
}

HetGraph HetGraph::filtered(const EdgeFlags& flags) const {
  HetGraph g;
  g.nodes = nodes;
  for (const auto& e : edges) {
    if (flags.enabled(e.type)) g.edges.push_back(e);
  }
  return g;
}

SemanticEdges analyze(const Ast& tree, const Hierarchy& h, std::string_view source) {
  SemanticEdges out;
  out.cd = control_dependence_edges(tree, h);
  Cfg cfg = build_cfg(tree, h);
  out.df = reaching_definitions(cfg, collect_defs_uses(tree, h, source));
  out.ns = next_subtree_edges(h);
  return out;
}

HetGraph assemble_graph(const Hierarchy& h, const SemanticEdges& semantic, const EdgeFlags& flags) {
  HetGraph g;
  const auto& units = h.alignment.units;
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto& rn = h.reduced.nodes[u];
    GraphNode node;
    node.id = rn.id;
    node.type = rn.type;
    if (rn.is_placeholder()) node.subtree_kind = h.subtrees[static_cast<std::size_t>(rn.subtree)].kind;
    g.nodes.push_back(std::move(node));
  }
  auto unit_of_sub = [&](int s) { return h.alignment.unit_of_subtree.at(static_cast<std::size_t>(s)); };

  std::vector<GraphEdge> forward;
  if (flags.use_ast) {
    for (std::size_t u = 0; u < h.reduced.nodes.size(); ++u) {
      for (int child : h.reduced.nodes[u].children) {
        forward.push_back({static_cast<int>(u), static_cast<int>(h.reduced.index_of(child)), EdgeType::ast});
      }
    }
  }
  if (flags.use_cd) {
    for (const auto& e : semantic.cd) forward.push_back({unit_of_sub(e.src), unit_of_sub(e.dst), EdgeType::cd});
  }
  if (flags.use_df) {
    std::vector<std::pair<int, int>> seen;
    for (const auto& p : semantic.df) {
      std::pair<int, int> key{p.def, p.use};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      forward.push_back({unit_of_sub(p.def), unit_of_sub(p.use), EdgeType::df});
    }
  }
  if (flags.use_ns) {
    for (const auto& e : semantic.ns) forward.push_back({unit_of_sub(e.src), unit_of_sub(e.dst), EdgeType::ns});
  }
  g.edges = forward;
  if (flags.reverse) {
    for (const auto& e : forward) g.edges.push_back({e.dst, e.src, reverse_of(e.type)});
  }
  return g;
}

}  // namespace hnet::graph
