#pragma once

// Independent checkers used by the unit tests and the acceptance binary.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "graph/dependence.h"
#include "hcr/hcr.h"
#include "syntax/lexer.h"

namespace hnet::testing {

// Def-use pairs by enumerating every entry-to-use path of an acyclic CFG and
// walking back to the last definition of each used variable.
inline std::vector<graph::DefUse> brute_force_reaching(const graph::Cfg& cfg,
                                                       const std::vector<graph::DefsUses>& du) {
  std::set<graph::DefUse> found;
  std::vector<int> path;
  std::function<void(int)> walk = [&](int node) {
    path.push_back(node);
    for (const auto& var : du[static_cast<std::size_t>(node)].uses) {
      for (std::size_t i = path.size() - 1; i-- > 0;) {
        int p = path[i];
        if (du[static_cast<std::size_t>(p)].defs.count(var)) {
          found.insert({p, node, var});
          break;
        }
      }
    }
    for (int s : cfg.succ[static_cast<std::size_t>(node)]) walk(s);
    path.pop_back();
  };
  walk(cfg.entry);
  return {found.begin(), found.end()};
}

// Random acyclic CFG over `n` units with defs/uses drawn from `vars`.
struct RandomDag {
  graph::Cfg cfg;
  std::vector<graph::DefsUses> du;
};

inline RandomDag random_dag(std::mt19937& rng, int n, int vars) {
  RandomDag r;
  r.cfg = graph::Cfg::with_units(static_cast<std::size_t>(n));
  std::bernoulli_distribution edge(0.35), mark(0.4);
  r.cfg.add_edge(r.cfg.entry, 0);
  for (int j = 1; j < n; ++j) {
    // one guaranteed predecessor keeps every node reachable
    r.cfg.add_edge(std::uniform_int_distribution<int>(0, j - 1)(rng), j);
    for (int i = 0; i < j - 1; ++i) {
      if (edge(rng)) r.cfg.add_edge(i, j);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (i == n - 1 || edge(rng)) r.cfg.add_edge(i, r.cfg.exit);
  }
  r.du.resize(static_cast<std::size_t>(n) + 2);
  for (int i = 0; i < n; ++i) {
    for (int v = 0; v < vars; ++v) {
      std::string name(1, static_cast<char>('x' + v));
      if (mark(rng)) r.du[static_cast<std::size_t>(i)].defs.insert(name);
      if (mark(rng)) r.du[static_cast<std::size_t>(i)].uses.insert(name);
    }
  }
  return r;
}

// Structural invariants of one bundle; returns human-readable violations.
inline std::vector<std::string> check_bundle(const hcr::HcrBundle& b) {
  std::vector<std::string> bad;
  const auto& h = b.hierarchy;
  const std::size_t n = b.tree.size();

  // partition: each T node in exactly one subtree or surviving in T'
  std::vector<int> seen(n, 0);
  for (const auto& st : h.subtrees) {
    auto expect = b.tree.preorder(st.root);
    if (expect != st.nodes) bad.push_back("subtree " + std::to_string(st.id) + " nodes differ from root descendants");
    for (int x : st.nodes) ++seen[static_cast<std::size_t>(x)];
  }
  std::size_t surviving = 0;
  std::set<int> placeholders;
  for (const auto& rn : h.reduced.nodes) {
    if (rn.is_placeholder()) {
      if (!placeholders.insert(rn.subtree).second) bad.push_back("subtree with two placeholders");
      if (rn.id != static_cast<int>(n) + rn.subtree) bad.push_back("placeholder id off");
      if (h.subtrees.at(static_cast<std::size_t>(rn.subtree)).placeholder != rn.id) bad.push_back("placeholder mismatch");
      if (!rn.children.empty()) bad.push_back("placeholder with children");
    } else {
      ++seen[static_cast<std::size_t>(rn.original)];
      ++surviving;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] != 1) bad.push_back("node " + std::to_string(i) + " covered " + std::to_string(seen[i]) + " times");
  }
  std::size_t owned = 0;
  for (const auto& st : h.subtrees) owned += st.nodes.size();
  if (owned + surviving != n) bad.push_back("partition sizes do not add up");
  if (placeholders.size() != h.subtrees.size()) bad.push_back("placeholders are not one-to-one with subtrees");

  // T' is a tree rooted at `root`
  std::set<int> ids;
  for (const auto& rn : h.reduced.nodes) ids.insert(rn.id);
  std::size_t edges = 0;
  for (const auto& rn : h.reduced.nodes) {
    for (int c : rn.children) {
      ++edges;
      const auto* child = h.reduced.find(c);
      if (!child || child->parent != rn.id) bad.push_back("broken T' parent link");
    }
  }
  if (edges + 1 != h.reduced.nodes.size()) bad.push_back("T' edge count is not nodes - 1");

  // alignment is total and points at the right unit
  if (h.alignment.owner.size() != b.seq.nodes.size()) bad.push_back("owner not total over L");
  if (h.alignment.units.size() != h.reduced.nodes.size()) bad.push_back("unit count differs from T' size");

  // semantic endpoints are coarse statement-level units
  for (const auto& e : b.graph.edges) {
    if (e.type == graph::EdgeType::ast || e.type == graph::EdgeType::ast_rev) continue;
    for (int u : {e.src, e.dst}) {
      if (!h.alignment.units.at(static_cast<std::size_t>(u)).is_subtree()) bad.push_back("semantic edge touches a non-subtree node");
    }
  }

  // tokens of L reproduce the lexer stream
  std::string from_seq, from_lex;
  for (const auto& t : syntax::sequence_tokens(b.tree, b.seq)) from_seq += t;
  for (const auto& tok : syntax::lex(b.code)) {
    if (tok.kind == syntax::TokenKind::end) continue;
    for (const auto& p : syntax::split_subtokens(tok.text)) from_lex += p;
  }
  if (from_seq != from_lex) bad.push_back("token stream mismatch");

  // every CFG node reachable from entry
  auto cfg = graph::build_cfg(b.tree, h);
  std::vector<char> reach(cfg.size(), 0);
  std::vector<int> stack{cfg.entry};
  reach[static_cast<std::size_t>(cfg.entry)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int s : cfg.succ[static_cast<std::size_t>(x)]) {
      if (!reach[static_cast<std::size_t>(s)]) {
        reach[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
      }
    }
  }
  for (std::size_t i = 0; i < cfg.unit_count; ++i) {
    if (!reach[i]) bad.push_back("CFG unit " + std::to_string(i) + " unreachable");
  }
  return bad;
}

}  // namespace hnet::testing
