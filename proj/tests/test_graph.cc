#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "hcr/hcr.h"
#include "support/java_gen.h"
#include "support/oracles.h"

using namespace hnet;
using graph::EdgeType;

namespace {

const char* kMax = "int max(int a,int b){int max=a; if(a<b){max=b;} return max;}";

// The collect-positives method: line 5 assigns num inside its condition.
const char* kPositives =
    "public ArrayList<Integer> getPositive(int[] nums) {\n"
    "  ArrayList<Integer> array = new ArrayList<>();\n"
    "  int num;\n"
    "  for (int i = 0; i < nums.length; i++) {\n"
    "    if ((num = nums[i]) > 0) {\n"
    "      array.add(num);\n"
    "      System.out.println(num);\n"
    "    }\n"
    "  }\n"
    "  return array;\n"
    "}";

std::string text(const hcr::HcrBundle& b, int subtree) {
  const auto& sp = b.tree.at(b.hierarchy.subtrees[static_cast<std::size_t>(subtree)].root).span;
  std::string s = b.code.substr(sp.begin, sp.end - sp.begin);
  if (!s.empty() && s.back() == ';') s.pop_back();
  return s;
}

using Pair = std::pair<std::string, std::string>;

std::set<Pair> named(const hcr::HcrBundle& b, const std::vector<graph::UnitEdge>& edges) {
  std::set<Pair> out;
  for (const auto& e : edges) out.insert({text(b, e.src), text(b, e.dst)});
  return out;
}

std::set<Pair> named_df(const hcr::HcrBundle& b, const std::vector<graph::DefUse>& pairs) {
  std::set<Pair> out;
  for (const auto& p : pairs) out.insert({text(b, p.def), text(b, p.use)});
  return out;
}

}  // namespace

TEST_CASE("max method semantic edges") {
  auto b = hcr::build_hcr(kMax);
  auto sem = graph::analyze(b.tree, b.hierarchy, b.code);
  CHECK(named(b, sem.cd) == std::set<Pair>{{"a<b", "max=b"}});
  CHECK(named_df(b, sem.df) == std::set<Pair>{{"int max(int a,int b)", "int max=a"},
                                              {"int max(int a,int b)", "a<b"},
                                              {"int max(int a,int b)", "max=b"},
                                              {"int max=a", "return max"},
                                              {"max=b", "return max"}});
  CHECK(named(b, sem.ns) == std::set<Pair>{{"int max=a", "a<b"}, {"a<b", "max=b"}, {"max=b", "return max"}});
}

TEST_CASE("max method full graph edge counts") {
  auto b = hcr::build_hcr(kMax);
  // T': method_declaration{ph0 '{' ph1 if_statement{'if' '(' ph2 ')' block{'{' ph3 '}'}} ph4 '}'}
  CHECK(b.graph.nodes.size() == 15);
  CHECK(b.graph.count(EdgeType::ast) == 14);
  CHECK(b.graph.count(EdgeType::cd) == 1);
  CHECK(b.graph.count(EdgeType::df) == 5);
  CHECK(b.graph.count(EdgeType::ns) == 3);
  for (auto t : {EdgeType::ast, EdgeType::cd, EdgeType::df, EdgeType::ns}) {
    CHECK(b.graph.count(graph::reverse_of(t)) == b.graph.count(t));
  }
  CHECK(b.graph.edges.size() == 46);
}

TEST_CASE("collect-positives method edges") {
  auto b = hcr::build_hcr(kPositives);
  auto sem = graph::analyze(b.tree, b.hierarchy, b.code);
  auto cd = named(b, sem.cd);
  auto df = named_df(b, sem.df);
  auto ns = named(b, sem.ns);
  const std::string line5 = "(num = nums[i]) > 0", line6 = "array.add(num)", line7 = "System.out.println(num)";
  CHECK(cd.count({line5, line7}));
  CHECK(cd.count({line5, line6}));
  CHECK(df.count({line5, line6}));
  CHECK(ns.count({line6, line7}));
  CHECK_FALSE(df.count({"int num", line6}));
}

TEST_CASE("straight-line cfg is a chain") {
  auto b = hcr::build_hcr("void f(int a){ a = 1; a = 2; g(a); }");
  auto cfg = graph::build_cfg(b.tree, b.hierarchy);
  CHECK(cfg.succ[static_cast<std::size_t>(cfg.entry)] == std::vector<int>{0});
  CHECK(cfg.succ[0] == std::vector<int>{1});
  CHECK(cfg.succ[1] == std::vector<int>{2});
  CHECK(cfg.succ[2] == std::vector<int>{3});
  CHECK(cfg.succ[3] == std::vector<int>{cfg.exit});
  auto sem = graph::analyze(b.tree, b.hierarchy, b.code);
  CHECK(sem.cd.empty());
  // only the second store reaches the call
  CHECK(named_df(b, sem.df) == std::set<Pair>{{"a = 2", "g(a)"}});
}

TEST_CASE("if/else branches rejoin") {
  auto b = hcr::build_hcr("void f(int a){ if (a > 0) { a = 1; } else { a = 2; } g(a); }");
  auto cfg = graph::build_cfg(b.tree, b.hierarchy);
  CHECK(cfg.succ[1] == std::vector<int>{2, 3});
  CHECK(cfg.succ[2] == std::vector<int>{4});
  CHECK(cfg.succ[3] == std::vector<int>{4});
}

TEST_CASE("while loop has a back edge to its condition") {
  auto b = hcr::build_hcr("void f(int a){ while (a > 0) { a--; g(a); } }");
  auto cfg = graph::build_cfg(b.tree, b.hierarchy);
  CHECK(cfg.succ[1] == std::vector<int>{2, cfg.exit});
  CHECK(cfg.succ[3] == std::vector<int>{1});
  auto sem = graph::analyze(b.tree, b.hierarchy, b.code);
  auto df = named_df(b, sem.df);
  CHECK(df.count({"a--", "a > 0"}));
  CHECK(df.count({"a--", "a--"}));
}

TEST_CASE("try block statements reach each catch") {
  auto b = hcr::build_hcr(
      "void f(int a){ try { a = g(a); h(a); } catch (IOException e) { a = 0; } catch (Exception e) { a = 1; } k(a); }");
  auto cfg = graph::build_cfg(b.tree, b.hierarchy);
  // units: 0 header, 1 a = g(a), 2 h(a), 3 a = 0, 4 a = 1, 5 k(a)
  CHECK(cfg.succ[1] == std::vector<int>{2, 3, 4});
  CHECK(cfg.succ[2] == std::vector<int>{3, 4, 5});
}

TEST_CASE("break and continue") {
  auto b = hcr::build_hcr("void f(int a){ for (int i = 0; i < a; i++) { if (i > 3) { break; } if (i == 1) { continue; } g(i); } h(); }");
  auto cfg = graph::build_cfg(b.tree, b.hierarchy);
  // 0 header, 1 int i = 0, 2 i < a, 3 i++, 4 i > 3, 5 break, 6 i == 1, 7 continue, 8 g(i), 9 h()
  CHECK(cfg.succ[5] == std::vector<int>{9});
  CHECK(cfg.succ[7] == std::vector<int>{3});
  CHECK(cfg.succ[8] == std::vector<int>{3});
  CHECK(cfg.succ[3] == std::vector<int>{2});
  CHECK(cfg.succ[2] == std::vector<int>{4, 9});
}

TEST_CASE("switch falls through and exits") {
  auto b = hcr::build_hcr("void f(int a){ switch (a) { case 1: g(); case 2: h(); break; default: k(); } m(); }");
  auto cfg = graph::build_cfg(b.tree, b.hierarchy);
  // 0 header, 1 a, 2 g(), 3 h(), 4 break, 5 k(), 6 m()
  CHECK(cfg.succ[1] == std::vector<int>{2, 3, 5});
  CHECK(cfg.succ[2] == std::vector<int>{3});
  CHECK(cfg.succ[4] == std::vector<int>{6});
  CHECK(cfg.succ[5] == std::vector<int>{6});
  auto sem = graph::analyze(b.tree, b.hierarchy, b.code);
  CHECK(named(b, sem.cd) == std::set<Pair>{{"a", "g()"}, {"a", "h()"}, {"a", "break"}, {"a", "k()"}});
}

TEST_CASE("resource governs the try body") {
  auto b = hcr::build_hcr("void f(String p){ try (Reader r = open(p)) { read(r); } catch (Exception e) { log(e); } }");
  auto sem = graph::analyze(b.tree, b.hierarchy, b.code);
  auto cd = named(b, sem.cd);
  CHECK(cd == std::set<Pair>{{"(Reader r = open(p))", "read(r)"}});
  CHECK(named_df(b, sem.df).count({"(Reader r = open(p))", "read(r)"}));
}

TEST_CASE("field access uses the object only") {
  auto b = hcr::build_hcr("void f(Point p){ int x = p.x; p.move(x); }");
  auto du = graph::collect_defs_uses(b.tree, b.hierarchy, b.code);
  CHECK(du[1].defs == std::set<std::string>{"x"});
  CHECK(du[1].uses == std::set<std::string>{"p"});
  CHECK(du[2].uses == std::set<std::string>{"p", "x"});
  CHECK(du[0].defs == std::set<std::string>{"p"});
}

TEST_CASE("compound assignment and update are def and use") {
  auto b = hcr::build_hcr("void f(int a, int b){ a += b; b++; }");
  auto du = graph::collect_defs_uses(b.tree, b.hierarchy, b.code);
  CHECK(du[1].defs == std::set<std::string>{"a"});
  CHECK(du[1].uses == std::set<std::string>{"a", "b"});
  CHECK(du[2].defs == std::set<std::string>{"b"});
  CHECK(du[2].uses == std::set<std::string>{"b"});
}

TEST_CASE("reaching definitions agree with path enumeration on random DAGs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 1 + trial % 6;
    auto dag = testing::random_dag(rng, n, 1 + trial % 3);
    CHECK(graph::reaching_definitions(dag.cfg, dag.du) == testing::brute_force_reaching(dag.cfg, dag.du));
  }
}

TEST_CASE("reaching definitions agree with path enumeration on generated methods") {
  for (unsigned seed = 0; seed < 300; ++seed) {
    testing::JavaGen gen(seed, false);
    auto src = gen.small_method(6);
    auto b = hcr::build_hcr(src);
    auto cfg = graph::build_cfg(b.tree, b.hierarchy);
    auto du = graph::collect_defs_uses(b.tree, b.hierarchy, b.code);
    INFO(src);
    CHECK(graph::reaching_definitions(cfg, du) == testing::brute_force_reaching(cfg, du));
  }
}

TEST_CASE("edge filtering is exact") {
  testing::JavaGen gen(3);
  for (int i = 0; i < 20; ++i) {
    auto src = gen.method();
    auto b = hcr::build_hcr(src);
    auto sem = graph::analyze(b.tree, b.hierarchy, b.code);
    for (int mask = 0; mask < 32; ++mask) {
      graph::EdgeFlags f{bool(mask & 1), bool(mask & 2), bool(mask & 4), bool(mask & 8), bool(mask & 16)};
      auto direct = graph::assemble_graph(b.hierarchy, sem, f);
      CHECK(direct.edges == b.graph.filtered(f).edges);
    }
  }
}

TEST_CASE("ast-only flags give exactly the T' tree") {
  auto b = hcr::build_hcr(kMax, graph::EdgeFlags::parse("ast", false));
  CHECK(b.graph.edges.size() == b.hierarchy.reduced.nodes.size() - 1);
  for (const auto& e : b.graph.edges) {
    CHECK(e.type == EdgeType::ast);
    const auto& parent = b.hierarchy.reduced.nodes[static_cast<std::size_t>(e.src)];
    CHECK(b.hierarchy.reduced.nodes[static_cast<std::size_t>(e.dst)].parent == parent.id);
  }
  auto no_df = hcr::build_hcr(kMax, graph::EdgeFlags::parse("ast,cd,ns"));
  CHECK(no_df.graph.count(EdgeType::df) == 0);
  CHECK(no_df.graph.count(EdgeType::df_rev) == 0);
}

TEST_CASE("edge flag parsing") {
  auto f = graph::EdgeFlags::parse("AST, df");
  CHECK(f.use_ast);
  CHECK(f.use_df);
  CHECK_FALSE(f.use_cd);
  CHECK(f.to_string() == "ast,df");
  CHECK_THROWS_AS(graph::EdgeFlags::parse("ast,xx"), UsageError);
}

TEST_CASE("dot export colors the four edge kinds") {
  auto b = hcr::build_hcr(kMax);
  auto dot = hcr::graph_to_dot(b);
  for (const char* c : {"color=green", "color=red", "color=gold", "color=blue"}) CHECK(dot.find(c) != std::string::npos);
  auto tree = hcr::reduced_tree_to_dot(b);
  CHECK(tree.find("fillcolor=lightgrey") != std::string::npos);
}
