#include <doctest.h>

#include <algorithm>
#include <string>

#include "hcr/hcr.h"
#include "support/java_gen.h"
#include "support/oracles.h"

using namespace hnet;

namespace {

const char* kMax = "int max(int a,int b){int max=a; if(a<b){max=b;} return max;}";

std::string text_of(const hcr::HcrBundle& b, const hierarchy::Subtree& st) {
  const auto& sp = b.tree.at(st.root).span;
  return b.code.substr(sp.begin, sp.end - sp.begin);
}

}  // namespace

TEST_CASE("classification of statement roots") {
  auto b = hcr::build_hcr(kMax);
  for (const auto& n : b.tree.nodes) {
    auto kind = hierarchy::classify_subtree_root(b.tree, n.id);
    if (n.type == "return_statement") {
      REQUIRE(kind);
      CHECK(kind->category == hierarchy::SubtreeCategory::simple_statement);
    }
    if (n.type == "if_statement") CHECK_FALSE(kind);
    if (n.type == "binary_expression") {
      REQUIRE(kind);
      CHECK(kind->category == hierarchy::SubtreeCategory::expression);
    }
  }
}

TEST_CASE("max method subtrees") {
  auto b = hcr::build_hcr(kMax);
  std::vector<std::string> got;
  for (const auto& st : b.hierarchy.subtrees) got.push_back(text_of(b, st));
  CHECK(got == std::vector<std::string>{"int max(int a,int b)", "int max=a;", "a<b", "max=b;", "return max;"});
  CHECK(b.hierarchy.subtrees[0].kind.category == hierarchy::SubtreeCategory::method_header);
  CHECK(b.hierarchy.subtrees[3].kind.variant == "assignment_statement");
  bool kept_if = false, kept_block = false;
  for (const auto& rn : b.hierarchy.reduced.nodes) {
    kept_if |= rn.type == "if_statement";
    kept_block |= rn.type == "block";
  }
  CHECK(kept_if);
  CHECK(kept_block);
  CHECK(testing::check_bundle(b).empty());
}

TEST_CASE("empty body leaves only the header") {
  auto b = hcr::build_hcr("void f(){}");
  REQUIRE(b.hierarchy.subtrees.size() == 1);
  CHECK(b.hierarchy.subtrees[0].kind.category == hierarchy::SubtreeCategory::method_header);
  std::vector<std::string> types;
  for (const auto& rn : b.hierarchy.reduced.nodes) types.push_back(rn.type);
  CHECK(types == std::vector<std::string>{"method_declaration", hierarchy::kPlaceholderType, "separator", "separator"});
}

TEST_CASE("nested if extracts the outer condition and the inner statements") {
  auto b = hcr::build_hcr("void f(int a){ if (a > 0) { if (a > 5) { a = 1; } a--; } }");
  std::vector<std::string> variants;
  for (const auto& st : b.hierarchy.subtrees) variants.push_back(st.kind.variant);
  CHECK(variants == std::vector<std::string>{"method_header", "binary_expression", "binary_expression",
                                             "assignment_statement", "expression_statement"});
  for (const auto& st : b.hierarchy.subtrees) CHECK(b.tree.at(st.root).type != "if_statement");
}

TEST_CASE("expressions inside statements stay inside") {
  auto b = hcr::build_hcr("int f(int a){ return a > 0 ? helper(a) : -a; }");
  CHECK(b.hierarchy.subtrees.size() == 2);
}

TEST_CASE("alignment maps every L position to the unit owning it") {
  auto b = hcr::build_hcr(kMax);
  const auto& al = b.hierarchy.alignment;
  for (std::size_t i = 0; i < b.seq.nodes.size(); ++i) {
    int node = b.seq.nodes[i];
    const auto& unit = al.units.at(static_cast<std::size_t>(al.owner[i]));
    if (unit.is_subtree()) {
      const auto& nodes = b.hierarchy.subtrees[static_cast<std::size_t>(unit.subtree)].nodes;
      CHECK(std::find(nodes.begin(), nodes.end(), node) != nodes.end());
    } else {
      CHECK(unit.ast_node == node);
    }
  }
}

TEST_CASE("generated methods keep the structural invariants") {
  for (unsigned seed = 0; seed < 200; ++seed) {
    testing::JavaGen gen(seed);
    std::string src = gen.method();
    hcr::HcrBundle b;
    REQUIRE_NOTHROW(b = hcr::build_hcr(src));
    auto bad = testing::check_bundle(b);
    INFO(src);
    CHECK(bad.empty());
  }
}

TEST_CASE("extraction is deterministic") {
  testing::JavaGen gen(7);
  std::string src = gen.method();
  CHECK(hcr::to_json(hcr::build_hcr(src)) == hcr::to_json(hcr::build_hcr(src)));
}

TEST_CASE("bundle json round trip") {
  auto b = hcr::build_hcr("int f(int x){ try { x = g(x); } catch (Exception e) { x = 0; } return x; }");
  auto j = hcr::to_json(b);
  auto back = hcr::from_json(j);
  CHECK(hcr::to_json(back) == j);
  CHECK(back.graph.edges == b.graph.edges);
}
