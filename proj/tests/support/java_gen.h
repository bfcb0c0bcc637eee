#pragma once

// Random Java methods in the supported subset, for fuzzing the front end and
// the graph builder. Output is deterministic per seed.

#include <random>
#include <string>
#include <vector>

namespace hnet::testing {

class JavaGen {
 public:
  explicit JavaGen(unsigned seed, bool loops = true) : rng_(seed), loops_(loops) {}

  std::string method() {
    fresh_ = 0;
    std::string out = "int " + pick({"compute", "getItemCount", "max_value", "run2x"}) +
                      "(int a, int b, int itemCount) {\n";
    int n = range(1, 5);
    for (int i = 0; i < n; ++i) out += stmt(0, false);
    out += "return " + expr(0) + ";\n}";
    return out;
  }

  // Straight-line/branching body with at most `max_units` statements.
  std::string small_method(int max_units) {
    fresh_ = 0;
    budget_ = max_units;
    std::string out = "void f(int a, int b, int c) {\n";
    while (budget_ > 0) out += small_stmt(0);
    out += "}";
    budget_ = -1;
    return out;
  }

 private:
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::string pick(std::initializer_list<const char*> xs) {
    auto it = xs.begin();
    std::advance(it, range(0, static_cast<int>(xs.size()) - 1));
    return *it;
  }

  std::string var() { return pick({"a", "b", "itemCount"}); }

  std::string expr(int depth) {
    int choice = depth > 2 ? range(0, 1) : range(0, 8);
    switch (choice) {
      case 0: return var();
      case 1: return std::to_string(range(0, 99));
      case 2: return expr(depth + 1) + " " + pick({"+", "-", "*", "/", "%", "<<", ">>"}) + " " + expr(depth + 1);
      case 3: return pick({"helper", "Math.abs", "this.scaleValue"}) + "(" + expr(depth + 1) + ")";
      case 4: return "(" + expr(depth + 1) + ")";
      case 5: return cond(depth + 1) + " ? " + expr(depth + 1) + " : " + expr(depth + 1);
      case 6: return "values[" + var() + "]";
      case 7: return "-" + var();
      default: return "(int) " + var();
    }
  }

  std::string cond(int depth) {
    switch (depth > 2 ? 0 : range(0, 3)) {
      case 0: return var() + " " + pick({"<", ">", "<=", ">=", "==", "!="}) + " " + expr(depth + 1);
      case 1: return cond(depth + 1) + " && " + cond(depth + 1);
      case 2: return "!(" + cond(depth + 1) + ")";
      default: return "isReady(" + var() + ")";
    }
  }

  std::string simple() {
    switch (range(0, 6)) {
      case 0: return "int tmp" + std::to_string(fresh_++) + " = " + expr(0) + ";\n";
      case 1: return var() + " = " + expr(0) + ";\n";
      case 2: return var() + " " + pick({"+=", "-=", "*=", "|="}) + " " + expr(0) + ";\n";
      case 3: return var() + pick({"++", "--"}) + ";\n";
      case 4: return "items.add(" + expr(0) + ");\n";
      case 5: return "log(\"v\", " + var() + ");\n";
      default: return "String s" + std::to_string(fresh_++) + " = \"x\" + " + var() + ";\n";
    }
  }

  std::string block(int depth, bool in_loop) {
    std::string out = "{\n";
    int n = range(0, 3);
    for (int i = 0; i < n; ++i) out += stmt(depth + 1, in_loop);
    if (in_loop && coin(0.2)) out += "if (" + cond(0) + ") { " + pick({"break;", "continue;"}) + " }\n";
    return out + "}\n";
  }

  std::string stmt(int depth, bool in_loop) {
    int kinds = depth >= 3 ? 0 : (loops_ ? 8 : 4);
    int k = range(0, kinds + 4);
    if (k <= 4) return simple();
    if (!loops_ && k > 4) k += 4;  // skip loop kinds
    switch (k) {
      case 5: return "while (" + cond(0) + ") " + block(depth, true);
      case 6: return "for (int i = 0; i < " + var() + "; i++) " + block(depth, true);
      case 7: return "do " + block(depth, true) + "while (" + cond(0) + ");\n";
      case 8: {
        std::string out = "switch (" + var() + ") {\n";
        out += "case 1:\n" + simple() + "break;\n";
        out += "case 2:\n" + simple();
        if (coin()) out += "default:\n" + simple();
        return out + "}\n";
      }
      case 9: {
        std::string out = "if (" + cond(0) + ") " + block(depth, in_loop);
        if (coin()) out += "else " + block(depth, in_loop);
        return out;
      }
      case 10: {
        std::string out = "try " + block(depth, in_loop) + "catch (Exception e) " + block(depth, in_loop);
        if (coin(0.3)) out += "finally " + block(depth, in_loop);
        return out;
      }
      case 11: return block(depth, in_loop);
      default: return "if (" + cond(0) + ") " + block(depth, in_loop) + "else if (" + cond(0) + ") " +
                      block(depth, in_loop);
    }
  }

  // Loop-free statements drawing from a small variable pool; each if head and
  // each simple statement costs one unit of the budget.
  std::string small_stmt(int depth) {
    --budget_;
    if (depth < 2 && budget_ >= 2 && coin(0.35)) {
      std::string out = "if (" + small_var() + " < " + small_var() + ") {\n";
      int n = range(1, 2);
      for (int i = 0; i < n && budget_ > 0; ++i) out += small_stmt(depth + 1);
      out += "}";
      if (budget_ > 0 && coin()) {
        out += " else {\n";
        out += small_stmt(depth + 1);
        out += "}";
      }
      return out + "\n";
    }
    switch (range(0, 3)) {
      case 0: return small_var() + " = " + small_var() + " + 1;\n";
      case 1: return small_var() + " += " + small_var() + ";\n";
      case 2: return "use(" + small_var() + ");\n";
      default: return small_var() + " = 0;\n";
    }
  }

  std::string small_var() { return pick({"a", "b", "c"}); }

  std::mt19937 rng_;
  bool loops_;
  int fresh_ = 0;
  int budget_ = -1;
};

}  // namespace hnet::testing
