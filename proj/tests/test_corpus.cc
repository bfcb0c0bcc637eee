#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "corpus/bpe.h"
#include "corpus/dataset.h"
#include "corpus/preprocess.h"

using namespace hnet;
using namespace hnet::corpus;

TEST_CASE("code preprocessing replaces string literals") {
  CHECK(preprocess_code("log(\"hi \" + name);") == "log(<str> + name);");
  CHECK(preprocess_code("s = \"a\\\"b\";") == "s = <str>;");
  CHECK(preprocess_code("c = '\"'; s = \"x\";") == "c = '\"'; s = <str>;");
  // quotes inside comments are not literals
  CHECK(preprocess_code("// say \"hi\nx = 1; /* \" */") == "// say \"hi\nx = 1; /* \" */");
  CHECK(preprocess_code("s = \"\"\"\n  block \"q\"\n  \"\"\";") == "s = <str>;");
  CHECK_THROWS_AS(preprocess_code("s = \"open;"), UnterminatedString);
}

TEST_CASE("code preprocessing is idempotent") {
  const std::vector<std::string> cases = {
      "void f(){ log(\"a\" + \"b\"); }", "String g(){ return \"x\\\\\"; }", "int h(){ return 'a'; }",
      "void k(){ s = \"\"\"\nt\"\"\"; // \"c\"\n}"};
  for (const auto& c : cases) {
    auto once = preprocess_code(c);
    CHECK(preprocess_code(once) == once);
  }
}

TEST_CASE("summary preprocessing keeps the first sentence") {
  CHECK(preprocess_summary("Returns the  Maximum. Never null.") == "returns the maximum.");
  CHECK(preprocess_summary("Checks e.g. lists! Then more") == "checks e.g. lists!");
  CHECK(preprocess_summary("  Sorts\tthe\narray ") == "sorts the array");
  CHECK(preprocess_summary("one two three four five", 3) == "one two three");
  CHECK_THROWS_AS(preprocess_summary("   \n "), EmptyAfterPreprocess);
  auto s = preprocess_summary("Adds an item to the list. Returns false.");
  CHECK(preprocess_summary(s) == s);
}

TEST_CASE("bpe round trip") {
  std::vector<std::string> corpus = {"int max ( int a , int b )", "return a + b ;", "  indented\tline\n",
                                     "mixed CASE and_symbols 123"};
  auto tok = BpeTokenizer::train(corpus, 120);
  for (const auto& s : corpus) CHECK(tok.decode(tok.encode(s)) == s);
  // bytes never seen in training become <unk>; text made of seen bytes survives
  CHECK(tok.decode(tok.encode("bad")) == "bad");
  auto ids = tok.encode("@");
  REQUIRE(ids.size() == 1);
  CHECK(ids[0] == 3);
}

TEST_CASE("bpe with vocab at the alphabet size learns no merges") {
  std::vector<std::string> corpus = {"abc cab"};
  // alphabet: a b c space
  auto tok = BpeTokenizer::train(corpus, 6 + 4);
  CHECK(tok.merges().empty());
  CHECK(tok.size() == 10);
  CHECK_THROWS_AS(BpeTokenizer::train(corpus, 9), VocabTooSmall);
  CHECK_THROWS_AS(BpeTokenizer::train(corpus, 6), VocabTooSmall);
}

TEST_CASE("bpe first merge is the most frequent pair") {
  std::vector<std::string> corpus(100, "aaab");
  auto tok = BpeTokenizer::train(corpus, 6 + 2 + 1);
  REQUIRE(tok.merges().size() == 1);
  CHECK(tok.merges()[0] == std::make_pair(std::string("a"), std::string("a")));
  CHECK(tok.id_of("aa") == 8);
}

TEST_CASE("bpe frequency ties break toward the smallest pair") {
  // "ab" and "cd" both occur once
  auto tok = BpeTokenizer::train({"ab cd"}, 6 + 5 + 1);
  REQUIRE(tok.merges().size() == 1);
  CHECK(tok.merges()[0] == std::make_pair(std::string(" "), std::string("c")));
}

TEST_CASE("bpe training is deterministic and persists") {
  std::vector<std::string> corpus;
  std::mt19937_64 rng(3);
  const std::string letters = "abcdefgh ";
  for (int i = 0; i < 50; ++i) {
    std::string s;
    for (int k = 0; k < 30; ++k) s += letters[rng() % letters.size()];
    corpus.push_back(s);
  }
  auto a = BpeTokenizer::train(corpus, 80);
  auto b = BpeTokenizer::train(corpus, 80);
  CHECK(a.merges() == b.merges());
  for (const auto& s : corpus) CHECK(a.encode(s) == b.encode(s));

  auto dir = std::filesystem::temp_directory_path() / "hnet_bpe_test";
  std::filesystem::create_directories(dir);
  a.save(dir.string(), "src");
  auto c = BpeTokenizer::load(dir.string(), "src");
  CHECK(c.size() == a.size());
  CHECK(c.merges() == a.merges());
  for (const auto& s : corpus) CHECK(c.encode(s) == a.encode(s));
  std::filesystem::remove_all(dir);
}

TEST_CASE("bpe decode skips control ids") {
  auto tok = BpeTokenizer::train({"x y"}, 20);
  auto ids = tok.encode("x y");
  ids.insert(ids.begin(), 1);
  ids.push_back(2);
  ids.push_back(0);
  CHECK(tok.decode(ids) == "x y");
  CHECK(tok.decode({4}) == "<str>");
}

TEST_CASE("early stopping stops patience epochs after the peak") {
  SUBCASE("peak then plateau") {
    EarlyStopping es(2);
    CHECK_FALSE(es.update(1.0));
    CHECK_FALSE(es.update(2.0));
    CHECK_FALSE(es.update(2.0));  // ties are not improvements
    CHECK(es.update(1.5));
    CHECK(es.best_epoch() == 1);
    CHECK(es.best() == 2.0);
    CHECK(es.epochs() == 4);
  }
  SUBCASE("patience zero stops at the first non-improvement") {
    EarlyStopping es(0);
    CHECK_FALSE(es.update(1.0));
    CHECK_FALSE(es.update(1.1));
    CHECK(es.update(1.1));
  }
  SUBCASE("an improvement resets the count") {
    EarlyStopping es(1);
    CHECK_FALSE(es.update(0.0));
    CHECK_FALSE(es.update(3.0));
    CHECK(es.improved());
    CHECK(es.update(2.0));
  }
  SUBCASE("property: stop epoch equals peak plus max(patience, 1)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      int patience = static_cast<int>(rng() % 5);
      EarlyStopping es(patience);
      double best = -1;
      int peak = -1, stopped = -1;
      for (int e = 0; e < 60; ++e) {
        double m = static_cast<double>(rng() % 10);
        if (m > best) {
          best = m;
          peak = e;
        }
        if (es.update(m)) {
          stopped = e;
          break;
        }
      }
      if (stopped >= 0) {
        CHECK(stopped == peak + std::max(patience, 1));
        CHECK(es.best_epoch() == peak);
      }
    }
  }
}

TEST_CASE("batches never mix splits") {
  std::vector<Split> splits;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 101; ++i) splits.push_back(static_cast<Split>(rng() % 3));
  for (Split which : {Split::train, Split::valid, Split::test}) {
    auto batches = make_batches(splits, which, 7, 42, true);
    std::multiset<std::size_t> seen;
    for (const auto& b : batches) {
      CHECK(b.split == which);
      CHECK(b.indices.size() <= 7);
      for (auto i : b.indices) {
        CHECK(splits[i] == which);
        seen.insert(i);
      }
    }
    std::size_t expected = static_cast<std::size_t>(std::count(splits.begin(), splits.end(), which));
    CHECK(seen.size() == expected);
    CHECK(std::set<std::size_t>(seen.begin(), seen.end()).size() == expected);
  }
  CHECK(make_batches(splits, Split::train, 7, 42, true)[0].indices ==
        make_batches(splits, Split::train, 7, 42, true)[0].indices);
  CHECK_THROWS_AS(make_batches(splits, Split::train, 0, 1, false), UsageError);
}

TEST_CASE("padding mask marks real positions") {
  auto p = pad_sequences({{7, 8, 9}, {5}, {}});
  REQUIRE(p.ids.size() == 3);
  CHECK(p.ids[1] == std::vector<int>{5, 0, 0});
  CHECK(p.mask[0] == std::vector<char>{1, 1, 1});
  CHECK(p.mask[1] == std::vector<char>{1, 0, 0});
  CHECK(p.mask[2] == std::vector<char>{0, 0, 0});
}

TEST_CASE("split names") {
  CHECK(parse_split("dev") == Split::valid);
  CHECK(parse_split("validation") == Split::valid);
  CHECK(std::string(split_name(Split::test)) == "test");
  CHECK_THROWS(parse_split("holdout"));
}

TEST_CASE("jsonl round trip and corpus converters") {
  auto dir = std::filesystem::temp_directory_path() / "hnet_corpus_test";
  std::filesystem::create_directories(dir);
  std::vector<RawExample> ex = {{"int f(){return 1;}", "Returns one.", Split::train},
                                {"void g(){}", "Does nothing.", Split::test}};
  write_jsonl((dir / "a.jsonl").string(), ex);
  auto back = read_jsonl((dir / "a.jsonl").string());
  REQUIRE(back.size() == 2);
  CHECK(back[1].code == ex[1].code);
  CHECK(back[1].split == Split::test);

  {
    std::ofstream c(dir / "code.txt"), s(dir / "nl.txt");
    c << "int a(){return 0;}\nint b(){return 1;}\n";
    s << "zero\none\n";
  }
  auto dc = convert("deepcom", {(dir / "code.txt").string(), (dir / "nl.txt").string()}, Split::valid);
  REQUIRE(dc.size() == 2);
  CHECK(dc[1].summary == "one");
  CHECK(dc[1].split == Split::valid);
  {
    std::ofstream f(dir / "csn.jsonl");
    f << R"({"code":"int a(){return 0;}","docstring":"Zero."})" << "\n";
  }
  auto csn = convert("codesearchnet", {(dir / "csn.jsonl").string()}, Split::train);
  REQUIRE(csn.size() == 1);
  CHECK(csn[0].summary == "Zero.");
  CHECK_THROWS_AS(convert("nope", {}, Split::train), UsageError);
  std::filesystem::remove_all(dir);
}
