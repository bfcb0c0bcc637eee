#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "common/error.h"

namespace hnet::eval {

using Tokens = std::vector<std::string>;

class LengthMismatch : public UsageError {
 public:
  LengthMismatch(std::size_t refs, std::size_t hyps)
      : UsageError(std::to_string(refs) + " references vs " + std::to_string(hyps) + " hypotheses") {}
};

// Lowercased whitespace tokens.
Tokens tokenize(const std::string& text);

// Corpus BLEU-4 in [0,100]: clipped n-gram counts summed over the corpus,
// p1 = c1/t1 and p_n = (c_n+1)/(t_n+1) for n = 2..4, geometric mean times
// the brevity penalty.
double bleu4(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps);
double sentence_bleu4(const Tokens& ref, const Tokens& hyp);

// LCS F-measure with beta = 1.2, averaged over examples, in [0,100].
inline constexpr double kRougeBeta = 1.2;
double rouge_l(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps);
double sentence_rouge_l(const Tokens& ref, const Tokens& hyp);
std::size_t lcs_length(const Tokens& a, const Tokens& b);

// Bag-of-tokens F1 averaged over examples, in [0,100].
double token_f1(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps);
double sentence_token_f1(const Tokens& ref, const Tokens& hyp);

struct ExampleScore {
  std::string reference;
  std::string hypothesis;
  double bleu4 = 0;
  double rouge_l = 0;
  double f1 = 0;
};

struct EvalReport {
  double bleu4 = 0;
  double rouge_l = 0;
  double f1 = 0;
  std::size_t count = 0;
  std::vector<ExampleScore> examples;
};

EvalReport evaluate(const std::vector<std::string>& refs, const std::vector<std::string>& hyps);
nlohmann::json to_json(const EvalReport& r);
std::string to_table(const EvalReport& r);

extern const char* const kBleuVariant;

}  // namespace hnet::eval
