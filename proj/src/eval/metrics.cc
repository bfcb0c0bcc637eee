#include "eval/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace hnet::eval {

const char* const kBleuVariant = "corpus BLEU-4, add-one smoothing on orders 2-4, brevity penalty";

Tokens tokenize(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  std::istringstream in(lower);
  Tokens out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

namespace {

void check_lengths(std::size_t r, std::size_t h) {
  if (r != h) throw LengthMismatch(r, h);
}

std::map<Tokens, int> ngrams(const Tokens& t, std::size_t n) {
  std::map<Tokens, int> out;
  for (std::size_t i = 0; i + n <= t.size(); ++i) ++out[Tokens(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return out;
}

struct BleuStats {
  double match[4] = {0, 0, 0, 0};
  double total[4] = {0, 0, 0, 0};
  double hyp_len = 0;
  double ref_len = 0;

  void add(const Tokens& ref, const Tokens& hyp) {
    hyp_len += static_cast<double>(hyp.size());
    ref_len += static_cast<double>(ref.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      auto h = ngrams(hyp, n), r = ngrams(ref, n);
      for (auto& [g, c] : h) {
        auto it = r.find(g);
        match[n - 1] += std::min(c, it == r.end() ? 0 : it->second);
        total[n - 1] += c;
      }
    }
  }

  double score() const {
    if (hyp_len == 0 || match[0] == 0) return 0;
    double log_sum = std::log(match[0] / total[0]);
    for (int n = 1; n < 4; ++n) log_sum += std::log((match[n] + 1) / (total[n] + 1));
    const double bp = hyp_len > ref_len ? 1.0 : std::exp(1 - ref_len / hyp_len);
    return 100 * bp * std::exp(log_sum / 4);
  }
};

}  // namespace

double bleu4(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps) {
  check_lengths(refs.size(), hyps.size());
  BleuStats s;
  for (std::size_t i = 0; i < refs.size(); ++i) s.add(refs[i], hyps[i]);
  return s.score();
}

double sentence_bleu4(const Tokens& ref, const Tokens& hyp) { return bleu4({ref}, {hyp}); }

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double sentence_rouge_l(const Tokens& ref, const Tokens& hyp) {
  if (ref.empty() || hyp.empty()) return ref.empty() && hyp.empty() ? 100 : 0;
  const double l = static_cast<double>(lcs_length(ref, hyp));
  if (l == 0) return 0;
  const double p = l / static_cast<double>(hyp.size()), r = l / static_cast<double>(ref.size());
  const double b2 = kRougeBeta * kRougeBeta;
  return 100 * (1 + b2) * p * r / (r + b2 * p);
}

double sentence_token_f1(const Tokens& ref, const Tokens& hyp) {
  if (ref.empty() || hyp.empty()) return ref.empty() && hyp.empty() ? 100 : 0;
  std::map<std::string, int> r;
  for (auto& t : ref) ++r[t];
  double common = 0;
  for (auto& t : hyp) {
    auto it = r.find(t);
    if (it != r.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0;
  const double p = common / static_cast<double>(hyp.size()), rc = common / static_cast<double>(ref.size());
  return 100 * 2 * p * rc / (p + rc);
}

namespace {

template <typename F>
double average(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps, F f) {
  check_lengths(refs.size(), hyps.size());
  if (refs.empty()) return 0;
  double total = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) total += f(refs[i], hyps[i]);
  return total / static_cast<double>(refs.size());
}

}  // namespace

double rouge_l(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps) {
  return average(refs, hyps, sentence_rouge_l);
}

double token_f1(const std::vector<Tokens>& refs, const std::vector<Tokens>& hyps) {
  return average(refs, hyps, sentence_token_f1);
}

EvalReport evaluate(const std::vector<std::string>& refs, const std::vector<std::string>& hyps) {
  check_lengths(refs.size(), hyps.size());
  std::vector<Tokens> rt, ht;
  EvalReport rep;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    rt.push_back(tokenize(refs[i]));
    ht.push_back(tokenize(hyps[i]));
    rep.examples.push_back({refs[i], hyps[i], sentence_bleu4(rt.back(), ht.back()),
                            sentence_rouge_l(rt.back(), ht.back()), sentence_token_f1(rt.back(), ht.back())});
  }
  rep.count = refs.size();
  rep.bleu4 = bleu4(rt, ht);
  rep.rouge_l = rouge_l(rt, ht);
  rep.f1 = token_f1(rt, ht);
  return rep;
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json ex = nlohmann::json::array();
  for (auto& e : r.examples) {
    ex.push_back({{"reference", e.reference}, {"hypothesis", e.hypothesis}, {"bleu4", e.bleu4},
                  {"rouge_l", e.rouge_l}, {"f1", e.f1}});
  }
  return {{"bleu_variant", kBleuVariant}, {"bleu4", r.bleu4}, {"rouge_l", r.rouge_l}, {"f1", r.f1},
          {"count", r.count}, {"examples", ex}};
}

std::string to_table(const EvalReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "# %s\n%-8s %8s %8s %8s\n%-8zu %8.2f %8.2f %8.2f\n", kBleuVariant, "count", "BLEU-4",
                "ROUGE-L", "F1", r.count, r.bleu4, r.rouge_l, r.f1);
  return buf;
}

}  // namespace hnet::eval
