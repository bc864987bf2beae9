#include "sumtab/chrf.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "sumtab/utf8.hpp"

namespace sumtab {

namespace {

std::u32string strip_whitespace(std::string_view s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp = utf8::decode_at(s, i);
    if (cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r') continue;
    out.push_back(cp);
  }
  return out;
}

struct U32Hash {
  std::size_t operator()(const std::u32string& s) const {
    std::size_t h = 1469598103934665603ULL;
    for (char32_t c : s) {
      h ^= static_cast<std::size_t>(c);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

using NgramCounts = std::unordered_map<std::u32string, long long, U32Hash>;

NgramCounts count_ngrams(const std::u32string& s, int n) {
  NgramCounts counts;
  if (static_cast<int>(s.size()) >= n) {
    for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[s.substr(i, n)];
  }
  return counts;
}

}  // namespace

double chrf(std::string_view hyp, std::string_view ref,
            const ChrfParams& params) {
  const std::u32string h = strip_whitespace(hyp);
  const std::u32string r = strip_whitespace(ref);
  if (h.empty() && r.empty()) return 100.0;
  if (h.empty() || r.empty()) return 0.0;

  double sum_p = 0.0, sum_r = 0.0;
  int orders = 0;
  for (int n = 1; n <= params.max_order; ++n) {
    NgramCounts ref_grams = count_ngrams(r, n);
    if (ref_grams.empty()) continue;
    NgramCounts hyp_grams = count_ngrams(h, n);
    long long matches = 0, hyp_total = 0, ref_total = 0;
    for (const auto& [gram, c] : ref_grams) {
      ref_total += c;
      auto it = hyp_grams.find(gram);
      if (it != hyp_grams.end()) matches += std::min(c, it->second);
    }
    for (const auto& [gram, c] : hyp_grams) hyp_total += c;
    sum_p += hyp_total > 0 ? static_cast<double>(matches) / hyp_total : 0.0;
    sum_r += static_cast<double>(matches) / ref_total;
    ++orders;
  }
  if (orders == 0) return 0.0;

  const double p = sum_p / orders;
  const double q = sum_r / orders;
  const double b2 = params.beta * params.beta;
  const double coeff =
      params.eq1_literal ? (1.0 + params.beta) * (1.0 + params.beta)
                         : 1.0 + b2;
  const double den = b2 * p + q;
  if (den == 0.0) return 0.0;
  return 100.0 * coeff * p * q / den;
}

std::string strip_specials(std::string_view text) {
  static const std::vector<std::string_view> kLiterals = {
      "<SURFACE>", "<RULING>", "<COLUMN>", "<BLANK_SPACE>", "<UNK>", "..."};
  std::string s(text);
  for (std::string_view lit : kLiterals) {
    std::size_t at;
    while ((at = s.find(lit)) != std::string::npos) s.erase(at, lit.size());
  }
  return s;
}

ChrfReport evaluate_corpus(const std::map<std::string, std::string>& preds,
                           const std::vector<TabletRecord>& refs,
                           const ChrfParams& params) {
  bool any = false;
  for (const auto& rec : refs)
    if (preds.count(rec.id)) any = true;
  if (!any)
    throw CorpusError("evaluate_corpus: no prediction matches any reference");

  ChrfReport report;
  std::map<std::string, std::pair<double, long long>> period_acc, genre_acc;
  double total = 0.0;
  for (const auto& rec : refs) {
    std::string ref_text = render_transliteration(rec.translit);
    double score = 0.0;
    auto it = preds.find(rec.id);
    if (it == preds.end()) {
      report.missing.push_back(rec.id);
    } else {
      std::string hyp_text = it->second;
      if (!params.include_specials) {
        hyp_text = strip_specials(hyp_text);
        ref_text = strip_specials(ref_text);
      }
      score = chrf(hyp_text, ref_text, params);
    }
    report.per_tablet[rec.id] = score;
    period_acc[rec.period].first += score;
    ++period_acc[rec.period].second;
    genre_acc[rec.genre].first += score;
    ++genre_acc[rec.genre].second;
    total += score;
  }
  for (const auto& [label, acc] : period_acc)
    report.by_period[label] = acc.first / acc.second;
  for (const auto& [label, acc] : genre_acc)
    report.by_genre[label] = acc.first / acc.second;
  report.overall = refs.empty() ? 0.0 : total / refs.size();
  return report;
}

nlohmann::json report_to_json(const ChrfReport& report) {
  return nlohmann::json{{"overall", report.overall},
                        {"by_period", report.by_period},
                        {"by_genre", report.by_genre},
                        {"per_tablet", report.per_tablet},
                        {"missing", report.missing}};
}

std::string report_tsv(
    const std::vector<std::pair<std::string, const ChrfReport*>>& systems) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed;
  out << "Category";
  for (const auto& [name, _] : systems) out << '\t' << name;
  out << '\n';

  auto emit_block = [&](const char* header,
                        const std::vector<std::string>& labels,
                        auto member) {
    out << header << '\n';
    for (const auto& label : labels) {
      bool present = false;
      for (const auto& [_, rep] : systems)
        if ((rep->*member).count(label)) present = true;
      if (!present) continue;
      out << label;
      for (const auto& [_, rep] : systems) {
        auto it = (rep->*member).find(label);
        out << '\t';
        if (it != (rep->*member).end()) out << it->second;
      }
      out << '\n';
    }
  };
  emit_block("Period", kPeriodLabels, &ChrfReport::by_period);
  emit_block("Genre", kGenreLabels, &ChrfReport::by_genre);
  out << "Overall";
  for (const auto& [_, rep] : systems) out << '\t' << rep->overall;
  out << '\n';
  return out.str();
}

}  // namespace sumtab
