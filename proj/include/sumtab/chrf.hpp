#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sumtab/corpus.hpp"

namespace sumtab {

struct ChrfParams {
  double beta = 2.0;
  int max_order = 6;
  bool include_specials = true;
  // Reproduces the printed-formula coefficient (1+beta)^2 instead of the
  // canonical (1+beta^2). Off by default.
  bool eq1_literal = false;
};

// Character n-gram F-score in [0,100]. Whitespace is removed before
// counting; orders with no reference n-grams are excluded from the
// order-average. Both empty -> 100, exactly one empty -> 0.
double chrf(std::string_view hyp, std::string_view ref,
            const ChrfParams& params = {});

struct ChrfReport {
  std::map<std::string, double> per_tablet;
  std::map<std::string, double> by_period;
  std::map<std::string, double> by_genre;
  double overall = 0.0;
  std::vector<std::string> missing;  // reference ids with no prediction
};

// Scores each tablet's prediction against its reference transliteration,
// then macro-averages by period, genre, and overall. Missing predictions
// score 0 and are flagged. Throws when no prediction id matches.
ChrfReport evaluate_corpus(const std::map<std::string, std::string>& preds,
                           const std::vector<TabletRecord>& refs,
                           const ChrfParams& params = {});

// Deletes special-token serializations from a scoring string.
std::string strip_specials(std::string_view text);

nlohmann::json report_to_json(const ChrfReport& report);

// Table-4-shaped TSV: period/genre rows, one column per system.
std::string report_tsv(
    const std::vector<std::pair<std::string, const ChrfReport*>>& systems);

}  // namespace sumtab
