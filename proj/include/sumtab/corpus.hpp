#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sumtab/glyph_map.hpp"
#include "sumtab/signlist.hpp"
#include "sumtab/translit.hpp"

namespace sumtab {

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flattened cdl document: structural specials plus raw lemma fragments in
// depth-first order, before annotation cleanup.
struct RawNode {
  bool is_special = false;
  SpecialKind special = SpecialKind::Unk;
  std::string frag;

  static RawNode make(SpecialKind k) { return {true, k, {}}; }
  static RawNode make(std::string f) {
    return {false, SpecialKind::Unk, std::move(f)};
  }
};

struct RawDocument {
  std::string id;
  std::vector<RawNode> nodes;
  std::size_t skipped_delimiters = 0;
};

// Walks {"node":"c"|"d"|"l"} trees. Unknown node discriminators are a
// document-level error; unknown delimiter kinds are skipped with a count.
RawDocument parse_cdl(const nlohmann::json& doc);

struct CatalogueEntry {
  std::string period = "Unknown";
  std::string genre = "Unknown";
};

class Catalogue {
 public:
  static Catalogue load(const nlohmann::json& j);
  static Catalogue load_file(const std::string& path);

  CatalogueEntry lookup(const std::string& id) const;
  std::size_t size() const { return entries_.size(); }

  // Maps upstream label variants (e.g. "Ur III (ca. 2100-2000 BC)") onto
  // the closed period/genre label sets; unmatched labels become "Unknown".
  static std::string normalize_period(std::string_view label);
  static std::string normalize_genre(std::string_view label);

 private:
  std::map<std::string, CatalogueEntry> entries_;
};

struct TabletRecord {
  std::string id;
  std::string period = "Unknown";
  std::string genre = "Unknown";
  std::vector<GlyphToken> glyphs;
  TokenStream translit;
  MappingStats stats;
  std::size_t warnings = 0;
};

TabletRecord build_tablet(const nlohmann::json& doc, const Catalogue& cat,
                          const SignList& list);

struct SplitRatios {
  double train = 0.90;
  double validation = 0.05;
  double test = 0.05;
};

struct SplitAssignment {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

// Period-stratified split. Lexical-genre tablets are set aside first and
// appended to train afterwards; within each period ids are sorted, shuffled
// with a seed derived from (seed, period), and allocated by
// largest-remainder rounding.
SplitAssignment stratified_split(const std::vector<TabletRecord>& corpus,
                                 const SplitRatios& ratios, std::uint64_t seed);

// Largest-remainder apportionment of n into the three splits; remainder
// ties resolve train, validation, test.
std::array<std::size_t, 3> allocate_counts(std::size_t n,
                                           const SplitRatios& ratios);

nlohmann::json record_to_json(const TabletRecord& rec);
TabletRecord record_from_json(const nlohmann::json& j);

// train.jsonl / validation.jsonl / test.jsonl + stats.json, records sorted
// by id; byte-deterministic.
void export_dataset(const std::vector<TabletRecord>& corpus,
                    const SplitAssignment& assignment,
                    const std::string& out_dir);

std::vector<TabletRecord> load_dataset_file(const std::string& path);

nlohmann::json corpus_stats(const std::vector<TabletRecord>& corpus,
                            const SplitAssignment* assignment = nullptr);

extern const std::vector<std::string> kPeriodLabels;  // Table-3 period set
extern const std::vector<std::string> kGenreLabels;   // Table-3 genre set

}  // namespace sumtab
