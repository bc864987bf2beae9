#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sumtab/corpus.hpp"

namespace sumtab {

// One aligned sub-tablet slice fit for a fixed sequence budget.
struct ChunkPair {
  std::string parent_id;
  int index = 0;
  std::string period = "Unknown";
  std::string genre = "Unknown";
  std::vector<GlyphToken> glyphs;
  TokenStream translit;
  std::size_t line_start = 0;  // [line_start, line_end)
  std::size_t line_end = 0;
  bool hard_split = false;

  std::size_t atom_count() const { return translit.atom_count(); }
};

// Splits at newline boundaries, greedily grouping lines with the halving
// schedule {16, 8, 4, 2, 1}; a group is taken when its combined atomic
// token count (specials included, max over both sides) stays under
// max_len. A single line at or over the budget is hard-split at
// max_len - 1 tokens.
std::vector<ChunkPair> chunk_tablet(const TabletRecord& rec,
                                    std::size_t max_len = 128);

struct ManifestItem {
  std::string parent_id;
  int chunk = 0;
  long long repeat = 1;
};

struct SamplingManifest {
  long long factor = 1;
  std::vector<ManifestItem> items;
  long long administrative_chunks = 0;
  long long non_administrative_chunks = 0;

  long long weighted_total() const {
    long long t = 0;
    for (const auto& item : items) t += item.repeat;
    return t;
  }
};

// Non-Administrative chunks repeat `factor` times, Administrative once.
SamplingManifest build_manifest(const std::vector<ChunkPair>& chunks,
                                long long factor);

nlohmann::json chunk_to_json(const ChunkPair& chunk);
nlohmann::json manifest_to_json(const SamplingManifest& manifest);

}  // namespace sumtab
