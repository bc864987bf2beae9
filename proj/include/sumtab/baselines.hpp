#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumtab/corpus.hpp"

namespace sumtab {

struct SamplerConfig {
  enum class Mode { Weighted, Argmax };
  Mode mode = Mode::Weighted;
  std::uint64_t seed = 0;  // ignored in Argmax mode
};

// Replaces each glyph with one of its sign's readings: Weighted samples in
// proportion to occurrence counts (cumulative-count inversion of a seeded
// draw; uniform when all counts are zero), Argmax takes the top count with
// ties broken by lexicographically smallest (base, index). Specials pass
// through unchanged; unresolvable glyphs become <UNK>. Output is a flat
// stream of single-reading words.
//
// The per-call RNG substream is derived from (cfg.seed, tablet_id) so
// parallel evaluation is order-independent.
TokenStream dict_transliterate(const std::vector<GlyphToken>& glyphs,
                               const SignList& list, const SamplerConfig& cfg,
                               const std::string& tablet_id = {});

// Yields each aligned (sign name, reading) pair of a record in order, with
// a sentinel reset at NEWLINE / SURFACE boundaries. Shared by corpus
// counting and n-gram training so both see identical pairs.
struct AlignedPair {
  bool boundary = false;  // context reset marker
  std::string sign;
  std::string reading;
};
std::vector<AlignedPair> aligned_pairs(const TabletRecord& rec,
                                       const SignList& list);

// Occurrence counts of (sign name, reading) over a corpus, for seeding
// SignList::with_counts.
std::map<std::pair<std::string, std::string>, long long> count_corpus(
    const std::vector<TabletRecord>& corpus, const SignList& list);

// Reading-disambiguation model over (sign, previous readings) contexts
// with stupid backoff.
class NgramModel {
 public:
  NgramModel() = default;
  NgramModel(int order, double lambda) : order_(order), lambda_(lambda) {}

  int order() const { return order_; }
  double lambda() const { return lambda_; }

  void add(const std::string& sign, const std::vector<std::string>& history,
           const std::string& reading, long long count = 1);

  // count and context total for (sign, history); zeros when unseen
  std::pair<long long, long long> lookup(
      const std::string& sign, const std::vector<std::string>& history,
      const std::string& reading) const;

  nlohmann::json to_json() const;
  static NgramModel from_json(const nlohmann::json& j);

  std::size_t context_count() const { return contexts_.size(); }

 private:
  struct Context {
    std::map<std::string, long long> readings;
    long long total = 0;
  };
  static std::string key(const std::string& sign,
                         const std::vector<std::string>& history);

  int order_ = 1;
  double lambda_ = 0.4;
  std::map<std::string, Context> contexts_;
};

// Counts aligned (sign, history, reading) triples at every history length
// up to k-1. Throws when the corpus yields no aligned pairs.
NgramModel train_ngram(const std::vector<TabletRecord>& corpus,
                       const SignList& list, int k, double lambda = 0.4);

// Greedy left-to-right decoding. Per candidate reading, stupid backoff:
// corpus contexts from longest to empty with a lambda penalty per level,
// then the sign list's own counts, finally uniform. Specials pass through;
// NEWLINE and SURFACE reset the history.
TokenStream ngram_transliterate(const std::vector<GlyphToken>& glyphs,
                                const NgramModel& model, const SignList& list);

}  // namespace sumtab
