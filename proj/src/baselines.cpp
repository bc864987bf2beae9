#include "sumtab/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "sumtab/rng.hpp"

namespace sumtab {

namespace {

StreamItem unk_word() {
  Word w;
  w.tokens.push_back(Token::make_unknown());
  return StreamItem::make(std::move(w));
}

StreamItem reading_word(const ReadingValue& r) {
  Word w;
  w.tokens.push_back(Token::make_reading(r));
  return StreamItem::make(std::move(w));
}

const ReadingValue* pick_weighted(const std::vector<ReadingCount>& readings,
                                  SplitMix64& rng) {
  long long total = 0;
  for (const auto& [r, c] : readings) total += c;
  if (total <= 0) {
    return &readings[rng.next_below(readings.size())].first;
  }
  long long draw = static_cast<long long>(rng.next_below(total));
  long long cum = 0;
  for (const auto& [r, c] : readings) {
    cum += c;
    if (draw < cum) return &r;
  }
  return &readings.back().first;
}

}  // namespace

TokenStream dict_transliterate(const std::vector<GlyphToken>& glyphs,
                               const SignList& list, const SamplerConfig& cfg,
                               const std::string& tablet_id) {
  SplitMix64 rng(mix_seed(cfg.seed, tablet_id));
  TokenStream out;
  for (const auto& g : glyphs) {
    if (!g.is_glyph) {
      out.items.push_back(StreamItem::make(g.special));
      continue;
    }
    auto name = list.unicode_to_name(g.codes);
    if (!name) {
      out.items.push_back(unk_word());
      continue;
    }
    const auto& readings = list.readings_of(*name);
    if (readings.empty()) {
      out.items.push_back(unk_word());
      continue;
    }
    if (cfg.mode == SamplerConfig::Mode::Argmax) {
      // readings are pre-sorted count desc, then (base, index) asc
      out.items.push_back(reading_word(readings.front().first));
    } else {
      out.items.push_back(reading_word(*pick_weighted(readings, rng)));
    }
  }
  return out;
}

std::vector<AlignedPair> aligned_pairs(const TabletRecord& rec,
                                       const SignList& list) {
  std::vector<AlignedPair> out;
  std::size_t gi = 0;
  for (const auto& item : rec.translit.items) {
    if (!item.is_word) {
      if (item.special == SpecialKind::Newline ||
          item.special == SpecialKind::Surface) {
        out.push_back({true, {}, {}});
      }
      ++gi;
      continue;
    }
    for (const auto& t : item.word.tokens) {
      if (gi >= rec.glyphs.size()) return out;  // parity violated upstream
      const GlyphToken& g = rec.glyphs[gi++];
      if (!g.is_glyph) continue;
      if (t.kind != Token::Kind::Reading &&
          t.kind != Token::Kind::Determinative)
        continue;
      auto name = list.unicode_to_name(g.codes);
      if (!name) continue;
      out.push_back({false, name->value, t.reading.str()});
    }
  }
  return out;
}

std::map<std::pair<std::string, std::string>, long long> count_corpus(
    const std::vector<TabletRecord>& corpus, const SignList& list) {
  std::map<std::pair<std::string, std::string>, long long> counts;
  for (const auto& rec : corpus) {
    for (const auto& pair : aligned_pairs(rec, list)) {
      if (!pair.boundary) ++counts[{pair.sign, pair.reading}];
    }
  }
  return counts;
}

std::string NgramModel::key(const std::string& sign,
                            const std::vector<std::string>& history) {
  std::string k = sign;
  for (const auto& h : history) {
    k.push_back('\x1f');
    k += h;
  }
  return k;
}

void NgramModel::add(const std::string& sign,
                     const std::vector<std::string>& history,
                     const std::string& reading, long long count) {
  Context& ctx = contexts_[key(sign, history)];
  ctx.readings[reading] += count;
  ctx.total += count;
}

std::pair<long long, long long> NgramModel::lookup(
    const std::string& sign, const std::vector<std::string>& history,
    const std::string& reading) const {
  auto it = contexts_.find(key(sign, history));
  if (it == contexts_.end()) return {0, 0};
  auto rit = it->second.readings.find(reading);
  return {rit == it->second.readings.end() ? 0 : rit->second,
          it->second.total};
}

nlohmann::json NgramModel::to_json() const {
  nlohmann::json ctxs = nlohmann::json::array();
  for (const auto& [k, ctx] : contexts_) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      std::size_t sep = k.find('\x1f', pos);
      parts.push_back(k.substr(pos, sep == std::string::npos
                                        ? std::string::npos
                                        : sep - pos));
      if (sep == std::string::npos) break;
      pos = sep + 1;
    }
    nlohmann::json entry = {{"sign", parts.front()},
                            {"history", std::vector<std::string>(
                                            parts.begin() + 1, parts.end())},
                            {"readings", ctx.readings}};
    ctxs.push_back(std::move(entry));
  }
  return nlohmann::json{{"format", "sumtab-ngram"},
                        {"version", 1},
                        {"order", order_},
                        {"lambda", lambda_},
                        {"contexts", ctxs}};
}

NgramModel NgramModel::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "sumtab-ngram" || j.value("version", 0) != 1)
    throw std::invalid_argument("unrecognized n-gram model file");
  NgramModel model(j.at("order").get<int>(), j.at("lambda").get<double>());
  for (const auto& entry : j.at("contexts")) {
    auto history = entry.at("history").get<std::vector<std::string>>();
    for (auto it = entry.at("readings").begin(); it != entry.at("readings").end();
         ++it) {
      model.add(entry.at("sign").get<std::string>(), history, it.key(),
                it.value().get<long long>());
    }
  }
  return model;
}

NgramModel train_ngram(const std::vector<TabletRecord>& corpus,
                       const SignList& list, int k, double lambda) {
  if (k < 1) throw std::invalid_argument("n-gram order must be >= 1");
  NgramModel model(k, lambda);
  bool any = false;
  for (const auto& rec : corpus) {
    std::vector<std::string> history;
    for (const auto& pair : aligned_pairs(rec, list)) {
      if (pair.boundary) {
        history.clear();
        continue;
      }
      any = true;
      for (int len = 0; len < k; ++len) {
        if (static_cast<std::size_t>(len) > history.size()) break;
        std::vector<std::string> ctx(history.end() - len, history.end());
        model.add(pair.sign, ctx, pair.reading);
      }
      history.push_back(pair.reading);
      if (history.size() > static_cast<std::size_t>(k)) history.erase(history.begin());
    }
  }
  if (!any) throw std::invalid_argument("corpus has no aligned glyph/reading pairs");
  return model;
}

TokenStream ngram_transliterate(const std::vector<GlyphToken>& glyphs,
                                const NgramModel& model,
                                const SignList& list) {
  TokenStream out;
  std::vector<std::string> history;
  const int k = model.order();

  auto score = [&](const std::string& sign, const ReadingValue& candidate,
                   const std::vector<ReadingCount>& readings) {
    const std::string r = candidate.str();
    double weight = 1.0;
    int longest = std::min<int>(k - 1, static_cast<int>(history.size()));
    for (int len = longest; len >= 0; --len) {
      std::vector<std::string> ctx(history.end() - len, history.end());
      auto [c, total] = model.lookup(sign, ctx, r);
      if (c > 0) return weight * static_cast<double>(c) / total;
      weight *= model.lambda();
    }
    long long list_count = 0, list_total = 0;
    for (const auto& [rv, c] : readings) {
      list_total += c;
      if (rv == candidate) list_count = c;
    }
    if (list_count > 0) return weight * static_cast<double>(list_count) / list_total;
    weight *= model.lambda();
    return weight / static_cast<double>(readings.size());
  };

  for (const auto& g : glyphs) {
    if (!g.is_glyph) {
      out.items.push_back(StreamItem::make(g.special));
      if (g.special == SpecialKind::Newline ||
          g.special == SpecialKind::Surface)
        history.clear();
      continue;
    }
    auto name = list.unicode_to_name(g.codes);
    if (!name) {
      out.items.push_back(unk_word());
      continue;
    }
    const auto& readings = list.readings_of(*name);
    if (readings.empty()) {
      out.items.push_back(unk_word());
      continue;
    }
    const ReadingValue* best = nullptr;
    double best_score = -1.0;
    for (const auto& [candidate, count] : readings) {
      double s = score(name->value, candidate, readings);
      if (!best || s > best_score ||
          (s == best_score && candidate < *best)) {
        best = &candidate;
        best_score = s;
      }
    }
    out.items.push_back(reading_word(*best));
    history.push_back(best->str());
    if (history.size() > static_cast<std::size_t>(k)) history.erase(history.begin());
  }
  return out;
}

}  // namespace sumtab
