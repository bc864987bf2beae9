#include "sumtab/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sumtab/rng.hpp"

namespace sumtab {

const std::vector<std::string> kPeriodLabels = {
    "Ur III",           "Old Akkadian",      "Early Dynastic IIIb",
    "Old Babylonian",   "Lagash II",         "Early Dynastic IIIa",
    "Early Dynastic I-II", "Unknown",        "Neo-Assyrian",
    "Neo-Babylonian",   "Middle Babylonian"};

const std::vector<std::string> kGenreLabels = {
    "Administrative", "Royal Inscription", "Literary", "Letter", "Legal",
    "Unknown",        "Lexical",           "Liturgy",  "Math/Science"};

namespace {

std::optional<SpecialKind> delimiter_kind(std::string_view type) {
  if (type == "surface" || type == "obverse" || type == "reverse")
    return SpecialKind::Surface;
  if (type == "line-start" || type == "line") return SpecialKind::Newline;
  if (type == "column" || type == "column-start") return SpecialKind::Column;
  if (type == "ruling") return SpecialKind::Ruling;
  if (type == "blank" || type == "blank-space" || type == "blank_space")
    return SpecialKind::BlankSpace;
  return std::nullopt;
}

void walk_cdl(const nlohmann::json& node, RawDocument& out) {
  const std::string kind = node.value("node", "");
  if (kind == "c") {
    for (const auto& child : node.value("cdl", nlohmann::json::array()))
      walk_cdl(child, out);
  } else if (kind == "d") {
    auto sk = delimiter_kind(node.value("type", ""));
    if (sk) {
      out.nodes.push_back(RawNode::make(*sk));
    } else {
      ++out.skipped_delimiters;
    }
  } else if (kind == "l") {
    std::string frag = node.value("frag", "");
    if (frag.empty()) throw CorpusError("lemma node with empty frag");
    out.nodes.push_back(RawNode::make(std::move(frag)));
  } else {
    throw CorpusError("unknown cdl node discriminator: '" + kind + "'");
  }
}

std::string strip_parenthetical(std::string_view label) {
  std::size_t at = label.find(" (");
  std::string s(at == std::string_view::npos ? label : label.substr(0, at));
  while (!s.empty() && s.back() == ' ') s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  return s;
}

std::string match_label(std::string_view raw,
                        const std::vector<std::string>& labels) {
  std::string s = strip_parenthetical(raw);
  for (const auto& label : labels)
    if (s == label) return label;
  return "Unknown";
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write " + path.string());
  out << content;
  if (!out) throw CorpusError("write failed: " + path.string());
}

}  // namespace

RawDocument parse_cdl(const nlohmann::json& doc) {
  RawDocument out;
  if (doc.contains("id")) {
    out.id = doc["id"].get<std::string>();
  } else if (doc.contains("textid")) {
    out.id = doc["textid"].get<std::string>();
  } else {
    throw CorpusError("document missing id");
  }
  for (const auto& node : doc.value("cdl", nlohmann::json::array()))
    walk_cdl(node, out);
  return out;
}

Catalogue Catalogue::load(const nlohmann::json& j) {
  Catalogue cat;
  for (auto it = j.begin(); it != j.end(); ++it) {
    CatalogueEntry e;
    if (it.value().contains("period"))
      e.period = normalize_period(it.value()["period"].get<std::string>());
    if (it.value().contains("genre"))
      e.genre = normalize_genre(it.value()["genre"].get<std::string>());
    cat.entries_[it.key()] = std::move(e);
  }
  return cat;
}

Catalogue Catalogue::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open catalogue: " + path);
  nlohmann::json j;
  in >> j;
  return load(j);
}

CatalogueEntry Catalogue::lookup(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? CatalogueEntry{} : it->second;
}

std::string Catalogue::normalize_period(std::string_view label) {
  return match_label(label, kPeriodLabels);
}

std::string Catalogue::normalize_genre(std::string_view label) {
  std::string s = strip_parenthetical(label);
  if (s == "Royal/Monumental" || s == "Royal inscription")
    return "Royal Inscription";
  if (s == "Administrative record") return "Administrative";
  if (s == "Lexical; Mathematical") return "Lexical";
  return match_label(s, kGenreLabels);
}

TabletRecord build_tablet(const nlohmann::json& doc, const Catalogue& cat,
                          const SignList& list) {
  RawDocument raw = parse_cdl(doc);
  ParseWarnings warnings;

  TokenStream stream;
  std::string pending;
  auto flush = [&] {
    if (pending.empty()) return;
    for (auto& item :
         tokenize_line(normalize_annotations(pending, &warnings), &warnings))
      stream.items.push_back(std::move(item));
    pending.clear();
  };
  for (const auto& node : raw.nodes) {
    if (node.is_special) {
      flush();
      stream.items.push_back(StreamItem::make(node.special));
    } else {
      if (!pending.empty()) pending.push_back(' ');
      pending += node.frag;
    }
  }
  flush();

  MappedStream mapped = map_stream(stream, list);
  CatalogueEntry meta = cat.lookup(raw.id);

  TabletRecord rec;
  rec.id = raw.id;
  rec.period = meta.period;
  rec.genre = meta.genre;
  rec.glyphs = std::move(mapped.glyphs);
  rec.translit = std::move(mapped.translit);
  rec.stats = mapped.stats;
  rec.warnings = warnings.total() + raw.skipped_delimiters;
  return rec;
}

std::array<std::size_t, 3> allocate_counts(std::size_t n,
                                           const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.validation,
                                   ratios.test};
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9)
    throw CorpusError("split ratios must sum to 1");

  std::array<std::size_t, 3> counts{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    double quota = static_cast<double>(n) * r[i];
    counts[i] = static_cast<std::size_t>(std::floor(quota + 1e-9));
    frac[i] = quota - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b] + 1e-12; });
  for (std::size_t k = 0; assigned < n; ++k) {
    ++counts[order[k % 3]];
    ++assigned;
  }
  return counts;
}

SplitAssignment stratified_split(const std::vector<TabletRecord>& corpus,
                                 const SplitRatios& ratios,
                                 std::uint64_t seed) {
  std::map<std::string, std::vector<std::string>> by_period;
  std::vector<std::string> lexical;
  for (const auto& rec : corpus) {
    if (rec.genre == "Lexical") {
      lexical.push_back(rec.id);
    } else {
      by_period[rec.period].push_back(rec.id);
    }
  }

  SplitAssignment out;
  for (auto& [period, ids] : by_period) {
    std::sort(ids.begin(), ids.end());
    seeded_shuffle(ids, mix_seed(seed, period));
    auto counts = allocate_counts(ids.size(), ratios);
    std::size_t i = 0;
    for (std::size_t k = 0; k < counts[0]; ++k) out.train.push_back(ids[i++]);
    for (std::size_t k = 0; k < counts[1]; ++k)
      out.validation.push_back(ids[i++]);
    for (std::size_t k = 0; k < counts[2]; ++k) out.test.push_back(ids[i++]);
  }
  // lexical texts go back into train after splitting
  out.train.insert(out.train.end(), lexical.begin(), lexical.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

nlohmann::json record_to_json(const TabletRecord& rec) {
  return nlohmann::json{{"id", rec.id},
                        {"period", rec.period},
                        {"genre", rec.genre},
                        {"glyphs", render_glyphs(rec.glyphs)},
                        {"transliteration",
                         render_transliteration(rec.translit)}};
}

TabletRecord record_from_json(const nlohmann::json& j) {
  TabletRecord rec;
  rec.id = j.at("id").get<std::string>();
  rec.period = j.value("period", "Unknown");
  rec.genre = j.value("genre", "Unknown");
  rec.glyphs = parse_glyphs(j.at("glyphs").get<std::string>());

  const std::string text = j.at("transliteration").get<std::string>();
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = std::string_view(text).substr(
        pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    if (!first)
      rec.translit.items.push_back(StreamItem::make(SpecialKind::Newline));
    first = false;
    for (auto& item : tokenize_line(line))
      rec.translit.items.push_back(std::move(item));
  }
  return rec;
}

void export_dataset(const std::vector<TabletRecord>& corpus,
                    const SplitAssignment& assignment,
                    const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::map<std::string, const TabletRecord*> by_id;
  for (const auto& rec : corpus) by_id[rec.id] = &rec;

  auto write_split = [&](const std::vector<std::string>& ids,
                         const std::string& name) {
    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    std::string content;
    for (const auto& id : sorted) {
      auto it = by_id.find(id);
      if (it == by_id.end()) throw CorpusError("split id not in corpus: " + id);
      content += record_to_json(*it->second).dump();
      content.push_back('\n');
    }
    write_text_file(fs::path(out_dir) / name, content);
  };
  write_split(assignment.train, "train.jsonl");
  write_split(assignment.validation, "validation.jsonl");
  write_split(assignment.test, "test.jsonl");
  write_text_file(fs::path(out_dir) / "stats.json",
                  corpus_stats(corpus, &assignment).dump(2) + "\n");
}

std::vector<TabletRecord> load_dataset_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path))
    throw CorpusError("not a dataset file: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open dataset: " + path);
  std::vector<TabletRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw CorpusError(path + ":" + std::to_string(lineno) +
                        ": malformed JSON record");
    out.push_back(record_from_json(j));
  }
  return out;
}

nlohmann::json corpus_stats(const std::vector<TabletRecord>& corpus,
                            const SplitAssignment* assignment) {
  MappingStats total;
  std::map<std::string, std::array<long long, 4>> periods;  // all,tr,va,te
  std::map<std::string, std::array<long long, 4>> genres;
  std::map<std::string, int> split_of;
  if (assignment) {
    for (const auto& id : assignment->train) split_of[id] = 1;
    for (const auto& id : assignment->validation) split_of[id] = 2;
    for (const auto& id : assignment->test) split_of[id] = 3;
  }
  for (const auto& rec : corpus) {
    total.merge(rec.stats);
    int s = 0;
    if (auto it = split_of.find(rec.id); it != split_of.end()) s = it->second;
    ++periods[rec.period][0];
    ++genres[rec.genre][0];
    if (s) {
      ++periods[rec.period][s];
      ++genres[rec.genre][s];
    }
  }
  auto table = [&](const std::map<std::string, std::array<long long, 4>>& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [label, c] : m) {
      out[label] = {{"total", c[0]},
                    {"train", c[1]},
                    {"validation", c[2]},
                    {"test", c[3]}};
    }
    return out;
  };
  nlohmann::json mapping = {{"readings_total", total.readings_total},
                            {"readings_named", total.readings_named},
                            {"names_total", total.names_total},
                            {"names_unicoded", total.names_unicoded}};
  if (total.readings_total > 0 && total.names_total > 0) {
    auto [r1, r2] = success_rates(total);
    mapping["reading_to_name_rate"] = r1;
    mapping["name_to_unicode_rate"] = r2;
  }
  return nlohmann::json{{"tablets", corpus.size()},
                        {"mapping", mapping},
                        {"periods", table(periods)},
                        {"genres", table(genres)}};
}

}  // namespace sumtab
