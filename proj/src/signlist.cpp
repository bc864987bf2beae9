#include "sumtab/signlist.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sumtab/utf8.hpp"

namespace sumtab {

namespace {

// U+2080..U+2089 -> '0'..'9'
std::string normalize_subscripts(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t start = i;
    char32_t cp = utf8::decode_at(text, i);
    if (cp >= 0x2080 && cp <= 0x2089) {
      out.push_back(static_cast<char>('0' + (cp - 0x2080)));
    } else {
      out.append(text.substr(start, i - start));
    }
  }
  return out;
}

bool contains_forbidden(std::string_view base) {
  for (char c : base) {
    if (std::isspace(static_cast<unsigned char>(c)) ||
        std::isdigit(static_cast<unsigned char>(c)) || c == '[' || c == ']' ||
        c == '{' || c == '}' || c == '<' || c == '>') {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string ReadingValue::str() const {
  if (index_unknown()) return base + "x";
  if (index == 1) return base;
  return base + std::to_string(index);
}

ReadingValue ReadingValue::parse(std::string_view text) {
  std::string s = normalize_subscripts(text);
  if (s.empty()) throw std::invalid_argument("empty reading");

  std::size_t end = s.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(s[end - 1]))) --end;

  ReadingValue r;
  if (end < s.size()) {
    r.index = std::stoi(s.substr(end));
    if (r.index == 0) throw std::invalid_argument("homophone index 0: " + s);
    r.base = s.substr(0, end);
  } else if (s.size() > 1 && s.back() == 'x') {
    r.index = kUnknownIndex;
    r.base = s.substr(0, s.size() - 1);
  } else {
    r.base = s;
  }
  if (r.base.empty()) throw std::invalid_argument("bare index: " + s);
  if (contains_forbidden(r.base))
    throw std::invalid_argument("invalid reading base: " + s);
  return r;
}

bool is_valid_sign_name(std::string_view name) {
  if (name.empty()) return false;
  int parens = 0;
  std::size_t bars = 0;
  for (char c : name) {
    if (c >= 'a' && c <= 'z') return false;
    if (c == '(') ++parens;
    if (c == ')' && --parens < 0) return false;
    if (c == '|') ++bars;
  }
  return parens == 0 && bars % 2 == 0;
}

std::string GlyphCodes::utf8() const {
  std::string out;
  for (char32_t cp : codepoints) utf8::append(out, cp);
  return out;
}

SignList SignList::load(std::string_view ndjson, CollisionPolicy policy) {
  SignList list;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= ndjson.size()) {
    std::size_t nl = ndjson.find('\n', pos);
    std::string_view line = ndjson.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? ndjson.size() + 1 : nl + 1;
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw SignListError("sign list line " + std::to_string(lineno) +
                          ": malformed JSON");
    }
    SignEntry entry;
    try {
      entry.name.value = j.at("name").get<std::string>();
      if (!is_valid_sign_name(entry.name.value))
        throw SignListError("invalid sign name: " + entry.name.value);
      if (j.contains("unicode") && !j["unicode"].is_null()) {
        GlyphCodes codes;
        for (const auto& hex : j["unicode"]) {
          codes.codepoints.push_back(static_cast<char32_t>(
              std::stoul(hex.get<std::string>(), nullptr, 16)));
        }
        if (codes.codepoints.empty())
          throw SignListError("empty unicode array");
        entry.unicode = std::move(codes);
      }
      for (const auto& rj : j.value("readings", nlohmann::json::array())) {
        ReadingValue r = ReadingValue::parse(rj.at("v").get<std::string>());
        if (rj.contains("n")) {
          if (rj["n"].is_string()) {
            if (rj["n"].get<std::string>() != "x")
              throw SignListError("bad homophone index");
            r.index = ReadingValue::kUnknownIndex;
          } else {
            r.index = rj["n"].get<int>();
            if (r.index < 1) throw SignListError("homophone index < 1");
          }
        }
        long long count = rj.value("count", 0LL);
        if (count < 0) throw SignListError("negative count");
        for (const auto& existing : entry.readings) {
          if (existing.first == r)
            throw SignListError("duplicate reading " + r.str() + " in " +
                                entry.name.value);
        }
        entry.readings.emplace_back(std::move(r), count);
      }
    } catch (const nlohmann::json::exception& e) {
      throw SignListError("sign list line " + std::to_string(lineno) + ": " +
                          e.what());
    } catch (const std::invalid_argument& e) {
      throw SignListError("sign list line " + std::to_string(lineno) + ": " +
                          e.what());
    }
    list.entries_.push_back(std::move(entry));
  }
  list.index_entries(policy);
  return list;
}

SignList SignList::load_file(const std::string& path, CollisionPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SignListError("cannot open sign list: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str(), policy);
}

void SignList::index_entries(CollisionPolicy policy) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& entry = entries_[i];
    if (!by_name_.emplace(entry.name.value, i).second)
      throw SignListError("duplicate sign name: " + entry.name.value);

    std::sort(entry.readings.begin(), entry.readings.end(),
              [](const ReadingCount& a, const ReadingCount& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
              });

    if (entry.unicode) {
      by_unicode_.emplace(entry.unicode->codepoints, entry.name);
    }
  }
  // Second pass so reading claims resolve in file order under first-wins.
  for (const auto& entry : entries_) {
    for (const auto& [reading, count] : entry.readings) {
      auto [it, inserted] = by_reading_.emplace(reading, entry.name);
      if (!inserted && it->second != entry.name) {
        if (policy == CollisionPolicy::Strict) {
          throw SignListError("reading " + reading.str() + " claimed by " +
                              it->second.value + " and " + entry.name.value);
        }
        ++dropped_claims_;
      }
    }
  }
}

std::optional<SignName> SignList::reading_to_name(const ReadingValue& r) const {
  auto it = by_reading_.find(r);
  if (it == by_reading_.end()) return std::nullopt;
  return it->second;
}

std::optional<GlyphCodes> SignList::name_to_unicode(const SignName& n) const {
  auto it = by_name_.find(n.value);
  if (it == by_name_.end()) return std::nullopt;
  return entries_[it->second].unicode;
}

std::optional<SignName> SignList::unicode_to_name(const GlyphCodes& g) const {
  auto it = by_unicode_.find(g.codepoints);
  if (it == by_unicode_.end()) return std::nullopt;
  return it->second;
}

const std::vector<ReadingCount>& SignList::readings_of(const SignName& n) const {
  auto it = by_name_.find(n.value);
  if (it == by_name_.end())
    throw SignListError("unknown sign name: " + n.value);
  return entries_[it->second].readings;
}

bool SignList::contains(const SignName& n) const {
  return by_name_.count(n.value) > 0;
}

double SignList::weighted_mean_polyvalence(
    const std::map<SignName, long long>& glyph_freq) const {
  if (glyph_freq.empty())
    throw SignListError("weighted_mean_polyvalence: empty frequency map");
  long double num = 0, den = 0;
  for (const auto& [name, freq] : glyph_freq) {
    num += static_cast<long double>(freq) * readings_of(name).size();
    den += static_cast<long double>(freq);
  }
  if (den == 0)
    throw SignListError("weighted_mean_polyvalence: zero total frequency");
  return static_cast<double>(num / den);
}

SignList SignList::with_counts(
    const std::map<std::pair<std::string, std::string>, long long>& counts)
    const {
  SignList copy;
  copy.entries_ = entries_;
  for (auto& entry : copy.entries_) {
    for (auto& [reading, count] : entry.readings) {
      auto it = counts.find({entry.name.value, reading.str()});
      count = it == counts.end() ? 0 : it->second;
    }
  }
  copy.index_entries(CollisionPolicy::FirstWins);
  return copy;
}

}  // namespace sumtab
