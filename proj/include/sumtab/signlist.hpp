#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sumtab {

struct SignListError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One transliteration value: a lowercase lexeme plus its homophone subscript.
// "en" -> {en, 1}, "lil2" -> {lil, 2}, "gadax" -> {gada, unknown}.
struct ReadingValue {
  static constexpr int kUnknownIndex = -1;

  std::string base;
  int index = 1;

  bool index_unknown() const { return index == kUnknownIndex; }

  std::string str() const;

  // Parses "lil2" / "en" / "dug4" / "gadax"; Unicode subscript digits are
  // normalized to ASCII. Throws std::invalid_argument on digits inside the
  // base, an explicit index 0, or an empty base.
  static ReadingValue parse(std::string_view text);

  auto operator<=>(const ReadingValue&) const = default;
};

// Canonical uppercase sign identifier, e.g. KA, BU, |URU×MIN|.
struct SignName {
  std::string value;

  auto operator<=>(const SignName&) const = default;
};

// Checks: no lowercase ASCII letters, balanced (), paired |…| delimiters.
bool is_valid_sign_name(std::string_view name);

// Unicode scalar(s) rendering one sign. Compound signs may need several.
struct GlyphCodes {
  std::vector<char32_t> codepoints;

  std::string utf8() const;

  auto operator<=>(const GlyphCodes&) const = default;
};

using ReadingCount = std::pair<ReadingValue, long long>;

struct SignEntry {
  SignName name;
  std::optional<GlyphCodes> unicode;
  // Sorted: count descending, then (base, index) ascending.
  std::vector<ReadingCount> readings;
};

// Immutable reading <-> sign name <-> Unicode dictionary. All queries are
// pure and the object is safe to share across threads after load.
class SignList {
 public:
  enum class CollisionPolicy { Strict, FirstWins };

  SignList() = default;

  // Parses newline-delimited JSON, one entry per line:
  //   {"name": str, "unicode": [hex-string]|null,
  //    "readings": [{"v": str, "n": int|"x", "count": int}]}
  // "n" defaults to the index embedded in "v" (1 if none); "count" to 0.
  static SignList load(std::string_view ndjson,
                       CollisionPolicy policy = CollisionPolicy::Strict);
  static SignList load_file(const std::string& path,
                            CollisionPolicy policy = CollisionPolicy::Strict);

  std::optional<SignName> reading_to_name(const ReadingValue& r) const;
  std::optional<GlyphCodes> name_to_unicode(const SignName& n) const;
  std::optional<SignName> unicode_to_name(const GlyphCodes& g) const;

  // Throws SignListError when the name is absent.
  const std::vector<ReadingCount>& readings_of(const SignName& n) const;

  bool contains(const SignName& n) const;

  // Sum freq(n) * |readings_of(n)| / sum freq(n). Throws on an empty map or
  // a key absent from the list.
  double weighted_mean_polyvalence(
      const std::map<SignName, long long>& glyph_freq) const;

  // Returns a copy whose occurrence counts are replaced by `counts`
  // (keyed by (sign name, reading string)); absent pairs get 0.
  SignList with_counts(
      const std::map<std::pair<std::string, std::string>, long long>& counts)
      const;

  const std::vector<SignEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t reading_count() const { return by_reading_.size(); }
  std::size_t dropped_reading_claims() const { return dropped_claims_; }

 private:
  void index_entries(CollisionPolicy policy);

  std::vector<SignEntry> entries_;
  std::map<ReadingValue, SignName> by_reading_;
  std::map<std::string, std::size_t> by_name_;
  std::map<std::vector<char32_t>, SignName> by_unicode_;
  std::size_t dropped_claims_ = 0;
};

}  // namespace sumtab
