#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sumtab/signlist.hpp"

namespace sumtab {

enum class SpecialKind {
  Surface,
  Newline,
  Ellipsis,
  Ruling,
  Column,
  BlankSpace,
  Unk,
};

std::string_view special_str(SpecialKind k);

// Atomic transliteration-side unit.
struct Token {
  enum class Kind { Reading, Determinative, SignName, Special, Unknown };

  Kind kind = Kind::Unknown;
  ReadingValue reading;   // Reading / Determinative
  SignName name;          // SignName
  SpecialKind special = SpecialKind::Unk;

  static Token make_reading(ReadingValue r);
  static Token make_determinative(ReadingValue r);
  static Token make_sign_name(SignName n);
  static Token make_special(SpecialKind k);
  static Token make_unknown();

  bool operator==(const Token&) const = default;
};

// Hyphen-joined run of glyph-bearing tokens; never contains specials.
struct Word {
  std::vector<Token> tokens;

  bool operator==(const Word&) const = default;
};

struct StreamItem {
  bool is_word = false;
  Word word;
  SpecialKind special = SpecialKind::Unk;

  static StreamItem make(Word w) { return {true, std::move(w), SpecialKind::Unk}; }
  static StreamItem make(SpecialKind k) { return {false, {}, k}; }

  bool operator==(const StreamItem&) const = default;
};

struct TokenStream {
  std::vector<StreamItem> items;

  std::size_t atom_count() const;  // atomic tokens, counting specials as one

  bool operator==(const TokenStream&) const = default;
};

struct ParseWarnings {
  std::size_t unbalanced = 0;
  std::size_t stripped_sigils = 0;
  std::size_t empty_words = 0;
  std::size_t unparsed_tokens = 0;

  std::size_t total() const {
    return unbalanced + stripped_sigils + empty_words + unparsed_tokens;
  }
  void merge(const ParseWarnings& o) {
    unbalanced += o.unbalanced;
    stripped_sigils += o.stripped_sigils;
    empty_words += o.empty_words;
    unparsed_tokens += o.unparsed_tokens;
  }
};

// Annotation removal for one physical line:
//   [...]   -> "..."          (broken away)
//   <...>   -> deleted        (editor-supplied)
//   <<...>> -> text retained  (to be excised)
//   half brackets, ! # ?      -> stripped, text retained
//   ($...$) -> deleted
// then "..." runs merged, whitespace collapsed, hyphens repaired.
// Idempotent. Unbalanced markers are dropped with a warning.
std::string normalize_annotations(std::string_view raw,
                                  ParseWarnings* warnings = nullptr);

// Splits a normalized line into words and specials. Words split on spaces,
// readings on '-', {…} spans become determinatives, all-uppercase items
// become sign names, "..." becomes an ellipsis special.
std::vector<StreamItem> tokenize_line(std::string_view normalized,
                                      ParseWarnings* warnings = nullptr);

// Multi-line convenience: normalizes and tokenizes each line, inserting a
// Newline special before every line (mirroring document structure).
TokenStream tokenize_text(std::string_view text,
                          ParseWarnings* warnings = nullptr);

std::string render_word(const Word& w);
std::string render_item(const StreamItem& item);

// Canonical serialization. Items are space-separated except around "\n".
std::string render_transliteration(const TokenStream& stream);

}  // namespace sumtab
