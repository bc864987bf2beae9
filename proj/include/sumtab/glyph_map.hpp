#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sumtab/signlist.hpp"
#include "sumtab/translit.hpp"

namespace sumtab {

// Glyph-side unit: one sign's Unicode, or a mirrored special token.
struct GlyphToken {
  bool is_glyph = false;
  GlyphCodes codes;
  SpecialKind special = SpecialKind::Unk;

  static GlyphToken glyph(GlyphCodes c) { return {true, std::move(c), SpecialKind::Unk}; }
  static GlyphToken make_special(SpecialKind k) { return {false, {}, k}; }
  static GlyphToken unk() { return make_special(SpecialKind::Unk); }

  bool operator==(const GlyphToken&) const = default;
};

// Success counters for the reading -> name -> Unicode pipeline.
// readings_* track reading/determinative tokens; names_* track every
// resolved-or-literal sign name that then needs a Unicode form.
struct MappingStats {
  long long readings_total = 0;
  long long readings_named = 0;
  long long names_total = 0;
  long long names_unicoded = 0;

  void merge(const MappingStats& o) {
    readings_total += o.readings_total;
    readings_named += o.readings_named;
    names_total += o.names_total;
    names_unicoded += o.names_unicoded;
  }
  bool operator==(const MappingStats&) const = default;
};

struct MappedToken {
  GlyphToken glyph;
  Token revised;
  MappingStats delta;
};

// Readings resolve name then Unicode; a literal sign name keeps its Unicode
// but the transliteration side degrades to <UNK>; any failure degrades both
// sides to <UNK>. Never errors.
MappedToken map_token(const Token& t, const SignList& list);

struct MappedStream {
  std::vector<GlyphToken> glyphs;
  TokenStream translit;
  MappingStats stats;
};

// Specials copy through in place; word tokens map in order with no
// word-boundary marker on the glyph side.
MappedStream map_stream(const TokenStream& s, const SignList& list);

// (readings -> name rate, name -> Unicode rate). Throws on zero totals.
std::pair<double, double> success_rates(const MappingStats& stats);

// Specials serialized, glyphs as raw UTF-8, no separators.
std::string render_glyphs(const std::vector<GlyphToken>& glyphs);

// Inverse of render_glyphs; each cuneiform scalar becomes its own token.
std::vector<GlyphToken> parse_glyphs(std::string_view text);

}  // namespace sumtab
