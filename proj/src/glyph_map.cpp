#include "sumtab/glyph_map.hpp"

#include <array>
#include <stdexcept>

#include "sumtab/utf8.hpp"

namespace sumtab {

MappedToken map_token(const Token& t, const SignList& list) {
  MappedToken out{GlyphToken::unk(), t, {}};
  switch (t.kind) {
    case Token::Kind::Reading:
    case Token::Kind::Determinative: {
      ++out.delta.readings_total;
      auto name = list.reading_to_name(t.reading);
      if (!name) {
        out.revised = Token::make_unknown();
        return out;
      }
      ++out.delta.readings_named;
      ++out.delta.names_total;
      auto codes = list.name_to_unicode(*name);
      if (!codes) {
        out.revised = Token::make_unknown();
        return out;
      }
      ++out.delta.names_unicoded;
      out.glyph = GlyphToken::glyph(std::move(*codes));
      return out;
    }
    case Token::Kind::SignName: {
      // reading is uncertain: transliteration side becomes <UNK>, the
      // glyph side still carries the named sign's Unicode when it has one
      ++out.delta.names_total;
      out.revised = Token::make_unknown();
      auto codes = list.name_to_unicode(t.name);
      if (codes) {
        ++out.delta.names_unicoded;
        out.glyph = GlyphToken::glyph(std::move(*codes));
      }
      return out;
    }
    case Token::Kind::Special:
      out.glyph = GlyphToken::make_special(t.special);
      return out;
    case Token::Kind::Unknown:
      return out;
  }
  return out;
}

MappedStream map_stream(const TokenStream& s, const SignList& list) {
  MappedStream out;
  for (const auto& item : s.items) {
    if (!item.is_word) {
      out.glyphs.push_back(GlyphToken::make_special(item.special));
      out.translit.items.push_back(item);
      continue;
    }
    Word revised;
    for (const auto& t : item.word.tokens) {
      MappedToken m = map_token(t, list);
      out.glyphs.push_back(std::move(m.glyph));
      revised.tokens.push_back(std::move(m.revised));
      out.stats.merge(m.delta);
    }
    out.translit.items.push_back(StreamItem::make(std::move(revised)));
  }
  return out;
}

std::pair<double, double> success_rates(const MappingStats& stats) {
  if (stats.readings_total == 0 || stats.names_total == 0)
    throw std::invalid_argument("success_rates: zero totals");
  return {static_cast<double>(stats.readings_named) / stats.readings_total,
          static_cast<double>(stats.names_unicoded) / stats.names_total};
}

std::string render_glyphs(const std::vector<GlyphToken>& glyphs) {
  std::string out;
  for (const auto& g : glyphs) {
    if (g.is_glyph) {
      out += g.codes.utf8();
    } else {
      out += special_str(g.special);
    }
  }
  return out;
}

std::vector<GlyphToken> parse_glyphs(std::string_view text) {
  static constexpr std::array<SpecialKind, 6> kNamed = {
      SpecialKind::Surface,    SpecialKind::Ruling, SpecialKind::Column,
      SpecialKind::BlankSpace, SpecialKind::Unk,    SpecialKind::Ellipsis};
  std::vector<GlyphToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\n') {
      out.push_back(GlyphToken::make_special(SpecialKind::Newline));
      ++i;
      continue;
    }
    bool matched = false;
    for (SpecialKind k : kNamed) {
      std::string_view lit = special_str(k);
      if (text.compare(i, lit.size(), lit) == 0) {
        out.push_back(GlyphToken::make_special(k));
        i += lit.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    char32_t cp = utf8::decode_at(text, i);
    out.push_back(GlyphToken::glyph(GlyphCodes{{cp}}));
  }
  return out;
}

}  // namespace sumtab
