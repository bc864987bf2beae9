#include "sumtab/glyph_map.hpp"

#include <string>

#include "doctest.h"
#include "sumtab/rng.hpp"
#include "test_util.hpp"

using namespace sumtab;
using testutil::mini_signlist;

TEST_CASE("map_token") {
  SignList list = mini_signlist();

  SUBCASE("reading resolves to its glyph") {
    auto m = map_token(Token::make_reading(ReadingValue{"en", 1}), list);
    CHECK(m.glyph == GlyphToken::glyph(GlyphCodes{{0x12097}}));
    CHECK(m.revised == Token::make_reading(ReadingValue{"en", 1}));
    CHECK(m.delta == MappingStats{1, 1, 1, 1});
  }
  SUBCASE("sign name keeps unicode but reading becomes UNK") {
    auto m = map_token(Token::make_sign_name(SignName{"KA"}), list);
    CHECK(m.glyph == GlyphToken::glyph(GlyphCodes{{0x12157}}));
    CHECK(m.revised == Token::make_unknown());
    CHECK(m.delta == MappingStats{0, 0, 1, 1});
  }
  SUBCASE("unmappable reading degrades both sides") {
    auto m = map_token(Token::make_reading(ReadingValue{"zzz", 1}), list);
    CHECK(m.glyph == GlyphToken::unk());
    CHECK(m.revised == Token::make_unknown());
    CHECK(m.delta == MappingStats{1, 0, 0, 0});
  }
  SUBCASE("named sign without unicode degrades both sides") {
    SignList l = SignList::load(
        R"({"name": "Z", "unicode": null, "readings": [{"v": "zu", "n": 9}]})");
    auto m = map_token(Token::make_reading(ReadingValue{"zu", 9}), l);
    CHECK(m.glyph == GlyphToken::unk());
    CHECK(m.revised == Token::make_unknown());
    CHECK(m.delta == MappingStats{1, 1, 1, 0});

    auto s = map_token(Token::make_sign_name(SignName{"Z"}), l);
    CHECK(s.glyph == GlyphToken::unk());
    CHECK(s.revised == Token::make_unknown());
  }
  SUBCASE("determinatives are glyph-bearing") {
    auto m = map_token(Token::make_determinative(ReadingValue{"d", 1}), list);
    CHECK(m.glyph == GlyphToken::glyph(GlyphCodes{{0x1202D}}));
  }
}

TEST_CASE("map_stream over the Table 1 lines") {
  SignList list = mini_signlist();
  TokenStream s = tokenize_text("{d}en-lil2\nlugal kur-kur-ra");
  MappedStream mapped = map_stream(s, list);

  std::vector<GlyphToken> expected = {
      GlyphToken::glyph(GlyphCodes{{0x1202D}}),
      GlyphToken::glyph(GlyphCodes{{0x12097}}),
      GlyphToken::glyph(GlyphCodes{{0x121A4}}),
      GlyphToken::make_special(SpecialKind::Newline),
      GlyphToken::glyph(GlyphCodes{{0x12217}}),
      GlyphToken::glyph(GlyphCodes{{0x121B3}}),
      GlyphToken::glyph(GlyphCodes{{0x121B3}}),
      GlyphToken::glyph(GlyphCodes{{0x1228F}}),
  };
  CHECK(mapped.glyphs == expected);
  CHECK(render_glyphs(mapped.glyphs) == "𒀭𒂗𒆤\n𒈗𒆳𒆳𒊏");
  CHECK(mapped.stats == MappingStats{7, 7, 7, 7});
}

TEST_CASE("empty stream maps to empty outputs") {
  MappedStream mapped = map_stream(TokenStream{}, mini_signlist());
  CHECK(mapped.glyphs.empty());
  CHECK(mapped.translit.items.empty());
  CHECK(mapped.stats == MappingStats{});
}

TEST_CASE("success_rates") {
  CHECK_THROWS_AS(success_rates(MappingStats{}), std::invalid_argument);
  auto [r1, r2] = success_rates(MappingStats{4, 3, 3, 3});
  CHECK(r1 == doctest::Approx(0.75));
  CHECK(r2 == doctest::Approx(1.0));
}

namespace {

TokenStream random_translit(SplitMix64& rng, const SignList& list) {
  std::vector<ReadingValue> pool;
  for (const auto& entry : list.entries())
    for (const auto& [r, c] : entry.readings) pool.push_back(r);
  pool.push_back(ReadingValue{"zzz", 1});  // unmappable

  TokenStream s;
  int items = static_cast<int>(rng.next_below(12));
  for (int i = 0; i < items; ++i) {
    if (rng.next_below(4) == 0) {
      SpecialKind kinds[] = {SpecialKind::Newline, SpecialKind::Surface,
                             SpecialKind::Ellipsis, SpecialKind::Ruling};
      s.items.push_back(StreamItem::make(kinds[rng.next_below(4)]));
      continue;
    }
    Word w;
    int toks = 1 + static_cast<int>(rng.next_below(4));
    for (int t = 0; t < toks; ++t) {
      switch (rng.next_below(4)) {
        case 0:
          w.tokens.push_back(Token::make_sign_name(
              list.entries()[rng.next_below(list.size())].name));
          break;
        case 1:
          w.tokens.push_back(
              Token::make_determinative(pool[rng.next_below(pool.size())]));
          break;
        default:
          w.tokens.push_back(
              Token::make_reading(pool[rng.next_below(pool.size())]));
      }
    }
    s.items.push_back(StreamItem::make(std::move(w)));
  }
  return s;
}

}  // namespace

TEST_CASE("properties over random synthetic streams") {
  SignList list = mini_signlist();
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    TokenStream s = random_translit(rng, list);
    MappedStream mapped = map_stream(s, list);

    // parity: atom-for-atom positional alignment
    REQUIRE(mapped.glyphs.size() == s.atom_count());
    REQUIRE(mapped.translit.atom_count() == s.atom_count());

    // independent recount of the mapping statistics
    MappingStats recount;
    std::size_t gi = 0;
    for (const auto& item : s.items) {
      if (!item.is_word) {
        CHECK_FALSE(mapped.glyphs[gi].is_glyph);
        CHECK(mapped.glyphs[gi].special == item.special);
        ++gi;
        continue;
      }
      for (const auto& t : item.word.tokens) {
        const GlyphToken& g = mapped.glyphs[gi++];
        if (t.kind == Token::Kind::Reading ||
            t.kind == Token::Kind::Determinative) {
          ++recount.readings_total;
          auto name = list.reading_to_name(t.reading);
          if (name) {
            ++recount.readings_named;
            ++recount.names_total;
            if (list.name_to_unicode(*name)) ++recount.names_unicoded;
          }
          // faithfulness: a non-UNK glyph carries a sign that lists r
          if (g.is_glyph) {
            auto back = list.unicode_to_name(g.codes);
            REQUIRE(back.has_value());
            bool found = false;
            for (const auto& [r, c] : list.readings_of(*back))
              if (r == t.reading) found = true;
            CHECK(found);
          }
        } else if (t.kind == Token::Kind::SignName) {
          ++recount.names_total;
          if (list.name_to_unicode(t.name)) ++recount.names_unicoded;
        }
      }
    }
    CHECK(mapped.stats == recount);

    // determinism
    CHECK(map_stream(s, list).glyphs == mapped.glyphs);
  }
}

TEST_CASE("glyph render/parse inverse") {
  SignList list = mini_signlist();
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    MappedStream mapped = map_stream(random_translit(rng, list), list);
    CHECK(parse_glyphs(render_glyphs(mapped.glyphs)) == mapped.glyphs);
  }
}
