#include "sumtab/signlist.hpp"

#include <map>

#include "doctest.h"
#include "sumtab/rng.hpp"
#include "test_util.hpp"

using namespace sumtab;
using testutil::mini_signlist;

TEST_CASE("reading value parsing") {
  CHECK(ReadingValue::parse("en") == ReadingValue{"en", 1});
  CHECK(ReadingValue::parse("lil2") == ReadingValue{"lil", 2});
  CHECK(ReadingValue::parse("dug4").str() == "dug4");
  CHECK(ReadingValue::parse("lil₂") == ReadingValue{"lil", 2});
  CHECK(ReadingValue::parse("gadax").index_unknown());
  CHECK(ReadingValue::parse("en").str() == "en");
  CHECK(ReadingValue::parse("uru18").str() == "uru18");
  CHECK_THROWS_AS(ReadingValue::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(ReadingValue::parse("lil0"), std::invalid_argument);
  CHECK_THROWS_AS(ReadingValue::parse("42"), std::invalid_argument);
  CHECK_THROWS_AS(ReadingValue::parse("a b"), std::invalid_argument);
}

TEST_CASE("sign name validation") {
  CHECK(is_valid_sign_name("KA"));
  CHECK(is_valid_sign_name("|URU×MIN|"));
  CHECK(is_valid_sign_name("|KA×GAR|"));
  CHECK(is_valid_sign_name("LAK(20)"));
  CHECK_FALSE(is_valid_sign_name("Ka"));
  CHECK_FALSE(is_valid_sign_name("|KA"));
  CHECK_FALSE(is_valid_sign_name("KA)"));
  CHECK_FALSE(is_valid_sign_name(""));
}

TEST_CASE("load and basic lookups") {
  SignList list = mini_signlist();

  SUBCASE("BU maps to U+1204D") {
    auto codes = list.name_to_unicode(SignName{"BU"});
    REQUIRE(codes.has_value());
    CHECK(codes->codepoints == std::vector<char32_t>{0x1204D});
    CHECK(codes->utf8() == "\U0001204D");
  }
  SUBCASE("Table 1 lookups") {
    CHECK(list.reading_to_name(ReadingValue::parse("en"))->value == "EN");
    CHECK(list.reading_to_name(ReadingValue::parse("dug4"))->value == "KA");
    CHECK(list.name_to_unicode(SignName{"LUGAL"})->codepoints ==
          std::vector<char32_t>{0x12217});
    CHECK_FALSE(list.reading_to_name(ReadingValue::parse("zzz9")).has_value());
  }
  SUBCASE("homophone indices separate signs") {
    CHECK(list.reading_to_name(ReadingValue::parse("e"))->value == "E");
    CHECK(list.reading_to_name(ReadingValue::parse("e2"))->value == "E2");
  }
  SUBCASE("absent unicode is absent, not an error") {
    SignList l = SignList::load(
        R"({"name": "X", "unicode": null, "readings": [{"v": "xa", "count": 1}]})");
    CHECK_FALSE(l.name_to_unicode(SignName{"X"}).has_value());
  }
}

TEST_CASE("empty document yields empty list") {
  SignList list = SignList::load("");
  CHECK(list.size() == 0);
  CHECK_FALSE(list.reading_to_name(ReadingValue::parse("en")).has_value());
  CHECK_FALSE(list.name_to_unicode(SignName{"EN"}).has_value());
}

TEST_CASE("fixture of 3 entries with 5 readings indexes 5 keys") {
  SignList list = SignList::load(R"({"name": "A", "readings": [{"v": "a"}, {"v": "b"}]}
{"name": "B", "readings": [{"v": "c"}, {"v": "d"}]}
{"name": "C", "readings": [{"v": "e"}]}
)");
  CHECK(list.size() == 3);
  CHECK(list.reading_count() == 5);
}

TEST_CASE("load error paths") {
  CHECK_THROWS_WITH_AS(SignList::load("{not json"),
                       doctest::Contains("line 1"), SignListError);
  CHECK_THROWS_AS(
      SignList::load(R"({"name": "A"}
{"name": "A"})"),
      SignListError);

  const std::string collision = R"({"name": "A", "readings": [{"v": "ka"}]}
{"name": "B", "readings": [{"v": "ka"}]})";
  CHECK_THROWS_AS(SignList::load(collision), SignListError);

  SignList relaxed =
      SignList::load(collision, SignList::CollisionPolicy::FirstWins);
  CHECK(relaxed.reading_to_name(ReadingValue::parse("ka"))->value == "A");
  CHECK(relaxed.dropped_reading_claims() == 1);
}

TEST_CASE("readings_of ordering") {
  SignList list = mini_signlist();
  const auto& ka = list.readings_of(SignName{"KA"});
  REQUIRE(ka.size() == 5);
  CHECK(ka[0].first.str() == "ka");
  CHECK(ka[1].first.str() == "dug4");
  CHECK(ka[2].first.str() == "kiri3");
  CHECK(ka[3].first.str() == "zuh");
  CHECK(ka[4].first.str() == "inim");

  SUBCASE("single-reading sign") {
    CHECK(list.readings_of(SignName{"EN"}).size() == 1);
  }
  SUBCASE("equal counts break ties lexicographically") {
    SignList l = SignList::load(
        R"({"name": "T", "readings": [{"v": "zu", "count": 3}, {"v": "ab", "count": 3}, {"v": "ab", "n": 2, "count": 3}]})");
    const auto& rs = l.readings_of(SignName{"T"});
    CHECK(rs[0].first.str() == "ab");
    CHECK(rs[1].first.str() == "ab2");
    CHECK(rs[2].first.str() == "zu");
  }
  SUBCASE("absent name throws with the name") {
    CHECK_THROWS_WITH_AS(list.readings_of(SignName{"NOPE"}),
                         doctest::Contains("NOPE"), SignListError);
  }
}

TEST_CASE("round trip: readings_of -> reading_to_name") {
  SignList list = mini_signlist();
  for (const auto& entry : list.entries()) {
    for (const auto& [reading, count] : entry.readings) {
      auto name = list.reading_to_name(reading);
      REQUIRE(name.has_value());
      CHECK(name->value == entry.name.value);
    }
  }
}

TEST_CASE("load is deterministic") {
  std::string bytes = testutil::slurp(testutil::data_path("mini_signlist.ndjson"));
  SignList a = SignList::load(bytes);
  SignList b = SignList::load(bytes);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.entries()[i].name == b.entries()[i].name);
    CHECK(a.entries()[i].readings == b.entries()[i].readings);
  }
}

TEST_CASE("weighted mean polyvalence") {
  SignList list = mini_signlist();

  SUBCASE("single sign equals its reading count") {
    std::map<SignName, long long> freq{{SignName{"KA"}, 7}};
    CHECK(list.weighted_mean_polyvalence(freq) == doctest::Approx(5.0));
  }
  SUBCASE("hand-computed two-sign fixture") {
    // (2*3 + 4*1) / 4 = 2.5
    SignList l = SignList::load(
        R"({"name": "A", "readings": [{"v": "a"}, {"v": "b"}]}
{"name": "B", "readings": [{"v": "c"}, {"v": "d"}, {"v": "e"}, {"v": "f"}]})");
    std::map<SignName, long long> freq{{SignName{"A"}, 3}, {SignName{"B"}, 1}};
    CHECK(l.weighted_mean_polyvalence(freq) == doctest::Approx(2.5));
  }
  SUBCASE("matches brute-force expansion over random fixtures") {
    SplitMix64 rng(99);
    std::map<SignName, long long> freq;
    for (const auto& entry : list.entries())
      freq[entry.name] = 1 + static_cast<long long>(rng.next_below(20));
    // expand to a multiset of per-occurrence reading counts
    long double sum = 0;
    long long n = 0;
    for (const auto& [name, f] : freq) {
      for (long long i = 0; i < f; ++i) {
        sum += static_cast<long double>(list.readings_of(name).size());
        ++n;
      }
    }
    CHECK(list.weighted_mean_polyvalence(freq) ==
          doctest::Approx(static_cast<double>(sum / n)).epsilon(1e-12));
  }
  SUBCASE("empty map is an error") {
    CHECK_THROWS_AS(list.weighted_mean_polyvalence({}), SignListError);
  }
  SUBCASE("unknown key is an error") {
    std::map<SignName, long long> freq{{SignName{"NOPE"}, 1}};
    CHECK_THROWS_AS(list.weighted_mean_polyvalence(freq), SignListError);
  }
}

TEST_CASE("with_counts replaces counts and reorders") {
  SignList list = mini_signlist();
  std::map<std::pair<std::string, std::string>, long long> counts{
      {{"KA", "inim"}, 100}, {{"KA", "ka"}, 1}};
  SignList recounted = list.with_counts(counts);
  const auto& ka = recounted.readings_of(SignName{"KA"});
  CHECK(ka[0].first.str() == "inim");
  CHECK(ka[0].second == 100);
  // untouched entries drop to zero
  CHECK(recounted.readings_of(SignName{"EN"})[0].second == 0);
  // original untouched
  CHECK(list.readings_of(SignName{"KA"})[0].first.str() == "ka");
}
