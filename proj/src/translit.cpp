#include "sumtab/translit.hpp"

#include <array>
#include <cctype>

namespace sumtab {

namespace {

constexpr std::string_view kUnkLiteral = "<UNK>";

// <...> spans deleted, content and markers; strays dropped with a warning.
std::string remove_angle_spans(std::string_view s, ParseWarnings* w) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<') {
      std::size_t close = s.find('>', i + 1);
      if (close != std::string_view::npos) {
        i = close + 1;
      } else {
        if (w) ++w->unbalanced;
        ++i;
      }
    } else if (s[i] == '>') {
      if (w) ++w->unbalanced;
      ++i;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// << >> markers removed, enclosed text retained.
std::string strip_double_angles(std::string s, ParseWarnings* w) {
  std::size_t open;
  while ((open = s.find("<<")) != std::string::npos) {
    std::size_t close = s.find(">>", open + 2);
    if (close == std::string::npos) {
      if (w) ++w->unbalanced;
      s.erase(open, 2);
      continue;
    }
    s.erase(close, 2);
    s.erase(open, 2);
  }
  return s;
}

// [...] spans (content included) replaced by a breakage marker.
std::string replace_square_spans(std::string_view s, ParseWarnings* w) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '[') {
      int depth = 1;
      std::size_t j = i + 1;
      while (j < s.size() && depth > 0) {
        if (s[j] == '[') ++depth;
        if (s[j] == ']') --depth;
        ++j;
      }
      if (depth == 0) {
        out += "...";
        i = j;
      } else {
        if (w) ++w->unbalanced;
        ++i;
      }
    } else if (s[i] == ']') {
      if (w) ++w->unbalanced;
      ++i;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

std::string remove_delimited(std::string s, std::string_view open,
                             std::string_view close, ParseWarnings* w) {
  std::size_t at;
  while ((at = s.find(open)) != std::string::npos) {
    std::size_t end = s.find(close, at + open.size());
    if (end == std::string::npos) {
      if (w) ++w->unbalanced;
      s.erase(at, open.size());
      continue;
    }
    s.erase(at, end + close.size() - at);
  }
  return s;
}

void erase_all(std::string& s, std::string_view needle, std::size_t* counter) {
  std::size_t at;
  while ((at = s.find(needle)) != std::string::npos) {
    s.erase(at, needle.size());
    if (counter) ++*counter;
  }
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t at = 0;
  while ((at = s.find(from, at)) != std::string::npos) {
    s.replace(at, from.size(), to);
    at += to.size();
  }
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool in_space = true;  // trims leading space
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string merge_ellipses(std::string s) {
  std::size_t before;
  do {
    before = s.size();
    replace_all(s, "....", "...");
    replace_all(s, "... ...", "...");
  } while (s.size() != before);
  return s;
}

std::string repair_hyphens(std::string_view s) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t sp = s.find(' ', pos);
    std::string_view tok = s.substr(
        pos, sp == std::string_view::npos ? std::string_view::npos : sp - pos);
    pos = sp == std::string_view::npos ? s.size() + 1 : sp + 1;

    std::string word(tok);
    replace_all(word, "--", "-");
    while (!word.empty() && word.front() == '-') word.erase(word.begin());
    while (!word.empty() && word.back() == '-') word.pop_back();
    if (word.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

bool is_ascii_upper_item(std::string_view s) {
  bool has_upper = false;
  for (char c : s) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') has_upper = true;
  }
  return has_upper;
}

void flush_segment(std::string& seg, Word& word, ParseWarnings* w) {
  if (seg.empty()) return;
  if (is_ascii_upper_item(seg) && is_valid_sign_name(seg)) {
    word.tokens.push_back(Token::make_sign_name(SignName{seg}));
  } else {
    try {
      word.tokens.push_back(Token::make_reading(ReadingValue::parse(seg)));
    } catch (const std::invalid_argument&) {
      if (w) ++w->unparsed_tokens;
      word.tokens.push_back(Token::make_unknown());
    }
  }
  seg.clear();
}

// A word item: readings split on '-', {…} determinatives, embedded <UNK>.
Word parse_word(std::string_view piece, ParseWarnings* w) {
  Word word;
  std::string seg;
  std::size_t i = 0;
  while (i < piece.size()) {
    if (piece.compare(i, kUnkLiteral.size(), kUnkLiteral) == 0) {
      flush_segment(seg, word, w);
      word.tokens.push_back(Token::make_unknown());
      i += kUnkLiteral.size();
    } else if (piece[i] == '{') {
      flush_segment(seg, word, w);
      std::size_t close = piece.find('}', i + 1);
      std::string_view inner;
      if (close == std::string_view::npos) {
        if (w) ++w->unbalanced;
        inner = piece.substr(i + 1);
        i = piece.size();
      } else {
        inner = piece.substr(i + 1, close - i - 1);
        i = close + 1;
      }
      // a brace group can hold several hyphenated determinatives
      std::size_t p = 0;
      while (p <= inner.size()) {
        std::size_t dash = inner.find('-', p);
        std::string_view one = inner.substr(
            p, dash == std::string_view::npos ? std::string_view::npos
                                              : dash - p);
        p = dash == std::string_view::npos ? inner.size() + 1 : dash + 1;
        if (one.empty()) continue;
        try {
          word.tokens.push_back(
              Token::make_determinative(ReadingValue::parse(one)));
        } catch (const std::invalid_argument&) {
          if (w) ++w->unparsed_tokens;
          word.tokens.push_back(Token::make_unknown());
        }
      }
    } else if (piece[i] == '-') {
      flush_segment(seg, word, w);
      ++i;
    } else if (piece[i] == '}') {
      if (w) ++w->unbalanced;
      ++i;
    } else {
      seg.push_back(piece[i++]);
    }
  }
  flush_segment(seg, word, w);
  return word;
}

}  // namespace

std::string_view special_str(SpecialKind k) {
  switch (k) {
    case SpecialKind::Surface: return "<SURFACE>";
    case SpecialKind::Newline: return "\n";
    case SpecialKind::Ellipsis: return "...";
    case SpecialKind::Ruling: return "<RULING>";
    case SpecialKind::Column: return "<COLUMN>";
    case SpecialKind::BlankSpace: return "<BLANK_SPACE>";
    case SpecialKind::Unk: return "<UNK>";
  }
  return "<UNK>";
}

Token Token::make_reading(ReadingValue r) {
  Token t;
  t.kind = Kind::Reading;
  t.reading = std::move(r);
  return t;
}
Token Token::make_determinative(ReadingValue r) {
  Token t;
  t.kind = Kind::Determinative;
  t.reading = std::move(r);
  return t;
}
Token Token::make_sign_name(SignName n) {
  Token t;
  t.kind = Kind::SignName;
  t.name = std::move(n);
  return t;
}
Token Token::make_special(SpecialKind k) {
  Token t;
  t.kind = Kind::Special;
  t.special = k;
  return t;
}
Token Token::make_unknown() {
  Token t;
  t.kind = Kind::Unknown;
  return t;
}

std::size_t TokenStream::atom_count() const {
  std::size_t n = 0;
  for (const auto& item : items) n += item.is_word ? item.word.tokens.size() : 1;
  return n;
}

std::string normalize_annotations(std::string_view raw, ParseWarnings* w) {
  std::string s = remove_delimited(std::string(raw), "($", "$)", w);
  s = strip_double_angles(std::move(s), w);
  s = replace_square_spans(s, w);
  s = remove_angle_spans(s, w);

  // half brackets: notation stripped, text kept
  erase_all(s, "⌈", nullptr);
  erase_all(s, "⌉", nullptr);
  erase_all(s, "⌜", nullptr);
  erase_all(s, "⌝", nullptr);
  std::size_t* sigils = w ? &w->stripped_sigils : nullptr;
  erase_all(s, "!", sigils);
  erase_all(s, "#", sigils);
  erase_all(s, "?", sigils);

  s = collapse_whitespace(s);
  s = merge_ellipses(std::move(s));
  return repair_hyphens(s);
}

std::vector<StreamItem> tokenize_line(std::string_view normalized,
                                      ParseWarnings* w) {
  std::vector<StreamItem> out;
  std::size_t pos = 0;
  while (pos <= normalized.size()) {
    std::size_t sp = normalized.find(' ', pos);
    std::string_view item = normalized.substr(
        pos,
        sp == std::string_view::npos ? std::string_view::npos : sp - pos);
    pos = sp == std::string_view::npos ? normalized.size() + 1 : sp + 1;
    if (item.empty()) continue;

    static constexpr std::array<SpecialKind, 4> kNamed = {
        SpecialKind::Surface, SpecialKind::Ruling, SpecialKind::Column,
        SpecialKind::BlankSpace};
    bool matched = false;
    for (SpecialKind k : kNamed) {
      if (item == special_str(k)) {
        out.push_back(StreamItem::make(k));
        matched = true;
        break;
      }
    }
    if (matched) continue;

    // mid-word breakage splits into word + ellipsis parts
    std::size_t p = 0;
    while (p < item.size()) {
      std::size_t dots = item.find("...", p);
      std::string_view before = item.substr(
          p, dots == std::string_view::npos ? std::string_view::npos
                                            : dots - p);
      while (!before.empty() && before.front() == '-') before.remove_prefix(1);
      while (!before.empty() && before.back() == '-') before.remove_suffix(1);
      if (!before.empty()) {
        Word word = parse_word(before, w);
        if (word.tokens.empty()) {
          if (w) ++w->empty_words;
        } else {
          out.push_back(StreamItem::make(std::move(word)));
        }
      }
      if (dots == std::string_view::npos) break;
      out.push_back(StreamItem::make(SpecialKind::Ellipsis));
      p = dots + 3;
    }
  }
  return out;
}

TokenStream tokenize_text(std::string_view text, ParseWarnings* w) {
  TokenStream stream;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (!first) stream.items.push_back(StreamItem::make(SpecialKind::Newline));
    first = false;
    for (auto& item : tokenize_line(normalize_annotations(line, w), w))
      stream.items.push_back(std::move(item));
  }
  return stream;
}

std::string render_word(const Word& w) {
  std::string out;
  const Token* prev = nullptr;
  for (const auto& t : w.tokens) {
    bool joinable = t.kind != Token::Kind::Determinative;
    bool prev_joinable = prev && prev->kind != Token::Kind::Determinative;
    if (prev && joinable && prev_joinable) out.push_back('-');
    switch (t.kind) {
      case Token::Kind::Reading: out += t.reading.str(); break;
      case Token::Kind::Determinative:
        out.push_back('{');
        out += t.reading.str();
        out.push_back('}');
        break;
      case Token::Kind::SignName: out += t.name.value; break;
      case Token::Kind::Special: out += special_str(t.special); break;
      case Token::Kind::Unknown: out += kUnkLiteral; break;
    }
    prev = &t;
  }
  return out;
}

std::string render_item(const StreamItem& item) {
  return item.is_word ? render_word(item.word)
                      : std::string(special_str(item.special));
}

std::string render_transliteration(const TokenStream& stream) {
  std::string out;
  for (const auto& item : stream.items) {
    if (!item.is_word && item.special == SpecialKind::Newline) {
      out.push_back('\n');
      continue;
    }
    if (!out.empty() && out.back() != '\n') out.push_back(' ');
    out += render_item(item);
  }
  return out;
}

}  // namespace sumtab
