#include "sumtab/chunker.hpp"

#include <algorithm>
#include <array>

namespace sumtab {

namespace {

struct Line {
  std::vector<GlyphToken> glyphs;
  std::vector<StreamItem> translit;

  std::size_t atoms() const { return glyphs.size(); }
};

// Aligned line division: a Newline special closes the line it ends.
std::vector<Line> split_lines(const TabletRecord& rec) {
  std::vector<Line> lines;
  Line current;
  std::size_t gi = 0;
  for (const auto& item : rec.translit.items) {
    std::size_t width = item.is_word ? item.word.tokens.size() : 1;
    current.translit.push_back(item);
    for (std::size_t k = 0; k < width && gi < rec.glyphs.size(); ++k)
      current.glyphs.push_back(rec.glyphs[gi++]);
    if (!item.is_word && item.special == SpecialKind::Newline) {
      lines.push_back(std::move(current));
      current = {};
    }
  }
  if (!current.translit.empty()) lines.push_back(std::move(current));
  return lines;
}

// Copies atoms [from, to) of a line into a chunk, splitting words that
// straddle the cut.
void append_atom_range(const Line& line, std::size_t from, std::size_t to,
                       ChunkPair& chunk) {
  for (std::size_t k = from; k < to; ++k) chunk.glyphs.push_back(line.glyphs[k]);
  std::size_t at = 0;
  for (const auto& item : line.translit) {
    std::size_t width = item.is_word ? item.word.tokens.size() : 1;
    std::size_t lo = std::max(at, from);
    std::size_t hi = std::min(at + width, to);
    if (lo < hi) {
      if (!item.is_word) {
        chunk.translit.items.push_back(item);
      } else if (lo == at && hi == at + width) {
        chunk.translit.items.push_back(item);
      } else {
        Word part;
        part.tokens.assign(item.word.tokens.begin() + (lo - at),
                           item.word.tokens.begin() + (hi - at));
        chunk.translit.items.push_back(StreamItem::make(std::move(part)));
      }
    }
    at += width;
    if (at >= to) break;
  }
}

}  // namespace

std::vector<ChunkPair> chunk_tablet(const TabletRecord& rec,
                                    std::size_t max_len) {
  static constexpr std::array<std::size_t, 5> kSchedule = {16, 8, 4, 2, 1};
  const std::vector<Line> lines = split_lines(rec);

  std::vector<ChunkPair> chunks;
  auto new_chunk = [&](std::size_t line_start) {
    ChunkPair c;
    c.parent_id = rec.id;
    c.index = static_cast<int>(chunks.size());
    c.period = rec.period;
    c.genre = rec.genre;
    c.line_start = line_start;
    return c;
  };

  std::size_t pos = 0;
  while (pos < lines.size()) {
    std::size_t taken = 0;
    for (std::size_t n : kSchedule) {
      std::size_t group = std::min(n, lines.size() - pos);
      std::size_t atoms = 0;
      for (std::size_t k = 0; k < group; ++k) atoms += lines[pos + k].atoms();
      if (atoms < max_len) {
        taken = group;
        break;
      }
    }
    if (taken > 0) {
      ChunkPair c = new_chunk(pos);
      for (std::size_t k = 0; k < taken; ++k)
        append_atom_range(lines[pos + k], 0, lines[pos + k].atoms(), c);
      c.line_end = pos + taken;
      chunks.push_back(std::move(c));
      pos += taken;
      continue;
    }
    // oversized single line: hard split at max_len - 1 atoms
    const Line& line = lines[pos];
    for (std::size_t from = 0; from < line.atoms(); from += max_len - 1) {
      std::size_t to = std::min(from + max_len - 1, line.atoms());
      ChunkPair c = new_chunk(pos);
      c.line_end = pos + 1;
      c.hard_split = true;
      append_atom_range(line, from, to, c);
      chunks.push_back(std::move(c));
    }
    ++pos;
  }
  return chunks;
}

SamplingManifest build_manifest(const std::vector<ChunkPair>& chunks,
                                long long factor) {
  if (factor < 1) throw std::invalid_argument("up-sampling factor must be >= 1");
  SamplingManifest manifest;
  manifest.factor = factor;
  for (const auto& chunk : chunks) {
    const bool admin = chunk.genre == "Administrative";
    manifest.items.push_back(
        {chunk.parent_id, chunk.index, admin ? 1 : factor});
    if (admin) {
      ++manifest.administrative_chunks;
    } else {
      ++manifest.non_administrative_chunks;
    }
  }
  return manifest;
}

nlohmann::json chunk_to_json(const ChunkPair& chunk) {
  return nlohmann::json{{"id", chunk.parent_id},
                        {"chunk", chunk.index},
                        {"glyphs", render_glyphs(chunk.glyphs)},
                        {"transliteration",
                         render_transliteration(chunk.translit)},
                        {"period", chunk.period},
                        {"genre", chunk.genre}};
}

nlohmann::json manifest_to_json(const SamplingManifest& manifest) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : manifest.items) {
    items.push_back({{"id", item.parent_id},
                     {"chunk", item.chunk},
                     {"repeat", item.repeat}});
  }
  return nlohmann::json{
      {"factor", manifest.factor},
      {"administrative_chunks", manifest.administrative_chunks},
      {"non_administrative_chunks", manifest.non_administrative_chunks},
      {"weighted_total", manifest.weighted_total()},
      {"items", items}};
}

}  // namespace sumtab
