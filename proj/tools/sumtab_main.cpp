#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumtab/baselines.hpp"
#include "sumtab/chrf.hpp"
#include "sumtab/chunker.hpp"
#include "sumtab/corpus.hpp"
#include "sumtab/glyph_map.hpp"
#include "sumtab/parallel.hpp"
#include "sumtab/rng.hpp"
#include "sumtab/signlist.hpp"
#include "sumtab/translit.hpp"

namespace fs = std::filesystem;
using namespace sumtab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 2024;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write " + path.string());
  out << content;
}

void write_meta(const fs::path& path, nlohmann::json meta) {
  meta["tool_version"] = kVersion;
  write_file(path, meta.dump(2) + "\n");
}

SignList load_list(const std::string& path, bool first_wins) {
  return SignList::load_file(path, first_wins
                                       ? SignList::CollisionPolicy::FirstWins
                                       : SignList::CollisionPolicy::Strict);
}

SplitRatios parse_ratios(const std::vector<double>& r) {
  if (r.empty()) return {};
  if (r.size() != 3)
    throw std::invalid_argument("--ratios needs exactly three values");
  return {r[0], r[1], r[2]};
}

std::map<std::string, std::string> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open predictions: " + path);
  std::map<std::string, std::string> preds;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line);
    preds[j.at("id").get<std::string>()] =
        j.at("prediction").get<std::string>();
  }
  return preds;
}

int run(int argc, char** argv) {
  CLI::App app{"Sumerian cuneiform corpus and transliteration toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string signlist_path, catalogue_path, input_path, out_path;
  std::string train_path, preds_path, refs_path, tsv_path, model_path,
      manifest_path;
  std::vector<double> ratios;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  bool first_wins = false;

  // build
  auto* build = app.add_subcommand(
      "build", "cdl documents + catalogue + sign list -> dataset splits");
  build->add_option("--input", input_path, "directory of cdl JSON documents")
      ->required();
  build->add_option("--catalogue", catalogue_path, "catalogue.json")->required();
  build->add_option("--signlist", signlist_path, "sign list NDJSON")->required();
  build->add_option("--out", out_path, "output directory")->required();
  build->add_option("--ratios", ratios, "train/validation/test ratios");
  build->add_option("--seed", seed, "split shuffle seed");
  build->add_option("--workers", workers, "worker threads (0 = all cores)");
  build->add_flag("--first-wins", first_wins,
                  "keep the first claimant of a contested reading");

  // split
  auto* split = app.add_subcommand("split",
                                   "stratified split of a dataset JSONL");
  split->add_option("--input", input_path, "dataset JSONL")->required();
  split->add_option("--out", out_path, "assignment JSON")->required();
  split->add_option("--ratios", ratios, "train/validation/test ratios");
  split->add_option("--seed", seed, "shuffle seed");

  // stats
  auto* stats = app.add_subcommand("stats", "corpus composition summary");
  std::vector<std::string> stats_inputs;
  stats->add_option("--input", stats_inputs,
                    "dataset JSONL file(s) or dataset directory")
      ->required();

  // map
  auto* map_cmd =
      app.add_subcommand("map", "transliteration text -> glyph string");
  std::string map_text;
  map_cmd->add_option("text", map_text, "transliteration input")->required();
  map_cmd->add_option("--signlist", signlist_path, "sign list NDJSON")
      ->required();
  map_cmd->add_flag("--first-wins", first_wins);

  // baseline
  auto* baseline = app.add_subcommand("baseline",
                                      "non-neural transliteration systems");
  std::string mode = "dict";
  int ngram_k = 2;
  double lambda = 0.4;
  baseline->add_option("--mode", mode, "dict | dict-argmax | ngram")
      ->check(CLI::IsMember({"dict", "dict-argmax", "ngram"}));
  baseline->add_option("--train", train_path,
                       "training split JSONL (counts / n-gram model)")
      ->required();
  baseline->add_option("--input", input_path, "tablets to transliterate")
      ->required();
  baseline->add_option("--signlist", signlist_path, "sign list NDJSON")
      ->required();
  baseline->add_option("--out", out_path, "predictions JSONL")->required();
  baseline->add_option("--seed", seed, "sampling seed");
  baseline->add_option("--k", ngram_k, "n-gram order");
  baseline->add_option("--lambda", lambda, "stupid-backoff factor");
  baseline->add_option("--save-model", model_path, "write n-gram model JSON");
  baseline->add_option("--workers", workers);
  baseline->add_flag("--first-wins", first_wins);

  // eval
  auto* eval = app.add_subcommand("eval", "chrF scoring and Table-style report");
  ChrfParams chrf_params;
  bool exclude_specials = false;
  eval->add_option("--preds", preds_path, "predictions JSONL")->required();
  eval->add_option("--refs", refs_path, "reference dataset JSONL")->required();
  eval->add_option("--out", out_path, "report JSON");
  eval->add_option("--tsv", tsv_path, "report TSV");
  eval->add_option("--beta", chrf_params.beta, "chrF beta");
  eval->add_option("--order", chrf_params.max_order, "max n-gram order");
  eval->add_flag("--include-specials,!--exclude-specials", chrf_params.include_specials,
                 "score special tokens as part of the string");
  eval->add_flag("--eq1-literal", chrf_params.eq1_literal,
                 "use the (1+beta)^2 coefficient");
  (void)exclude_specials;

  // chunk
  auto* chunk = app.add_subcommand("chunk",
                                   "aligned training chunks + sampling manifest");
  std::size_t max_len = 128;
  long long factor = 5;
  chunk->add_option("--input", input_path, "dataset JSONL")->required();
  chunk->add_option("--out", out_path, "chunks JSONL")->required();
  chunk->add_option("--manifest", manifest_path, "sampling manifest JSON");
  chunk->add_option("--max-len", max_len, "maximum tokens per chunk");
  chunk->add_option("--factor", factor, "non-administrative up-sampling factor");

  CLI11_PARSE(app, argc, argv);

  if (build->parsed()) {
    SignList list = load_list(signlist_path, first_wins);
    Catalogue cat = Catalogue::load_file(catalogue_path);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input_path)) {
      if (entry.path().extension() == ".json" &&
          entry.path().filename() != fs::path(catalogue_path).filename())
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<TabletRecord> corpus(files.size());
    std::vector<std::string> errors(files.size());
    parallel_for(files.size(), workers, [&](std::size_t i) {
      try {
        std::ifstream in(files[i]);
        nlohmann::json doc;
        in >> doc;
        corpus[i] = build_tablet(doc, cat, list);
      } catch (const std::exception& e) {
        errors[i] = files[i].string() + ": " + e.what();
      }
    });
    for (const auto& err : errors)
      if (!err.empty()) throw CorpusError(err);

    SplitRatios r = parse_ratios(ratios);
    SplitAssignment assignment = stratified_split(corpus, r, seed);
    export_dataset(corpus, assignment, out_path);
    write_meta(fs::path(out_path) / "run_meta.json",
               {{"subcommand", "build"},
                {"seed", seed},
                {"ratios", {r.train, r.validation, r.test}},
                {"signlist", signlist_path},
                {"catalogue", catalogue_path},
                {"documents", files.size()},
                {"first_wins", first_wins}});
    std::cerr << "built " << corpus.size() << " tablets -> " << out_path
              << "\n";
    return 0;
  }

  if (split->parsed()) {
    auto corpus = load_dataset_file(input_path);
    SplitRatios r = parse_ratios(ratios);
    SplitAssignment assignment = stratified_split(corpus, r, seed);
    nlohmann::json j = {{"train", assignment.train},
                        {"validation", assignment.validation},
                        {"test", assignment.test},
                        {"seed", seed},
                        {"ratios", {r.train, r.validation, r.test}}};
    write_file(out_path, j.dump(2) + "\n");
    return 0;
  }

  if (stats->parsed()) {
    std::vector<std::string> files;
    for (const auto& path : stats_inputs) {
      if (fs::is_directory(path)) {
        for (const auto& entry : fs::directory_iterator(path))
          if (entry.path().extension() == ".jsonl")
            files.push_back(entry.path().string());
      } else {
        files.push_back(path);
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw CorpusError("stats: no dataset files found");
    std::vector<TabletRecord> corpus;
    for (const auto& path : files) {
      auto part = load_dataset_file(path);
      corpus.insert(corpus.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
    }
    std::cout << corpus_stats(corpus).dump(2) << "\n";
    return 0;
  }

  if (map_cmd->parsed()) {
    SignList list = load_list(signlist_path, first_wins);
    TokenStream stream = tokenize_text(map_text);
    MappedStream mapped = map_stream(stream, list);
    std::cout << render_glyphs(mapped.glyphs) << "\n";
    return 0;
  }

  if (baseline->parsed()) {
    SignList base_list = load_list(signlist_path, first_wins);
    auto train = load_dataset_file(train_path);
    SignList list = base_list.with_counts(count_corpus(train, base_list));
    auto inputs = load_dataset_file(input_path);

    NgramModel model;
    if (mode == "ngram") model = train_ngram(train, list, ngram_k, lambda);
    if (!model_path.empty() && mode == "ngram")
      write_file(model_path, model.to_json().dump() + "\n");

    std::vector<std::string> lines(inputs.size());
    parallel_for(inputs.size(), workers, [&](std::size_t i) {
      TokenStream pred;
      if (mode == "ngram") {
        pred = ngram_transliterate(inputs[i].glyphs, model, list);
      } else {
        SamplerConfig cfg;
        cfg.mode = mode == "dict-argmax" ? SamplerConfig::Mode::Argmax
                                         : SamplerConfig::Mode::Weighted;
        cfg.seed = seed;
        pred = dict_transliterate(inputs[i].glyphs, list, cfg, inputs[i].id);
      }
      lines[i] = nlohmann::json{{"id", inputs[i].id},
                                {"prediction",
                                 render_transliteration(pred)}}
                     .dump();
    });
    std::string content;
    for (const auto& line : lines) {
      content += line;
      content.push_back('\n');
    }
    write_file(out_path, content);
    write_meta(out_path + ".meta.json", {{"subcommand", "baseline"},
                                         {"mode", mode},
                                         {"seed", seed},
                                         {"k", ngram_k},
                                         {"lambda", lambda},
                                         {"train", train_path},
                                         {"input", input_path}});
    return 0;
  }

  if (eval->parsed()) {
    auto preds = load_predictions(preds_path);
    auto refs = load_dataset_file(refs_path);
    ChrfReport report = evaluate_corpus(preds, refs, chrf_params);
    if (!out_path.empty())
      write_file(out_path, report_to_json(report).dump(2) + "\n");
    if (!tsv_path.empty())
      write_file(tsv_path, report_tsv({{"system", &report}}));
    std::cout << "overall " << report.overall << "\n";
    return 0;
  }

  if (chunk->parsed()) {
    auto corpus = load_dataset_file(input_path);
    std::vector<ChunkPair> chunks;
    for (const auto& rec : corpus) {
      for (auto& c : chunk_tablet(rec, max_len)) chunks.push_back(std::move(c));
    }
    std::string content;
    for (const auto& c : chunks) {
      content += chunk_to_json(c).dump();
      content.push_back('\n');
    }
    write_file(out_path, content);
    if (!manifest_path.empty()) {
      write_file(manifest_path,
                 manifest_to_json(build_manifest(chunks, factor)).dump(2) +
                     "\n");
    }
    std::cerr << chunks.size() << " chunks\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const SignListError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
