#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sumtab/baselines.hpp"
#include "sumtab/chrf.hpp"
#include "sumtab/chunker.hpp"
#include "sumtab/corpus.hpp"
#include "sumtab/glyph_map.hpp"
#include "sumtab/signlist.hpp"
#include "sumtab/translit.hpp"

namespace py = pybind11;
using namespace sumtab;

namespace {

TabletRecord record_from_dict(const py::dict& d) {
  nlohmann::json j;
  for (const char* key : {"id", "period", "genre", "glyphs", "transliteration"}) {
    if (d.contains(key)) j[key] = d[key].cast<std::string>();
  }
  return record_from_json(j);
}

std::vector<TabletRecord> records_from_list(const py::list& records) {
  std::vector<TabletRecord> out;
  for (const auto& item : records)
    out.push_back(record_from_dict(item.cast<py::dict>()));
  return out;
}

py::dict stats_dict(const MappingStats& s) {
  py::dict d;
  d["readings_total"] = s.readings_total;
  d["readings_named"] = s.readings_named;
  d["names_total"] = s.names_total;
  d["names_unicoded"] = s.names_unicoded;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sumtablets, m) {
  m.doc() = "Sumerian cuneiform corpus toolkit (C++ core)";

  // malformed input data surfaces as ValueError
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SignListError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const CorpusError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<SignList>(m, "SignList")
      .def_static(
          "load_file",
          [](const std::string& path, bool first_wins) {
            return SignList::load_file(
                path, first_wins ? SignList::CollisionPolicy::FirstWins
                                 : SignList::CollisionPolicy::Strict);
          },
          py::arg("path"), py::arg("first_wins") = false)
      .def_static(
          "loads",
          [](const std::string& ndjson, bool first_wins) {
            return SignList::load(
                ndjson, first_wins ? SignList::CollisionPolicy::FirstWins
                                   : SignList::CollisionPolicy::Strict);
          },
          py::arg("ndjson"), py::arg("first_wins") = false)
      .def("__len__", &SignList::size)
      .def("reading_to_name",
           [](const SignList& self, const std::string& reading)
               -> std::optional<std::string> {
             auto name = self.reading_to_name(ReadingValue::parse(reading));
             if (!name) return std::nullopt;
             return name->value;
           })
      .def("name_to_unicode",
           [](const SignList& self, const std::string& name)
               -> std::optional<std::string> {
             auto codes = self.name_to_unicode(SignName{name});
             if (!codes) return std::nullopt;
             return codes->utf8();
           })
      .def("readings_of",
           [](const SignList& self, const std::string& name) {
             std::vector<std::pair<std::string, long long>> out;
             for (const auto& [r, c] : self.readings_of(SignName{name}))
               out.emplace_back(r.str(), c);
             return out;
           })
      .def("weighted_mean_polyvalence",
           [](const SignList& self,
              const std::map<std::string, long long>& freq) {
             std::map<SignName, long long> m;
             for (const auto& [k, v] : freq) m[SignName{k}] = v;
             return self.weighted_mean_polyvalence(m);
           });

  m.def("normalize_annotations",
        [](const std::string& raw) { return normalize_annotations(raw); });

  m.def(
      "map_transliteration",
      [](const std::string& text, const SignList& list) {
        MappedStream mapped = map_stream(tokenize_text(text), list);
        py::dict out;
        out["glyphs"] = render_glyphs(mapped.glyphs);
        out["transliteration"] = render_transliteration(mapped.translit);
        out["stats"] = stats_dict(mapped.stats);
        return out;
      },
      py::arg("text"), py::arg("signlist"),
      "Maps transliteration text to its parallel glyph string.");

  m.def(
      "chrf",
      [](const std::string& hyp, const std::string& ref, double beta,
         int max_order, bool eq1_literal) {
        ChrfParams p;
        p.beta = beta;
        p.max_order = max_order;
        p.eq1_literal = eq1_literal;
        return chrf(hyp, ref, p);
      },
      py::arg("hyp"), py::arg("ref"), py::arg("beta") = 2.0,
      py::arg("max_order") = 6, py::arg("eq1_literal") = false);

  m.def(
      "evaluate_corpus",
      [](const std::map<std::string, std::string>& preds,
         const py::list& refs, double beta, int max_order,
         bool include_specials) {
        ChrfParams p;
        p.beta = beta;
        p.max_order = max_order;
        p.include_specials = include_specials;
        ChrfReport rep = evaluate_corpus(preds, records_from_list(refs), p);
        py::dict out;
        out["overall"] = rep.overall;
        out["per_tablet"] = rep.per_tablet;
        out["by_period"] = rep.by_period;
        out["by_genre"] = rep.by_genre;
        out["missing"] = rep.missing;
        return out;
      },
      py::arg("preds"), py::arg("refs"), py::arg("beta") = 2.0,
      py::arg("max_order") = 6, py::arg("include_specials") = true);

  m.def(
      "dict_transliterate",
      [](const std::string& glyphs, const SignList& list,
         const std::string& mode, std::uint64_t seed,
         const std::string& tablet_id) {
        SamplerConfig cfg;
        cfg.mode = mode == "argmax" ? SamplerConfig::Mode::Argmax
                                    : SamplerConfig::Mode::Weighted;
        cfg.seed = seed;
        return render_transliteration(
            dict_transliterate(parse_glyphs(glyphs), list, cfg, tablet_id));
      },
      py::arg("glyphs"), py::arg("signlist"), py::arg("mode") = "weighted",
      py::arg("seed") = 0, py::arg("tablet_id") = "");

  py::class_<NgramModel>(m, "NgramModel")
      .def_property_readonly("order", &NgramModel::order)
      .def_property_readonly("lambda_", &NgramModel::lambda)
      .def("transliterate",
           [](const NgramModel& self, const std::string& glyphs,
              const SignList& list) {
             return render_transliteration(
                 ngram_transliterate(parse_glyphs(glyphs), self, list));
           })
      .def("dumps", [](const NgramModel& self) { return self.to_json().dump(); })
      .def_static("loads", [](const std::string& s) {
        return NgramModel::from_json(nlohmann::json::parse(s));
      });

  m.def(
      "train_ngram",
      [](const py::list& records, const SignList& list, int k, double lam) {
        return train_ngram(records_from_list(records), list, k, lam);
      },
      py::arg("records"), py::arg("signlist"), py::arg("k"),
      py::arg("lambda_") = 0.4);

  m.def(
      "count_corpus",
      [](const py::list& records, const SignList& list) {
        auto counts = count_corpus(records_from_list(records), list);
        py::dict out;
        for (const auto& [key, c] : counts)
          out[py::make_tuple(key.first, key.second)] = c;
        return out;
      },
      py::arg("records"), py::arg("signlist"));

  m.def(
      "with_counts",
      [](const SignList& list,
         const std::map<std::pair<std::string, std::string>, long long>&
             counts) { return list.with_counts(counts); },
      py::arg("signlist"), py::arg("counts"));

  m.def(
      "chunk_tablet",
      [](const py::dict& record, std::size_t max_len) {
        py::list out;
        for (const auto& c : chunk_tablet(record_from_dict(record), max_len)) {
          py::dict d;
          d["id"] = c.parent_id;
          d["chunk"] = c.index;
          d["glyphs"] = render_glyphs(c.glyphs);
          d["transliteration"] = render_transliteration(c.translit);
          d["period"] = c.period;
          d["genre"] = c.genre;
          out.append(d);
        }
        return out;
      },
      py::arg("record"), py::arg("max_len") = 128);

  m.def(
      "stratified_split",
      [](const py::list& records, std::uint64_t seed, double train,
         double validation, double test) {
        SplitAssignment a = stratified_split(records_from_list(records),
                                             {train, validation, test}, seed);
        py::dict out;
        out["train"] = a.train;
        out["validation"] = a.validation;
        out["test"] = a.test;
        return out;
      },
      py::arg("records"), py::arg("seed") = 2024, py::arg("train") = 0.90,
      py::arg("validation") = 0.05, py::arg("test") = 0.05);
}
