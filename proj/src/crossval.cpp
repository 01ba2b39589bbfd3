// Copyright 2026 The evcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evcat/crossval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "evcat/contingency.hpp"
#include "evcat/errors.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fingerprint_hex(uint64_t fp) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(fp));
  return buf;
}

int count_units(const Corpus& corpus, FoldUnit unit) {
  if (unit == FoldUnit::kDocument) {
    return static_cast<int>(corpus.documents.size());
  }
  int n = 0;
  for (const Document& d : corpus.documents) {
    n += static_cast<int>(d.sentences.size());
  }
  return n;
}

/// Flattened sentence index -> (document, sentence) in corpus order.
std::vector<std::pair<int, int>> sentence_coords(const Corpus& corpus) {
  std::vector<std::pair<int, int>> coords;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    for (size_t s = 0; s < corpus.documents[d].sentences.size(); ++s) {
      coords.emplace_back(static_cast<int>(d), static_cast<int>(s));
    }
  }
  return coords;
}

CorpusSlice slice_for_units(const Corpus& corpus, FoldUnit unit,
                            std::span<const int> units,
                            const std::vector<std::pair<int, int>>& coords) {
  CorpusSlice slice;
  slice.corpus = &corpus;
  slice.mask.resize(corpus.documents.size());
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    slice.mask[d].assign(corpus.documents[d].sentences.size(), 0);
  }
  for (int u : units) {
    if (unit == FoldUnit::kDocument) {
      slice.mask[u].assign(slice.mask[u].size(), 1);
    } else {
      slice.mask[coords[u].first][coords[u].second] = 1;
    }
  }
  return slice;
}

std::array<int64_t, kNumClasses> priors_from(const ContingencyTable& counts) {
  const std::vector<int> class_var = {counts.num_vars() - 1};
  std::array<int64_t, kNumClasses> priors{};
  for (const auto& [cell, n] : marginal_counts(counts, class_var)) {
    priors[cell[0]] += n;
  }
  return priors;
}

void fill_averages(CVReport& report) {
  double acc = 0.0, prec = 0.0, rec = 0.0;
  for (const FoldResult& f : report.folds) {
    acc += f.test.accuracy;
    prec += f.test.precision;
    rec += f.test.recall;
  }
  const double n = static_cast<double>(report.folds.size());
  report.avg_accuracy = acc / n;
  report.avg_precision = prec / n;
  report.avg_recall = rec / n;
}

}  // namespace

namespace {

FoldResult run_fold(const Corpus& corpus, const PipelineConfig& config,
                    const FoldPlan& plan,
                    const std::vector<std::pair<int, int>>& coords) {
  const CorpusSlice search =
      slice_for_units(corpus, config.fold_unit, plan.search_units, coords);
  const CorpusSlice selection =
      slice_for_units(corpus, config.fold_unit, plan.selection_units, coords);
  const CorpusSlice test =
      slice_for_units(corpus, config.fold_unit, plan.test_units, coords);

  // Everything the model is built from must trace back to SearchData.
  const CollocationInventory inv = build_inventory(search, config);
  internal_check(inv.train_fingerprint == search.fingerprint(),
                 "inventory not derived from this fold's SearchData");
  const FeatureTable table =
      build_feature_table(search, inv, config.organization, config.features);
  internal_check(table.corpus_fingerprint == search.fingerprint(),
                 "feature table not derived from this fold's SearchData");
  const ContingencyTable counts = contingency_from(table);
  MarginalCache cache(counts);

  SearchConfig search_config;
  search_config.stop_alpha = config.stop_alpha;
  search_config.pinned = pinned_feature_edges(counts.num_vars());
  search_config.max_steps = config.max_steps;
  search_config.refit_check = config.refit_check;
  const SearchTrace trace = backward_search(counts, search_config, &cache);

  const std::array<int64_t, kNumClasses> priors = priors_from(counts);
  const RowAssembler assembler(inv, config.organization, config.features);

  const PreparedCorpus sel_prepared = prepare_corpus(selection, assembler);
  const std::vector<Metrics> per_model =
      evaluate_trace_models(trace, cache, priors, sel_prepared);

  // Highest selection accuracy wins; ties go to the model with fewer
  // edges, i.e. the later trace index (totals match, so compare counts).
  int best = 0;
  for (int k = 1; k < static_cast<int>(per_model.size()); ++k) {
    if (per_model[k].correct >= per_model[best].correct) best = k;
  }

  Classifier classifier;
  classifier.model =
      fit_model(trace.structure_at(best), table.variables, counts);
  classifier.class_var = table.class_var();
  classifier.priors = priors;
  classifier.stop_alpha = config.stop_alpha;
  classifier.table_fingerprint = table_fingerprint(table);

  const PreparedCorpus test_prepared = prepare_corpus(test, assembler);
  const DecodeOutcome outcome =
      decode_with_classifier(test_prepared, classifier);

  FoldResult result;
  result.fold = plan.fold_index;
  result.num_models = trace.num_models();
  result.selected_model = best;
  result.selection_accuracy = per_model[best].accuracy;
  result.g2 = best == 0 ? 0.0 : trace.steps[best - 1].g2;
  result.dof = best == 0 ? 0.0 : trace.steps[best - 1].dof;
  result.test = compute_metrics(outcome.predictions, outcome.gold);
  return result;
}

}  // namespace

CVReport nested_cv(const Corpus& corpus, const PipelineConfig& config,
                   uint64_t seed, int num_threads) {
  validate_config(config);
  const auto coords = sentence_coords(corpus);
  const int num_units = count_units(corpus, config.fold_unit);
  const std::vector<FoldPlan> plans = make_fold_plans(num_units, seed);

  CVReport report;
  report.config = config;
  report.corpus_fingerprint = corpus_fingerprint(corpus);
  report.seed = seed;
  report.folds.resize(plans.size());

  if (num_threads <= 0) {
    num_threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  num_threads = std::clamp(num_threads, 1, static_cast<int>(plans.size()));

  std::vector<std::exception_ptr> errors(plans.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < plans.size();
         i = next.fetch_add(1)) {
      try {
        report.folds[i] = run_fold(corpus, config, plans[i], coords);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (num_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  fill_averages(report);
  return report;
}

CVReport majority_baseline_cv(const Corpus& corpus, FoldUnit fold_unit,
                              uint64_t seed) {
  const auto coords = sentence_coords(corpus);
  const int num_units = count_units(corpus, fold_unit);
  const std::vector<FoldPlan> plans = make_fold_plans(num_units, seed);

  CVReport report;
  report.config.fold_unit = fold_unit;
  report.corpus_fingerprint = corpus_fingerprint(corpus);
  report.seed = seed;

  for (const FoldPlan& plan : plans) {
    std::vector<int> train_units(plan.search_units);
    train_units.insert(train_units.end(), plan.selection_units.begin(),
                       plan.selection_units.end());
    const CorpusSlice train =
        slice_for_units(corpus, fold_unit, train_units, coords);
    const CorpusSlice test =
        slice_for_units(corpus, fold_unit, plan.test_units, coords);

    std::array<int64_t, kNumClasses> counts{};
    for (size_t d = 0; d < corpus.documents.size(); ++d) {
      const Document& doc = corpus.documents[d];
      for (size_t s = 0; s < doc.sentences.size(); ++s) {
        if (!train.mask[d][s]) continue;
        if (!doc.sentences[s].gold_class) {
          throw DataError("baseline requires a fully labeled corpus");
        }
        ++counts[class_index(*doc.sentences[s].gold_class)];
      }
    }
    int majority = 0;
    for (int i = 1; i < kNumClasses; ++i) {
      if (counts[i] > counts[majority]) majority = i;
    }
    const ClassLabel predicted = class_from_index(majority);

    std::vector<std::optional<ClassLabel>> predictions;
    std::vector<ClassLabel> gold;
    for (size_t d = 0; d < corpus.documents.size(); ++d) {
      const Document& doc = corpus.documents[d];
      for (size_t s = 0; s < doc.sentences.size(); ++s) {
        if (!test.mask[d][s]) continue;
        if (!doc.sentences[s].gold_class) {
          throw DataError("baseline requires a fully labeled corpus");
        }
        predictions.emplace_back(predicted);
        gold.push_back(*doc.sentences[s].gold_class);
      }
    }

    FoldResult result;
    result.fold = plan.fold_index;
    result.num_models = 1;
    result.selected_model = 0;
    result.selection_accuracy = 0.0;
    result.test = compute_metrics(predictions, gold);
    report.folds.push_back(result);
  }
  fill_averages(report);
  return report;
}

CollocationStats collocation_stats(const CorpusSlice& slice,
                                   const CollocationInventory& inv) {
  if (inv.mode != InventoryMode::kPerClass) {
    throw ConfigError("occurrence counts need a per-class inventory");
  }
  CollocationStats stats;
  for (int i = 0; i < kNumClasses; ++i) {
    stats.features[i].label = class_from_index(i);
    for (PatternId p : inv.patterns) {
      if (!inv.per_class.at(p).by_class[i].empty()) {
        stats.features[i].exists = true;
        break;
      }
    }
  }
  const Corpus& corpus = *slice.corpus;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    const Document& doc = corpus.documents[d];
    for (size_t s = 0; s < doc.sentences.size(); ++s) {
      if (!slice.mask[d][s]) continue;
      const Sentence& sentence = doc.sentences[s];
      if (!sentence.gold_class) {
        throw DataError("occurrence counts require a labeled corpus");
      }
      ++stats.num_sentences;
      const int gold = class_index(*sentence.gold_class);
      const MatchesByPattern matches =
          extract_matches(sentence, inv.patterns);
      for (int i = 0; i < kNumClasses; ++i) {
        bool fired = false;
        for (PatternId p : inv.patterns) {
          const auto& admitted = inv.per_class.at(p).by_class[i];
          for (const PatternMatch& m : matches.at(p)) {
            if (admitted.count(m.lemma)) {
              fired = true;
              break;
            }
          }
          if (fired) break;
        }
        if (fired) {
          ++stats.features[i].positives;
          if (gold != i) ++stats.features[i].false_positives;
        }
      }
    }
  }
  int existing = 0;
  int64_t pos = 0, fps = 0;
  for (const ClassFeatureStats& f : stats.features) {
    if (!f.exists) continue;
    ++existing;
    pos += f.positives;
    fps += f.false_positives;
  }
  if (existing > 0) {
    stats.mean_positives = static_cast<double>(pos) / existing;
    stats.mean_false_positives = static_cast<double>(fps) / existing;
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Serialization

std::string report_to_json(const CVReport& report) {
  ordered_json j;
  j["format"] = "evcat-report";
  j["version"] = 1;
  j["config"] = ordered_json::parse(config_to_json(report.config));
  j["corpus_fingerprint"] = fingerprint_hex(report.corpus_fingerprint);
  j["seed"] = report.seed;
  j["folds"] = ordered_json::array();
  for (const FoldResult& f : report.folds) {
    ordered_json jf;
    jf["fold"] = f.fold;
    jf["num_models"] = f.num_models;
    jf["selected_model"] = f.selected_model;
    jf["selection_accuracy"] = f.selection_accuracy;
    jf["g2"] = f.g2;
    jf["dof"] = f.dof;
    jf["test"] = {{"total", f.test.total},
                  {"attempted", f.test.attempted},
                  {"correct", f.test.correct},
                  {"accuracy", f.test.accuracy},
                  {"precision", f.test.precision},
                  {"recall", f.test.recall}};
    j["folds"].push_back(jf);
  }
  j["averages"] = {{"accuracy", report.avg_accuracy},
                   {"precision", report.avg_precision},
                   {"recall", report.avg_recall}};
  return j.dump(2) + "\n";
}

CVReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "evcat-report") {
      throw DataError("not a report file");
    }
    if (j.at("version").get<int>() != 1) {
      throw DataError("unsupported report version");
    }
    CVReport report;
    report.config = config_from_json(j.at("config").dump());
    report.corpus_fingerprint = std::strtoull(
        j.at("corpus_fingerprint").get<std::string>().c_str(), nullptr, 16);
    report.seed = j.at("seed").get<uint64_t>();
    for (const auto& jf : j.at("folds")) {
      FoldResult f;
      f.fold = jf.at("fold").get<int>();
      f.num_models = jf.at("num_models").get<int>();
      f.selected_model = jf.at("selected_model").get<int>();
      f.selection_accuracy = jf.at("selection_accuracy").get<double>();
      f.g2 = jf.at("g2").get<double>();
      f.dof = jf.at("dof").get<double>();
      const auto& jt = jf.at("test");
      f.test.total = jt.at("total").get<int64_t>();
      f.test.attempted = jt.at("attempted").get<int64_t>();
      f.test.correct = jt.at("correct").get<int64_t>();
      f.test.accuracy = jt.at("accuracy").get<double>();
      f.test.precision = jt.at("precision").get<double>();
      f.test.recall = jt.at("recall").get<double>();
      report.folds.push_back(f);
    }
    const auto& ja = j.at("averages");
    report.avg_accuracy = ja.at("accuracy").get<double>();
    report.avg_precision = ja.at("precision").get<double>();
    report.avg_recall = ja.at("recall").get<double>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad report JSON: ") + e.what());
  }
}

void write_report_file(const CVReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << report_to_json(report);
  if (!out) throw DataError("write failed: " + path);
}

CVReport read_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

std::string render_report_grid(std::span<const CVReport> reports) {
  static constexpr Organization kRows[] = {
      Organization::kPC1, Organization::kPC2, Organization::kOR1,
      Organization::kOR2};
  static constexpr PatternFamily kCols[] = {PatternFamily::kCooccurrence,
                                            PatternFamily::kWithin5,
                                            PatternFamily::kSyntactic};
  auto cell = [&reports](Organization org,
                         PatternFamily family) -> std::string {
    for (const CVReport& r : reports) {
      if (r.config.organization == org && r.config.family == family) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f / %.4f / %.4f", r.avg_accuracy,
                      r.avg_precision, r.avg_recall);
        return buf;
      }
    }
    return "-";
  };
  std::ostringstream out;
  out << "average accuracy / precision / recall over 10 folds\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-6s  %-26s  %-26s  %-26s\n", "", "cooc",
                "within-5", "syntactic");
  out << line;
  for (Organization org : kRows) {
    std::snprintf(line, sizeof(line), "%-6s  %-26s  %-26s  %-26s\n",
                  std::string(to_string(org)).c_str(),
                  cell(org, kCols[0]).c_str(), cell(org, kCols[1]).c_str(),
                  cell(org, kCols[2]).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace evcat
