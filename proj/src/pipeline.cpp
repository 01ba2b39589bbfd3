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

#include "evcat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evcat/errors.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

InventoryMode required_mode(Organization org) {
  return (org == Organization::kPC1 || org == Organization::kPC2)
             ? InventoryMode::kPerClass
             : InventoryMode::kOverRange;
}

void validate_config(const PipelineConfig& config) {
  if (config.mode != required_mode(config.organization)) {
    throw ConfigError(std::string("organization ") +
                      std::string(to_string(config.organization)) +
                      " requires " +
                      std::string(to_string(required_mode(config.organization))) +
                      " selection");
  }
  if (!(config.k > 0.0 && config.k < 1.0)) {
    throw ConfigError("per-class k must be in (0,1)");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("over-range alpha must be in (0,1)");
  }
  if (config.min_count < 1) {
    throw ConfigError("over-range min_count must be >= 1");
  }
  if (!(config.stop_alpha > 0.0 && config.stop_alpha < 1.0)) {
    throw ConfigError("stop_alpha must be in (0,1)");
  }
  if (!(config.features.f2_threshold >= 0.0 &&
        config.features.f2_threshold < 1.0)) {
    throw ConfigError("f2_threshold must be in [0,1)");
  }
  if (!(config.features.quote_low >= 0.0 &&
        config.features.quote_low <= config.features.quote_high &&
        config.features.quote_high < 1.0)) {
    throw ConfigError("quote level boundaries must satisfy 0 <= low <= high < 1");
  }
}

std::string config_to_json(const PipelineConfig& config) {
  ordered_json j;
  j["family"] = std::string(to_string(config.family));
  j["mode"] = std::string(to_string(config.mode));
  j["k"] = config.k;
  j["alpha"] = config.alpha;
  j["min_count"] = config.min_count;
  j["organization"] = std::string(to_string(config.organization));
  j["prev_class"] = config.features.prev_class;
  j["tense"] = config.features.tense;
  j["f2_threshold"] = config.features.f2_threshold;
  j["quote_high"] = config.features.quote_high;
  j["quote_low"] = config.features.quote_low;
  j["stop_alpha"] = config.stop_alpha;
  j["max_steps"] = config.max_steps;
  j["fold_unit"] = std::string(to_string(config.fold_unit));
  j["refit_check"] = config.refit_check == RefitCheck::kAuto ? "auto"
                     : config.refit_check == RefitCheck::kEveryStep
                         ? "every-step"
                         : "final-only";
  return j.dump(2) + "\n";
}

PipelineConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  static const std::set<std::string> known = {
      "family",     "mode",        "k",          "alpha",
      "min_count",  "organization", "prev_class", "tense",
      "f2_threshold", "quote_high", "quote_low",  "stop_alpha",
      "max_steps",  "fold_unit",   "refit_check"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key: " + key);
  }
  PipelineConfig config;
  bool mode_given = false;
  try {
    if (j.contains("family")) {
      const auto f = parse_pattern_family(j.at("family").get<std::string>());
      if (!f) throw ConfigError("unknown pattern family");
      config.family = *f;
    }
    if (j.contains("mode")) {
      const auto m = parse_inventory_mode(j.at("mode").get<std::string>());
      if (!m) throw ConfigError("unknown selection mode");
      config.mode = *m;
      mode_given = true;
    }
    if (j.contains("k")) config.k = j.at("k").get<double>();
    if (j.contains("alpha")) config.alpha = j.at("alpha").get<double>();
    if (j.contains("min_count")) {
      config.min_count = j.at("min_count").get<int64_t>();
    }
    if (j.contains("organization")) {
      const auto o =
          parse_organization(j.at("organization").get<std::string>());
      if (!o) throw ConfigError("unknown organization");
      config.organization = *o;
    }
    if (j.contains("prev_class")) {
      config.features.prev_class = j.at("prev_class").get<bool>();
    }
    if (j.contains("tense")) config.features.tense = j.at("tense").get<bool>();
    if (j.contains("f2_threshold")) {
      config.features.f2_threshold = j.at("f2_threshold").get<double>();
    }
    if (j.contains("quote_high")) {
      config.features.quote_high = j.at("quote_high").get<double>();
    }
    if (j.contains("quote_low")) {
      config.features.quote_low = j.at("quote_low").get<double>();
    }
    if (j.contains("stop_alpha")) {
      config.stop_alpha = j.at("stop_alpha").get<double>();
    }
    if (j.contains("max_steps")) {
      config.max_steps = j.at("max_steps").get<int>();
    }
    if (j.contains("fold_unit")) {
      const std::string u = j.at("fold_unit").get<std::string>();
      if (u == "document") {
        config.fold_unit = FoldUnit::kDocument;
      } else if (u == "sentence") {
        config.fold_unit = FoldUnit::kSentence;
      } else {
        throw ConfigError("unknown fold_unit: " + u);
      }
    }
    if (j.contains("refit_check")) {
      const std::string r = j.at("refit_check").get<std::string>();
      if (r == "auto") {
        config.refit_check = RefitCheck::kAuto;
      } else if (r == "every-step") {
        config.refit_check = RefitCheck::kEveryStep;
      } else if (r == "final-only") {
        config.refit_check = RefitCheck::kFinalOnly;
      } else {
        throw ConfigError("unknown refit_check: " + r);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  // The selection mode follows from the organization unless given.
  if (!mode_given) config.mode = required_mode(config.organization);
  validate_config(config);
  return config;
}

CollocationInventory build_inventory(const CorpusSlice& train,
                                     const PipelineConfig& config) {
  validate_config(config);
  if (config.mode == InventoryMode::kPerClass) {
    return build_per_class_inventory(train, config.family, config.k);
  }
  return build_over_range_inventory(train, config.family, config.alpha,
                                    config.min_count);
}

std::vector<std::pair<int, int>> pinned_feature_edges(int num_vars) {
  internal_check(num_vars >= 2, "pinning needs a class variable plus features");
  std::vector<std::pair<int, int>> pinned;
  pinned.reserve(num_vars - 1);
  for (int f = 0; f + 1 < num_vars; ++f) pinned.emplace_back(f, num_vars - 1);
  return pinned;
}

// ---------------------------------------------------------------------------
// Sequential decoding

PreparedCorpus prepare_corpus(const CorpusSlice& targets,
                              const RowAssembler& assembler) {
  const Corpus& corpus = *targets.corpus;
  PreparedCorpus prepared;
  prepared.corpus = &corpus;
  prepared.features = assembler.config();
  const std::vector<FeatureVariable>& vars = assembler.variables();
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == "prior-ps-speech") {
      prepared.f2_slot = static_cast<int>(i);
    }
    if (vars[i].name == "prev-class") prepared.prev_slot = static_cast<int>(i);
  }
  internal_check(prepared.f2_slot >= 0, "row has no in-paragraph variable");

  prepared.docs.resize(corpus.documents.size());
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    const Document& doc = corpus.documents[d];
    std::vector<std::optional<ClassLabel>> gold;
    gold.reserve(doc.sentences.size());
    for (const Sentence& s : doc.sentences) {
      if (!s.gold_class) {
        throw DataError("decoding requires a fully labeled corpus (document '" +
                        doc.doc_id + "')");
      }
      gold.push_back(s.gold_class);
    }
    auto& out = prepared.docs[d];
    out.resize(doc.sentences.size());
    for (size_t i = 0; i < doc.sentences.size(); ++i) {
      out[i].target = targets.mask[d][i] != 0;
      out[i].gold = *doc.sentences[i].gold_class;
      if (out[i].target) {
        // Dynamic slots are recomputed during the decode; gold context here
        // only fills them provisionally.
        out[i].row = assembler.assemble(doc, static_cast<int>(i), gold);
        ++prepared.num_targets;
      }
    }
  }
  return prepared;
}

DecodeOutcome decode_sequential(
    const PreparedCorpus& prepared,
    const std::function<std::optional<ClassLabel>(
        int target_ordinal, std::span<const int> row)>& classify_row) {
  DecodeOutcome outcome;
  outcome.predictions.reserve(prepared.num_targets);
  outcome.gold.reserve(prepared.num_targets);
  int ordinal = 0;
  std::vector<int> row;
  for (size_t d = 0; d < prepared.docs.size(); ++d) {
    const Document& doc = prepared.corpus->documents[d];
    const auto& sentences = prepared.docs[d];
    std::vector<std::optional<ClassLabel>> context(sentences.size());
    for (size_t i = 0; i < sentences.size(); ++i) {
      const PreparedSentence& ps = sentences[i];
      if (!ps.target) {
        context[i] = ps.gold;
        continue;
      }
      row = ps.row;
      row[prepared.f2_slot] = f2_value(doc, static_cast<int>(i), context,
                                       prepared.features.f2_threshold);
      if (prepared.prev_slot >= 0) {
        row[prepared.prev_slot] =
            i == 0 ? 0
                   : 1 + class_index(
                         context[i - 1].value_or(ClassLabel::kOtherEvent));
      }
      const std::optional<ClassLabel> pred = classify_row(ordinal, row);
      outcome.predictions.push_back(pred);
      outcome.gold.push_back(ps.gold);
      context[i] = pred;  // abstentions stay unset; F2 reads them as other
      ++ordinal;
    }
  }
  return outcome;
}

DecodeOutcome decode_with_classifier(const PreparedCorpus& prepared,
                                     const Classifier& classifier) {
  return decode_sequential(
      prepared, [&classifier](int, std::span<const int> row) {
        return classifier.classify(row);
      });
}

// ---------------------------------------------------------------------------
// Trace evaluation

namespace {

/// Per-target scoring state under the current model, for the row the target
/// was last decoded with.  logsum omits factors whose marginal count is
/// zero; the zero counters say how many were omitted.
struct RowState {
  bool valid = false;
  std::vector<int> row;
  std::array<double, kNumClasses> logsum{};
  std::array<int, kNumClasses> zero_cliques{};
  std::array<int, kNumClasses> zero_seps{};
};

class TraceEvaluator {
 public:
  TraceEvaluator(const SearchTrace& trace, MarginalCache& marginals,
                 const std::array<int64_t, kNumClasses>& priors,
                 const PreparedCorpus& prepared)
      : trace_(trace),
        marginals_(marginals),
        priors_(priors),
        prepared_(prepared),
        class_var_(trace.num_vars - 1),
        total_(static_cast<double>(marginals.data().total)),
        graph_(UndirectedGraph::complete(trace.num_vars)) {
    internal_check(marginals.data().num_vars() == trace.num_vars,
                   "trace and table dimension mismatch");
    jt_ = junction_tree(graph_);
    states_.resize(prepared.num_targets);
  }

  std::vector<Metrics> run() {
    std::vector<Metrics> results;
    results.reserve(trace_.num_models());
    for (int k = 0; k < trace_.num_models(); ++k) {
      if (k > 0) advance(trace_.steps[k - 1]);
      DecodeOutcome outcome = decode_sequential(
          prepared_, [this](int ordinal, std::span<const int> row) {
            return score_target(ordinal, row);
          });
      results.push_back(compute_metrics(outcome.predictions, outcome.gold));
    }
    return results;
  }

 private:
  int64_t marginal_count(const std::vector<int>& vars,
                         const std::vector<int>& row, int cls) {
    key_.resize(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
      key_[i] = vars[i] == class_var_ ? cls : row[vars[i]];
    }
    const auto& table = marginals_.get(vars);
    auto it = table.find(key_);
    return it == table.end() ? 0 : it->second;
  }

  void recompute(RowState& st) {
    for (int s = 0; s < kNumClasses; ++s) {
      st.logsum[s] = 0.0;
      st.zero_cliques[s] = 0;
      st.zero_seps[s] = 0;
      for (const auto& clique : jt_.cliques) {
        const int64_t n = marginal_count(clique, st.row, s);
        if (n == 0) {
          ++st.zero_cliques[s];
        } else {
          st.logsum[s] += std::log(static_cast<double>(n) / total_);
        }
      }
      for (const auto& sep : jt_.separators) {
        const int64_t n = marginal_count(sep, st.row, s);
        if (n == 0) {
          ++st.zero_seps[s];
        } else {
          st.logsum[s] -= std::log(static_cast<double>(n) / total_);
        }
      }
    }
  }

  /// Applies one edge removal: diff the junction trees and patch every
  /// valid state by the changed factors only.
  void advance(const SearchStep& step) {
    graph_.remove_edge(step.a, step.b);
    JunctionTree next = junction_tree(graph_);
    std::vector<std::vector<int>> gone_cliques, new_cliques;
    std::set_difference(jt_.cliques.begin(), jt_.cliques.end(),
                        next.cliques.begin(), next.cliques.end(),
                        std::back_inserter(gone_cliques));
    std::set_difference(next.cliques.begin(), next.cliques.end(),
                        jt_.cliques.begin(), jt_.cliques.end(),
                        std::back_inserter(new_cliques));
    std::vector<std::vector<int>> gone_seps, new_seps;
    std::set_difference(jt_.separators.begin(), jt_.separators.end(),
                        next.separators.begin(), next.separators.end(),
                        std::back_inserter(gone_seps));
    std::set_difference(next.separators.begin(), next.separators.end(),
                        jt_.separators.begin(), jt_.separators.end(),
                        std::back_inserter(new_seps));
    jt_ = std::move(next);
    for (RowState& st : states_) {
      if (!st.valid) continue;
      for (int s = 0; s < kNumClasses; ++s) {
        for (const auto& clique : gone_cliques) {
          const int64_t n = marginal_count(clique, st.row, s);
          if (n == 0) {
            --st.zero_cliques[s];
          } else {
            st.logsum[s] -= std::log(static_cast<double>(n) / total_);
          }
        }
        for (const auto& clique : new_cliques) {
          const int64_t n = marginal_count(clique, st.row, s);
          if (n == 0) {
            ++st.zero_cliques[s];
          } else {
            st.logsum[s] += std::log(static_cast<double>(n) / total_);
          }
        }
        for (const auto& sep : gone_seps) {
          const int64_t n = marginal_count(sep, st.row, s);
          if (n == 0) {
            --st.zero_seps[s];
          } else {
            st.logsum[s] += std::log(static_cast<double>(n) / total_);
          }
        }
        for (const auto& sep : new_seps) {
          const int64_t n = marginal_count(sep, st.row, s);
          if (n == 0) {
            ++st.zero_seps[s];
          } else {
            st.logsum[s] -= std::log(static_cast<double>(n) / total_);
          }
        }
      }
    }
  }

  std::optional<ClassLabel> score_target(int ordinal,
                                         std::span<const int> row) {
    RowState& st = states_[ordinal];
    if (!st.valid || !std::equal(row.begin(), row.end(), st.row.begin(),
                                 st.row.end())) {
      st.row.assign(row.begin(), row.end());
      recompute(st);
      st.valid = true;
    }
    int pick = -1;
    for (int s = 0; s < kNumClasses; ++s) {
      if (st.zero_cliques[s] > 0) continue;
      internal_check(st.zero_seps[s] == 0,
                     "separator zero without a zero clique");
      if (pick < 0 || st.logsum[s] > st.logsum[pick] ||
          (st.logsum[s] == st.logsum[pick] && priors_[s] > priors_[pick])) {
        pick = s;
      }
    }
    if (pick < 0) return std::nullopt;
    return class_from_index(pick);
  }

  const SearchTrace& trace_;
  MarginalCache& marginals_;
  const std::array<int64_t, kNumClasses>& priors_;
  const PreparedCorpus& prepared_;
  const int class_var_;
  const double total_;
  UndirectedGraph graph_;
  JunctionTree jt_;
  std::vector<RowState> states_;
  std::vector<int> key_;
};

}  // namespace

std::vector<Metrics> evaluate_trace_models(
    const SearchTrace& trace, MarginalCache& marginals,
    const std::array<int64_t, kNumClasses>& priors,
    const PreparedCorpus& prepared) {
  TraceEvaluator evaluator(trace, marginals, priors, prepared);
  return evaluator.run();
}

}  // namespace evcat
