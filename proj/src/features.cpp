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

#include "evcat/features.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evcat/errors.hpp"
#include "evcat/syntax.hpp"
#include "evcat/tagset.hpp"
#include "evcat/util.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string lowercased(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

ClassLabel label_or_other(const std::optional<ClassLabel>& label) {
  return label.value_or(ClassLabel::kOtherEvent);
}

std::vector<std::string> sorted_lemmas(const OverRangeSet& set) {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (const auto& [lemma, g2] : set) out.push_back(lemma);
  return out;  // std::map iterates in sorted order
}

}  // namespace

std::string_view to_string(Organization org) {
  switch (org) {
    case Organization::kPC1: return "pc1";
    case Organization::kPC2: return "pc2";
    case Organization::kOR1: return "or1";
    case Organization::kOR2: return "or2";
  }
  return "?";
}

std::optional<Organization> parse_organization(std::string_view s) {
  if (s == "pc1") return Organization::kPC1;
  if (s == "pc2") return Organization::kPC2;
  if (s == "or1") return Organization::kOR1;
  if (s == "or2") return Organization::kOR2;
  return std::nullopt;
}

MatchesByPattern extract_matches(const Sentence& s,
                                 std::span<const PatternId> patterns) {
  MatchesByPattern out;
  for (PatternId p : patterns) out[p] = extract_pattern(s, p);
  return out;
}

namespace {

void check_mode(const CollocationInventory& inv, Organization org) {
  const bool per_class =
      org == Organization::kPC1 || org == Organization::kPC2;
  if (per_class && inv.mode != InventoryMode::kPerClass) {
    throw ConfigError(std::string("organization ") +
                      std::string(to_string(org)) +
                      " requires a per-class inventory");
  }
  if (!per_class && inv.mode != InventoryMode::kOverRange) {
    throw ConfigError(std::string("organization ") +
                      std::string(to_string(org)) +
                      " requires an over-range inventory");
  }
}

}  // namespace

std::vector<FeatureVariable> organization_variables(
    const CollocationInventory& inv, Organization org) {
  check_mode(inv, org);
  std::vector<FeatureVariable> vars;
  switch (org) {
    case Organization::kPC1: {
      for (ClassLabel label : all_class_labels()) {
        vars.push_back(FeatureVariable{
            "pc1:" + std::string(to_string(label)), {"absent", "present"}});
      }
      break;
    }
    case Organization::kPC2: {
      for (PatternId p : inv.patterns) {
        FeatureVariable v;
        v.name = "pc2:" + std::string(to_string(p));
        v.values.push_back("absent");
        for (ClassLabel label : all_class_labels()) {
          v.values.push_back(std::string(to_string(label)));
        }
        vars.push_back(std::move(v));
      }
      break;
    }
    case Organization::kOR1: {
      for (PatternId p : inv.patterns) {
        FeatureVariable v;
        v.name = "or1:" + std::string(to_string(p));
        v.values.push_back("absent");
        for (const std::string& lemma : sorted_lemmas(inv.over_range.at(p))) {
          v.values.push_back(lemma);
        }
        vars.push_back(std::move(v));
      }
      break;
    }
    case Organization::kOR2: {
      for (PatternId p : inv.patterns) {
        for (const std::string& lemma : sorted_lemmas(inv.over_range.at(p))) {
          vars.push_back(FeatureVariable{
              "or2:" + std::string(to_string(p)) + ":" + lemma,
              {"absent", "present"}});
        }
      }
      break;
    }
  }
  return vars;
}

std::vector<int> organization_values(const CollocationInventory& inv,
                                     Organization org,
                                     const MatchesByPattern& matches) {
  check_mode(inv, org);
  std::vector<int> values;
  switch (org) {
    case Organization::kPC1: {
      for (int i = 0; i < kNumClasses; ++i) {
        int fired = 0;
        for (PatternId p : inv.patterns) {
          const auto& admitted = inv.per_class.at(p).by_class[i];
          for (const PatternMatch& m : matches.at(p)) {
            if (admitted.count(m.lemma)) {
              fired = 1;
              break;
            }
          }
          if (fired) break;
        }
        values.push_back(fired);
      }
      break;
    }
    case Organization::kPC2: {
      for (PatternId p : inv.patterns) {
        // Strongest admitting evidence wins; ties break toward the earliest
        // token, then the canonical class order.
        int best_class = -1;
        double best_prob = -1.0;
        int best_token = 0;
        const PerClassSets& sets = inv.per_class.at(p);
        for (const PatternMatch& m : matches.at(p)) {
          for (int i = 0; i < kNumClasses; ++i) {
            auto it = sets.by_class[i].find(m.lemma);
            if (it == sets.by_class[i].end()) continue;
            const double prob = it->second;
            const bool better =
                prob > best_prob ||
                (prob == best_prob && (m.token_index < best_token ||
                                       (m.token_index == best_token &&
                                        i < best_class)));
            if (best_class < 0 || better) {
              best_class = i;
              best_prob = prob;
              best_token = m.token_index;
            }
          }
        }
        values.push_back(best_class < 0 ? 0 : 1 + best_class);
      }
      break;
    }
    case Organization::kOR1: {
      for (PatternId p : inv.patterns) {
        const auto lemmas = sorted_lemmas(inv.over_range.at(p));
        // Earliest selected word in the sentence wins.
        int best_rank = -1;
        int best_token = 0;
        for (const PatternMatch& m : matches.at(p)) {
          auto it = std::lower_bound(lemmas.begin(), lemmas.end(), m.lemma);
          if (it == lemmas.end() || *it != m.lemma) continue;
          const int rank = static_cast<int>(it - lemmas.begin());
          if (best_rank < 0 || m.token_index < best_token) {
            best_rank = rank;
            best_token = m.token_index;
          }
        }
        values.push_back(best_rank < 0 ? 0 : 1 + best_rank);
      }
      break;
    }
    case Organization::kOR2: {
      for (PatternId p : inv.patterns) {
        const auto& fired = matches.at(p);
        for (const std::string& lemma : sorted_lemmas(inv.over_range.at(p))) {
          const bool present =
              std::any_of(fired.begin(), fired.end(),
                          [&](const PatternMatch& m) { return m.lemma == lemma; });
          values.push_back(present ? 1 : 0);
        }
      }
      break;
    }
  }
  return values;
}

int quote_level(const Sentence& s, const FeatureConfig& config) {
  internal_check(!s.tokens.empty(), "quote_level: empty sentence");
  int quoted = 0;
  for (const Token& t : s.tokens) {
    if (t.in_quote) ++quoted;
  }
  const double ratio =
      static_cast<double>(quoted) / static_cast<double>(s.tokens.size());
  if (ratio > config.quote_high) return 2;
  if (ratio < config.quote_low) return 0;
  return 1;  // both boundaries fall in the mid level
}

bool has_according_to(const Sentence& s) {
  for (size_t i = 0; i + 1 < s.tokens.size(); ++i) {
    if (lowercased(s.tokens[i].surface) == "according" &&
        lowercased(s.tokens[i + 1].surface) == "to") {
      return true;
    }
  }
  return false;
}

int f2_value(const Document& doc, int pos,
             std::span<const std::optional<ClassLabel>> earlier,
             double threshold) {
  internal_check(pos >= 0 && pos < static_cast<int>(doc.sentences.size()),
                 "f2_value: position out of range");
  internal_check(static_cast<int>(earlier.size()) >= pos,
                 "f2_value: labels must cover all earlier sentences");
  int para_begin = 0;
  for (int i = pos; i >= 0; --i) {
    if (doc.sentences[i].paragraph_start) {
      para_begin = i;
      break;
    }
  }
  const int count = pos - para_begin;
  if (count <= 0) return 0;
  int hits = 0;
  for (int i = para_begin; i < pos; ++i) {
    if (is_ps_or_speech(label_or_other(earlier[i]))) ++hits;
  }
  const double fraction = static_cast<double>(hits) / count;
  return fraction > threshold ? 1 : 0;
}

int tense_value(const Sentence& s) {
  const auto mv = find_main_verb(s);
  if (!mv) return 3;
  const TokenSpan clause = s.clause();
  // A modal anywhere in the verb group marks future/modal tense.
  for (int i = clause.begin; i <= *mv; ++i) {
    if (is_modal_tag(s.tokens[i].pos)) return 2;
    if (is_verb_tag(s.tokens[i].pos)) break;  // group started without a modal
  }
  const std::string& tag = s.tokens[*mv].pos;
  if (tag == "VBD" || tag == "VBN") return 0;
  if (tag == "VBZ" || tag == "VBP" || tag == "VBG") return 1;
  return 3;
}

const std::vector<FeatureVariable>& noncolloc_variables() {
  static const std::vector<FeatureVariable> vars = {
      {"paragraph-start", {"no", "yes"}},
      {"prior-ps-speech", {"no", "yes"}},
      {"quote-ratio", {"low", "mid", "high"}},
      {"according-to", {"no", "yes"}},
  };
  return vars;
}

std::vector<std::array<int, 4>> noncolloc_features(
    const Document& doc, std::span<const std::optional<ClassLabel>> labels,
    const FeatureConfig& config) {
  std::vector<std::array<int, 4>> out;
  out.reserve(doc.sentences.size());
  for (int i = 0; i < static_cast<int>(doc.sentences.size()); ++i) {
    const Sentence& s = doc.sentences[i];
    out.push_back({s.paragraph_start ? 1 : 0,
                   f2_value(doc, i, labels, config.f2_threshold),
                   quote_level(s, config), has_according_to(s) ? 1 : 0});
  }
  return out;
}

RowAssembler::RowAssembler(const CollocationInventory& inv, Organization org,
                           const FeatureConfig& config)
    : inv_(&inv), org_(org), config_(config) {
  variables_ = noncolloc_variables();
  for (FeatureVariable& v : organization_variables(inv, org)) {
    variables_.push_back(std::move(v));
  }
  if (config_.prev_class) {
    FeatureVariable v;
    v.name = "prev-class";
    v.values.push_back("none");
    for (ClassLabel label : all_class_labels()) {
      v.values.push_back(std::string(to_string(label)));
    }
    variables_.push_back(std::move(v));
  }
  if (config_.tense) {
    variables_.push_back(
        FeatureVariable{"tense", {"past", "present", "future-modal", "other"}});
  }
}

std::vector<int> RowAssembler::assemble(
    const Document& doc, int pos,
    std::span<const std::optional<ClassLabel>> earlier) const {
  const Sentence& s = doc.sentences[pos];
  std::vector<int> row;
  row.reserve(variables_.size());
  row.push_back(s.paragraph_start ? 1 : 0);
  row.push_back(f2_value(doc, pos, earlier, config_.f2_threshold));
  row.push_back(quote_level(s, config_));
  row.push_back(has_according_to(s) ? 1 : 0);
  const MatchesByPattern matches = extract_matches(s, inv_->patterns);
  for (int v : organization_values(*inv_, org_, matches)) row.push_back(v);
  if (config_.prev_class) {
    if (pos == 0) {
      row.push_back(0);
    } else {
      row.push_back(1 + class_index(label_or_other(earlier[pos - 1])));
    }
  }
  if (config_.tense) row.push_back(tense_value(s));
  return row;
}

FeatureTable build_feature_table(const CorpusSlice& slice,
                                 const CollocationInventory& inv,
                                 Organization org,
                                 const FeatureConfig& config) {
  if (inv.train_fingerprint != slice.fingerprint()) {
    throw DataError(
        "inventory/corpus fold mismatch: the feature table must be built on "
        "the same training fold the inventory was selected from");
  }
  RowAssembler assembler(inv, org, config);
  FeatureTable table;
  table.variables = assembler.variables();
  FeatureVariable class_var;
  class_var.name = "S";
  for (ClassLabel label : all_class_labels()) {
    class_var.values.push_back(std::string(to_string(label)));
  }
  table.variables.push_back(std::move(class_var));
  table.corpus_fingerprint = inv.train_fingerprint;
  table.inventory_fingerprint = inv.fingerprint();

  for (size_t d = 0; d < slice.corpus->documents.size(); ++d) {
    const Document& doc = slice.corpus->documents[d];
    std::vector<std::optional<ClassLabel>> labels;
    labels.reserve(doc.sentences.size());
    for (const Sentence& s : doc.sentences) {
      if (!s.gold_class) {
        throw DataError("feature table requires labeled sentences (document '" +
                        doc.doc_id + "')");
      }
      labels.push_back(s.gold_class);
    }
    for (int i = 0; i < static_cast<int>(doc.sentences.size()); ++i) {
      if (!slice.mask[d][i]) continue;
      std::vector<int> row = assembler.assemble(doc, i, labels);
      row.push_back(class_index(*doc.sentences[i].gold_class));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

FeatureTable build_feature_table(const Corpus& corpus,
                                 const CollocationInventory& inv,
                                 Organization org,
                                 const FeatureConfig& config) {
  return build_feature_table(CorpusSlice::full(corpus), inv, org, config);
}

uint64_t table_fingerprint(const FeatureTable& table) {
  return fnv1a64_mix(table.inventory_fingerprint,
                     fnv1a64_mix(table.corpus_fingerprint));
}

std::string feature_table_to_string(const FeatureTable& table) {
  ordered_json header;
  header["format"] = "evcat-features";
  header["version"] = 1;
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(table.corpus_fingerprint));
  header["corpus_fingerprint"] = buf;
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(table.inventory_fingerprint));
  header["inventory_fingerprint"] = buf;
  ordered_json vars = ordered_json::array();
  for (const FeatureVariable& v : table.variables) {
    vars.push_back(ordered_json{{"name", v.name}, {"values", v.values}});
  }
  header["variables"] = std::move(vars);

  std::ostringstream os;
  os << header.dump() << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) os << '\t';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

FeatureTable feature_table_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty feature table");
  ordered_json header;
  try {
    header = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed feature table header: ") + e.what());
  }
  if (header.value("format", "") != "evcat-features") {
    throw DataError("not an evcat feature table");
  }
  FeatureTable table;
  table.corpus_fingerprint = std::strtoull(
      header.at("corpus_fingerprint").get<std::string>().c_str(), nullptr, 16);
  table.inventory_fingerprint = std::strtoull(
      header.at("inventory_fingerprint").get<std::string>().c_str(), nullptr,
      16);
  for (const auto& vj : header.at("variables")) {
    FeatureVariable v;
    v.name = vj.at("name").get<std::string>();
    v.values = vj.at("values").get<std::vector<std::string>>();
    if (v.arity() < 2) throw DataError("feature variable arity must be >= 2");
    table.variables.push_back(std::move(v));
  }
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<int> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, '\t')) row.push_back(std::stoi(cell));
    if (row.size() != table.variables.size()) {
      throw DataError("line " + std::to_string(line_number) +
                      ": row width does not match variable count");
    }
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i] < 0 || row[i] >= table.variables[i].arity()) {
        throw DataError("line " + std::to_string(line_number) +
                        ": value out of range for variable " +
                        table.variables[i].name);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_feature_table_file(const FeatureTable& table,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write feature table file: " + path);
  out << feature_table_to_string(table);
}

FeatureTable read_feature_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open feature table file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return feature_table_from_string(ss.str());
}

}  // namespace evcat
