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

#include "evcat/collocations.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "evcat/chi2.hpp"
#include "evcat/errors.hpp"
#include "evcat/util.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

struct PatternCounts {
  // lemma -> total fires, and fires per class.
  std::map<std::string, int64_t> total;
  std::map<std::string, std::array<int64_t, kNumClasses>> per_class;
  std::array<int64_t, kNumClasses> class_totals{};
  int64_t sentences = 0;
};

PatternCounts count_pattern(const CorpusSlice& train, PatternId pattern) {
  PatternCounts counts;
  for (size_t d = 0; d < train.corpus->documents.size(); ++d) {
    const Document& doc = train.corpus->documents[d];
    for (size_t i = 0; i < doc.sentences.size(); ++i) {
      if (!train.mask[d][i]) continue;
      const Sentence& s = doc.sentences[i];
      if (!s.gold_class) {
        throw DataError("collocation selection requires a fully labeled "
                        "training corpus (unlabeled sentence in document '" +
                        doc.doc_id + "')");
      }
      ++counts.sentences;
      const int cls = class_index(*s.gold_class);
      ++counts.class_totals[cls];
      for (const PatternMatch& m : extract_pattern(s, pattern)) {
        ++counts.total[m.lemma];
        auto& arr = counts.per_class[m.lemma];
        ++arr[cls];
      }
    }
  }
  if (counts.sentences == 0) throw DataError("empty training fold");
  return counts;
}

std::string fingerprint_to_hex(uint64_t fp) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(fp));
  return buf;
}

uint64_t fingerprint_from_hex(const std::string& s) {
  return std::strtoull(s.c_str(), nullptr, 16);
}

}  // namespace

std::string_view to_string(InventoryMode mode) {
  return mode == InventoryMode::kPerClass ? "per-class" : "over-range";
}

std::optional<InventoryMode> parse_inventory_mode(std::string_view s) {
  if (s == "per-class") return InventoryMode::kPerClass;
  if (s == "over-range") return InventoryMode::kOverRange;
  return std::nullopt;
}

PerClassSets select_per_class(const CorpusSlice& train, PatternId pattern,
                              double k) {
  if (!(k > 0.0 && k < 1.0)) throw ConfigError("per-class k must be in (0,1)");
  const PatternCounts counts = count_pattern(train, pattern);
  PerClassSets sets;
  for (const auto& [lemma, by_class] : counts.per_class) {
    const int64_t total = counts.total.at(lemma);
    for (int i = 0; i < kNumClasses; ++i) {
      const double p = static_cast<double>(by_class[i]) /
                       static_cast<double>(total);
      if (p > k) {  // strict, so p == k is not admitted
        sets.by_class[i][lemma] = p;
      }
    }
  }
  return sets;
}

PerClassSets select_per_class(const Corpus& train, PatternId pattern,
                              double k) {
  return select_per_class(CorpusSlice::full(train), pattern, k);
}

OverRangeSet select_over_range(const CorpusSlice& train, PatternId pattern,
                               double alpha, int64_t min_count) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("over-range alpha must be in (0,1)");
  }
  if (min_count < 1) throw ConfigError("over-range min_count must be >= 1");
  const PatternCounts counts = count_pattern(train, pattern);
  const double critical = chi2_critical(alpha, kNumClasses - 1);
  const double n = static_cast<double>(counts.sentences);

  OverRangeSet out;
  for (const auto& [lemma, by_class] : counts.per_class) {
    const int64_t present_total = counts.total.at(lemma);
    if (present_total < min_count) continue;
    // 2 x 6 table: (lemma present / absent) x class, tested against the
    // independence model with row x column expected counts.
    double g2 = 0.0;
    for (int i = 0; i < kNumClasses; ++i) {
      const int64_t present = by_class[i];
      const int64_t absent = counts.class_totals[i] - present;
      const double col = static_cast<double>(counts.class_totals[i]);
      if (present > 0) {
        const double expected = static_cast<double>(present_total) * col / n;
        g2 += 2.0 * static_cast<double>(present) *
              std::log(static_cast<double>(present) / expected);
      }
      if (absent > 0) {
        const double expected =
            static_cast<double>(counts.sentences - present_total) * col / n;
        g2 += 2.0 * static_cast<double>(absent) *
              std::log(static_cast<double>(absent) / expected);
      }
    }
    if (g2 > critical) out[lemma] = g2;
  }
  return out;
}

OverRangeSet select_over_range(const Corpus& train, PatternId pattern,
                               double alpha, int64_t min_count) {
  return select_over_range(CorpusSlice::full(train), pattern, alpha,
                           min_count);
}

uint64_t CollocationInventory::fingerprint() const {
  return fnv1a64(inventory_to_json(*this));
}

namespace {

CollocationInventory build_inventory(const CorpusSlice& train,
                                     PatternFamily family, InventoryMode mode,
                                     double k, double alpha,
                                     int64_t min_count) {
  CollocationInventory inv;
  inv.mode = mode;
  inv.patterns = patterns_in_family(family);
  inv.k = k;
  inv.alpha = alpha;
  inv.min_count = min_count;
  inv.train_fingerprint = train.fingerprint();
  for (PatternId p : inv.patterns) {
    if (mode == InventoryMode::kPerClass) {
      inv.per_class[p] = select_per_class(train, p, k);
    } else {
      inv.over_range[p] = select_over_range(train, p, alpha, min_count);
    }
  }
  return inv;
}

}  // namespace

CollocationInventory build_per_class_inventory(const CorpusSlice& train,
                                               PatternFamily family,
                                               double k) {
  return build_inventory(train, family, InventoryMode::kPerClass, k, 0.01, 1);
}

CollocationInventory build_per_class_inventory(const Corpus& train,
                                               PatternFamily family,
                                               double k) {
  return build_per_class_inventory(CorpusSlice::full(train), family, k);
}

CollocationInventory build_over_range_inventory(const CorpusSlice& train,
                                                PatternFamily family,
                                                double alpha,
                                                int64_t min_count) {
  return build_inventory(train, family, InventoryMode::kOverRange, 0.5, alpha,
                         min_count);
}

CollocationInventory build_over_range_inventory(const Corpus& train,
                                                PatternFamily family,
                                                double alpha,
                                                int64_t min_count) {
  return build_over_range_inventory(CorpusSlice::full(train), family, alpha,
                                    min_count);
}

std::string inventory_to_json(const CollocationInventory& inv) {
  ordered_json j;
  j["mode"] = std::string(to_string(inv.mode));
  ordered_json pats = ordered_json::array();
  for (PatternId p : inv.patterns) pats.push_back(std::string(to_string(p)));
  j["patterns"] = std::move(pats);
  if (inv.mode == InventoryMode::kPerClass) {
    j["k"] = inv.k;
  } else {
    j["alpha"] = inv.alpha;
    j["min_count"] = inv.min_count;
  }
  j["train_fingerprint"] = fingerprint_to_hex(inv.train_fingerprint);

  ordered_json sets = ordered_json::object();
  for (PatternId p : inv.patterns) {
    ordered_json pj = ordered_json::object();
    if (inv.mode == InventoryMode::kPerClass) {
      const PerClassSets& pcs = inv.per_class.at(p);
      for (int i = 0; i < kNumClasses; ++i) {
        ordered_json arr = ordered_json::array();
        for (const auto& [lemma, prob] : pcs.by_class[i]) {  // sorted lemmas
          arr.push_back(ordered_json{{"lemma", lemma}, {"prob", prob}});
        }
        pj[std::string(to_string(class_from_index(i)))] = std::move(arr);
      }
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& [lemma, g2] : inv.over_range.at(p)) {
        arr.push_back(ordered_json{{"lemma", lemma}, {"g2", g2}});
      }
      pj = std::move(arr);
    }
    sets[std::string(to_string(p))] = std::move(pj);
  }
  j["sets"] = std::move(sets);
  return j.dump(2) + "\n";
}

CollocationInventory inventory_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed inventory JSON: ") + e.what());
  }
  CollocationInventory inv;
  const auto mode = parse_inventory_mode(j.at("mode").get<std::string>());
  if (!mode) throw DataError("inventory: unknown mode");
  inv.mode = *mode;
  for (const auto& pj : j.at("patterns")) {
    const auto p = parse_pattern_id(pj.get<std::string>());
    if (!p) throw DataError("inventory: unknown pattern id");
    inv.patterns.push_back(*p);
  }
  if (inv.mode == InventoryMode::kPerClass) {
    inv.k = j.at("k").get<double>();
  } else {
    inv.alpha = j.at("alpha").get<double>();
    inv.min_count = j.at("min_count").get<int64_t>();
  }
  inv.train_fingerprint =
      fingerprint_from_hex(j.at("train_fingerprint").get<std::string>());
  const auto& sets = j.at("sets");
  for (PatternId p : inv.patterns) {
    const auto& pj = sets.at(std::string(to_string(p)));
    if (inv.mode == InventoryMode::kPerClass) {
      PerClassSets pcs;
      for (int i = 0; i < kNumClasses; ++i) {
        const auto& arr = pj.at(std::string(to_string(class_from_index(i))));
        for (const auto& e : arr) {
          pcs.by_class[i][e.at("lemma").get<std::string>()] =
              e.at("prob").get<double>();
        }
      }
      inv.per_class[p] = std::move(pcs);
    } else {
      OverRangeSet set;
      for (const auto& e : pj) {
        set[e.at("lemma").get<std::string>()] = e.at("g2").get<double>();
      }
      inv.over_range[p] = std::move(set);
    }
  }
  return inv;
}

void write_inventory_file(const CollocationInventory& inv,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write inventory file: " + path);
  out << inventory_to_json(inv);
}

CollocationInventory read_inventory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open inventory file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return inventory_from_json(ss.str());
}

}  // namespace evcat
