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

#ifndef EVCAT_FEATURES_HPP_
#define EVCAT_FEATURES_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evcat/collocations.hpp"
#include "evcat/corpus.hpp"

namespace evcat {

/// A categorical variable with its value-decoding table.
struct FeatureVariable {
  std::string name;
  std::vector<std::string> values;  // index -> meaning; size() is the arity

  int arity() const { return static_cast<int>(values.size()); }
  friend bool operator==(const FeatureVariable&,
                         const FeatureVariable&) = default;
};

/// Schemes for mapping collocation sets to categorical variables.
enum class Organization : int { kPC1 = 0, kPC2 = 1, kOR1 = 2, kOR2 = 3 };

std::string_view to_string(Organization org);
std::optional<Organization> parse_organization(std::string_view s);

struct FeatureConfig {
  bool prev_class = false;  // previous-sentence class variable
  bool tense = false;       // main-verb tense variable
  // Fraction of earlier in-paragraph ps/speech sentences that flips F2 on.
  double f2_threshold = 0.3;
  // Quote-ratio level boundaries; both boundaries belong to the mid level.
  double quote_high = 0.3;
  double quote_low = 0.1;
};

// ---------------------------------------------------------------------------
// Collocation organizations

using MatchesByPattern = std::map<PatternId, std::vector<PatternMatch>>;

MatchesByPattern extract_matches(const Sentence& s,
                                 std::span<const PatternId> patterns);

/// The variables an organization derives from an inventory:
///   pc1 -> one binary variable per class
///   pc2 -> one variable per pattern with c+1 values
///   or1 -> one variable per pattern with |W_j|+1 values
///   or2 -> one binary variable per (pattern, word)
std::vector<FeatureVariable> organization_variables(
    const CollocationInventory& inv, Organization org);

/// Per-sentence values for the organization variables, in the same order.
std::vector<int> organization_values(const CollocationInventory& inv,
                                     Organization org,
                                     const MatchesByPattern& matches);

// ---------------------------------------------------------------------------
// Non-collocational features

/// Quote-ratio level for F3: 0 = low (R < 0.1), 1 = mid (0.1 <= R <= 0.3),
/// 2 = high (R > 0.3).
int quote_level(const Sentence& s, const FeatureConfig& config = {});

/// Whether the lowercase token bigram "according to" occurs.
bool has_according_to(const Sentence& s);

/// F2 for the sentence at `pos`: 1 iff, among the earlier sentences of the
/// current paragraph, the fraction labeled private-state or speech exceeds
/// the threshold.  `earlier` holds labels for sentences [0, pos) in document
/// order; abstentions count as other-event.
int f2_value(const Document& doc, int pos,
             std::span<const std::optional<ClassLabel>> earlier,
             double threshold = 0.3);

/// Tense of the main verb: 0 past, 1 present, 2 future-modal, 3 other.
int tense_value(const Sentence& s);

const std::vector<FeatureVariable>& noncolloc_variables();

/// The four non-collocational values per sentence of a document, given
/// labels for all sentences (label i is consumed only by sentences after i).
std::vector<std::array<int, 4>> noncolloc_features(
    const Document& doc,
    std::span<const std::optional<ClassLabel>> labels,
    const FeatureConfig& config = {});

// ---------------------------------------------------------------------------
// Row assembly and the feature table

/// Produces one categorical row per sentence: the four non-collocational
/// variables, the organization variables, then any optional variables.
/// The class variable S is appended separately by the table builder.
class RowAssembler {
 public:
  RowAssembler(const CollocationInventory& inv, Organization org,
               const FeatureConfig& config);

  /// Feature variables only (S excluded).
  const std::vector<FeatureVariable>& variables() const { return variables_; }

  /// Values for the sentence at `pos` of `doc`; `earlier` holds the labels
  /// of sentences [0, pos) in document order (gold at training time, system
  /// predictions at decode time; abstentions count as other-event).
  std::vector<int> assemble(const Document& doc, int pos,
                            std::span<const std::optional<ClassLabel>> earlier)
      const;

  const CollocationInventory& inventory() const { return *inv_; }
  Organization organization() const { return org_; }
  const FeatureConfig& config() const { return config_; }

 private:
  const CollocationInventory* inv_;
  Organization org_;
  FeatureConfig config_;
  std::vector<FeatureVariable> variables_;
};

/// Instances as categorical vectors; the class variable S is the last
/// variable.  Rows follow corpus sentence order.
struct FeatureTable {
  std::vector<FeatureVariable> variables;  // last entry is S
  std::vector<std::vector<int>> rows;
  uint64_t corpus_fingerprint = 0;
  uint64_t inventory_fingerprint = 0;

  int class_var() const { return static_cast<int>(variables.size()) - 1; }
  int num_features() const { return static_cast<int>(variables.size()) - 1; }
};

/// Builds the training table for a corpus whose fingerprint matches the
/// inventory's training fold (sequential features consume gold labels).
FeatureTable build_feature_table(const Corpus& corpus,
                                 const CollocationInventory& inv,
                                 Organization org,
                                 const FeatureConfig& config = {});

/// Slice variant: rows only for the slice's sentences, but the sequential
/// features still see the whole document's gold labels as context.
FeatureTable build_feature_table(const CorpusSlice& slice,
                                 const CollocationInventory& inv,
                                 Organization org,
                                 const FeatureConfig& config = {});

/// Identity of a training table: corpus and inventory fingerprints folded
/// together.  Classifiers carry it so predictions can be traced to the data
/// that produced the model.
uint64_t table_fingerprint(const FeatureTable& table);

std::string feature_table_to_string(const FeatureTable& table);
FeatureTable feature_table_from_string(const std::string& text);
void write_feature_table_file(const FeatureTable& table,
                              const std::string& path);
FeatureTable read_feature_table_file(const std::string& path);

}  // namespace evcat

#endif  // EVCAT_FEATURES_HPP_
