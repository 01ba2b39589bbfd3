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

#ifndef EVCAT_PATTERNS_HPP_
#define EVCAT_PATTERNS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evcat/corpus.hpp"
#include "evcat/syntax.hpp"
#include "evcat/tagset.hpp"

namespace evcat {

/// The ten collocational patterns: three co-occurrence, three within-5, and
/// four syntactic.
enum class PatternId : int {
  kCoocVerb = 0,
  kCoocNoun = 1,
  kCoocAdj = 2,
  kW5Verb = 3,
  kW5Noun = 4,
  kW5Adj = 5,
  kBaseMV = 6,
  kBaseAdj = 7,
  kComplexMV = 8,
  kComplexAdj = 9,
};

inline constexpr int kNumPatterns = 10;

enum class PatternFamily : int {
  kCooccurrence = 0,
  kWithin5 = 1,
  kSyntactic = 2,
};

std::string_view to_string(PatternId id);
std::optional<PatternId> parse_pattern_id(std::string_view s);
std::string_view to_string(PatternFamily family);
std::optional<PatternFamily> parse_pattern_family(std::string_view s);

PatternFamily family_of(PatternId id);
const std::vector<PatternId>& patterns_in_family(PatternFamily family);

/// A word firing in a pattern: the lemma plus the token that witnessed it.
struct PatternMatch {
  PatternId pattern;
  std::string lemma;
  int token_index = 0;

  friend bool operator==(const PatternMatch&, const PatternMatch&) = default;
};

/// Words of the POS class appearing anywhere in the sentence.  Duplicate
/// lemmas collapse to the first occurrence; results are in token order.
std::vector<PatternMatch> extract_cooccurrence(const Sentence& s, PosClass pc);

/// Words of the POS class within 5 tokens (either side) of the main verb,
/// excluding the main verb itself.  Empty when no main verb exists.
std::vector<PatternMatch> extract_within5(const Sentence& s, PosClass pc);

/// The four syntactic patterns anchored at the main-clause main verb.
std::vector<PatternMatch> extract_syntactic(
    const Sentence& s, PatternId pattern,
    const CopularSet& copular = default_copular_set());

/// Dispatcher over all ten patterns.
std::vector<PatternMatch> extract_pattern(
    const Sentence& s, PatternId pattern,
    const CopularSet& copular = default_copular_set());

}  // namespace evcat

#endif  // EVCAT_PATTERNS_HPP_
