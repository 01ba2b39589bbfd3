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

#ifndef EVCAT_SYNTAX_HPP_
#define EVCAT_SYNTAX_HPP_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evcat/corpus.hpp"

namespace evcat {

/// Copular verb lemmas.  The default covers "be"/"seem" plus the usual
/// linking verbs; corpora with different conventions can supply their own.
class CopularSet {
 public:
  CopularSet() = default;
  explicit CopularSet(std::set<std::string, std::less<>> lemmas)
      : lemmas_(std::move(lemmas)) {}

  bool contains(std::string_view lemma) const {
    return lemmas_.count(lemma) > 0;
  }
  const std::set<std::string, std::less<>>& lemmas() const { return lemmas_; }

 private:
  std::set<std::string, std::less<>> lemmas_;
};

const CopularSet& default_copular_set();

inline bool is_copular(std::string_view lemma) {
  return default_copular_set().contains(lemma);
}

/// "not" / "n't" particles are transparent inside a verb group.
bool is_negation_token(const Token& token);

/// Auxiliary lemmas that keep a verb group open when another verb follows.
bool is_auxiliary_lemma(std::string_view lemma);

/// Locates the main verb of the sentence's main clause with a small
/// finite-state scan: find the first verb-tagged token, then walk the verb
/// group, skipping auxiliaries (be/have/do/get with verb tags, modal tags),
/// adverbs, negation particles, and infinitival "to".  The first
/// non-auxiliary verb of the group is the main verb; if the group holds only
/// auxiliary forms (e.g. a bare copula), the last verb-tagged token is.
/// Returns the pre-annotated index unchanged when the sentence carries one.
/// nullopt means the clause has no verb-tagged token.
std::optional<int> find_main_verb(const Sentence& sentence);

/// Walks a verb group starting at `start` (which must be verb-tagged) within
/// `bounds`, using the same skip rules as find_main_verb.  Used for the
/// embedded verb slot of the complex syntactic patterns.
std::optional<int> verb_group_head(const std::vector<Token>& tokens,
                                   int start, const TokenSpan& bounds);

/// Longest match of the shallow NP grammar
///   NPapprox-short = det* adj* noun+ adj*
///   NPapprox       = NPapprox-short | NPapprox-short prep NPapprox
/// starting exactly at `start`.  Personal pronouns satisfy the noun+ slot.
std::optional<TokenSpan> match_np_approx(const std::vector<Token>& tokens,
                                         int start);

}  // namespace evcat

#endif  // EVCAT_SYNTAX_HPP_
