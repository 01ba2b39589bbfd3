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

#include "evcat/syntax.hpp"

#include <algorithm>
#include <cctype>

#include "evcat/errors.hpp"
#include "evcat/tagset.hpp"

namespace evcat {
namespace {

std::string lowercased(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

const CopularSet& default_copular_set() {
  static const CopularSet set(std::set<std::string, std::less<>>{
      "be", "seem", "appear", "become", "remain", "look", "feel", "sound",
      "stay", "prove", "get", "grow", "turn"});
  return set;
}

bool is_negation_token(const Token& token) {
  const std::string s = lowercased(token.surface);
  return s == "not" || s == "n't";
}

bool is_auxiliary_lemma(std::string_view lemma) {
  return lemma == "be" || lemma == "have" || lemma == "do" || lemma == "get";
}

std::optional<int> verb_group_head(const std::vector<Token>& tokens, int start,
                                   const TokenSpan& bounds) {
  internal_check(bounds.contains(start) && is_verb_tag(tokens[start].pos),
                 "verb_group_head: start must be a verb-tagged token");
  int last_verb = -1;
  for (int i = start; i < bounds.end; ++i) {
    const Token& t = tokens[i];
    if (is_verb_tag(t.pos)) {
      last_verb = i;
      if (!is_auxiliary_lemma(t.lemma)) return i;
      continue;
    }
    if (is_modal_tag(t.pos) || is_adverb_tag(t.pos) || is_to_tag(t.pos) ||
        is_negation_token(t)) {
      continue;  // transparent inside the group
    }
    break;
  }
  if (last_verb < 0) return std::nullopt;
  return last_verb;
}

std::optional<int> find_main_verb(const Sentence& sentence) {
  if (sentence.main_verb_index) return sentence.main_verb_index;
  const TokenSpan clause = sentence.clause();
  for (int i = clause.begin; i < clause.end; ++i) {
    if (is_verb_tag(sentence.tokens[i].pos)) {
      return verb_group_head(sentence.tokens, i, clause);
    }
  }
  return std::nullopt;
}

namespace {

// Longest NPapprox-short at `start`, or nullopt.
std::optional<int> match_np_short_end(const std::vector<Token>& tokens,
                                      int start) {
  const int n = static_cast<int>(tokens.size());
  int i = start;
  while (i < n && is_determiner_tag(tokens[i].pos)) ++i;
  while (i < n && is_adjective_tag(tokens[i].pos)) ++i;
  int nouns = 0;
  while (i < n && tag_in_pos_class(tokens[i].pos, PosClass::kNoun)) {
    ++i;
    ++nouns;
  }
  if (nouns == 0) return std::nullopt;
  while (i < n && is_adjective_tag(tokens[i].pos)) ++i;
  return i;
}

}  // namespace

std::optional<TokenSpan> match_np_approx(const std::vector<Token>& tokens,
                                         int start) {
  internal_check(start >= 0 && start <= static_cast<int>(tokens.size()),
                 "match_np_approx: start out of bounds");
  auto short_end = match_np_short_end(tokens, start);
  if (!short_end) return std::nullopt;
  int end = *short_end;
  // Recursive prepositional chain; keep the extension only if the embedded
  // NP matches, otherwise the short match stands.
  if (end < static_cast<int>(tokens.size()) &&
      is_preposition_tag(tokens[end].pos)) {
    if (auto rest = match_np_approx(tokens, end + 1)) {
      end = rest->end;
    }
  }
  return TokenSpan{start, end};
}

}  // namespace evcat
