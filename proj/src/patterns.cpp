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

#include "evcat/patterns.hpp"

#include <algorithm>
#include <set>

#include "evcat/errors.hpp"

namespace evcat {
namespace {

constexpr std::string_view kPatternNames[kNumPatterns] = {
    "cooc-verb", "cooc-noun", "cooc-adj",   "w5-verb",    "w5-noun",
    "w5-adj",    "baseMV",    "baseAdj",    "complexMV",  "complexAdj",
};

void push_unique(std::vector<PatternMatch>& out, PatternId pattern,
                 const std::string& lemma, int index,
                 std::set<std::string>& seen) {
  if (seen.insert(lemma).second) {
    out.push_back(PatternMatch{pattern, lemma, index});
  }
}

int skip_adverbs(const std::vector<Token>& tokens, int i) {
  const int n = static_cast<int>(tokens.size());
  while (i < n && is_adverb_tag(tokens[i].pos)) ++i;
  return i;
}

}  // namespace

std::string_view to_string(PatternId id) {
  return kPatternNames[static_cast<int>(id)];
}

std::optional<PatternId> parse_pattern_id(std::string_view s) {
  for (int i = 0; i < kNumPatterns; ++i) {
    if (kPatternNames[i] == s) return static_cast<PatternId>(i);
  }
  return std::nullopt;
}

std::string_view to_string(PatternFamily family) {
  switch (family) {
    case PatternFamily::kCooccurrence: return "cooccurrence";
    case PatternFamily::kWithin5: return "within5";
    case PatternFamily::kSyntactic: return "syntactic";
  }
  return "?";
}

std::optional<PatternFamily> parse_pattern_family(std::string_view s) {
  if (s == "cooccurrence") return PatternFamily::kCooccurrence;
  if (s == "within5") return PatternFamily::kWithin5;
  if (s == "syntactic") return PatternFamily::kSyntactic;
  return std::nullopt;
}

PatternFamily family_of(PatternId id) {
  const int v = static_cast<int>(id);
  if (v < 3) return PatternFamily::kCooccurrence;
  if (v < 6) return PatternFamily::kWithin5;
  return PatternFamily::kSyntactic;
}

const std::vector<PatternId>& patterns_in_family(PatternFamily family) {
  static const std::vector<PatternId> cooc = {
      PatternId::kCoocVerb, PatternId::kCoocNoun, PatternId::kCoocAdj};
  static const std::vector<PatternId> w5 = {
      PatternId::kW5Verb, PatternId::kW5Noun, PatternId::kW5Adj};
  static const std::vector<PatternId> syn = {
      PatternId::kBaseMV, PatternId::kBaseAdj, PatternId::kComplexMV,
      PatternId::kComplexAdj};
  switch (family) {
    case PatternFamily::kCooccurrence: return cooc;
    case PatternFamily::kWithin5: return w5;
    case PatternFamily::kSyntactic: return syn;
  }
  throw InternalError("patterns_in_family: bad family");
}

std::vector<PatternMatch> extract_cooccurrence(const Sentence& s, PosClass pc) {
  static constexpr PatternId kByClass[3] = {
      PatternId::kCoocVerb, PatternId::kCoocNoun, PatternId::kCoocAdj};
  const PatternId pattern = kByClass[static_cast<int>(pc)];
  std::vector<PatternMatch> out;
  std::set<std::string> seen;
  for (int i = 0; i < static_cast<int>(s.tokens.size()); ++i) {
    if (tag_in_pos_class(s.tokens[i].pos, pc)) {
      push_unique(out, pattern, s.tokens[i].lemma, i, seen);
    }
  }
  return out;
}

std::vector<PatternMatch> extract_within5(const Sentence& s, PosClass pc) {
  static constexpr PatternId kByClass[3] = {
      PatternId::kW5Verb, PatternId::kW5Noun, PatternId::kW5Adj};
  const PatternId pattern = kByClass[static_cast<int>(pc)];
  std::vector<PatternMatch> out;
  const auto mv = find_main_verb(s);
  if (!mv) return out;  // sentence skipped by pattern extractors
  const int n = static_cast<int>(s.tokens.size());
  const int lo = std::max(0, *mv - 5);
  const int hi = std::min(n - 1, *mv + 5);
  std::set<std::string> seen;
  for (int i = lo; i <= hi; ++i) {
    if (i == *mv) continue;  // pivot excluded
    if (tag_in_pos_class(s.tokens[i].pos, pc)) {
      push_unique(out, pattern, s.tokens[i].lemma, i, seen);
    }
  }
  return out;
}

std::vector<PatternMatch> extract_syntactic(const Sentence& s,
                                            PatternId pattern,
                                            const CopularSet& copular) {
  internal_check(family_of(pattern) == PatternFamily::kSyntactic,
                 "extract_syntactic: not a syntactic pattern");
  std::vector<PatternMatch> out;
  const auto mv = find_main_verb(s);
  if (!mv) return out;
  const auto& tokens = s.tokens;
  const int n = static_cast<int>(tokens.size());
  const TokenSpan whole{0, n};

  switch (pattern) {
    case PatternId::kBaseMV: {
      out.push_back(PatternMatch{pattern, tokens[*mv].lemma, *mv});
      return out;
    }
    case PatternId::kBaseAdj: {
      // <main_verb adv* a>, main verb copular.
      if (!copular.contains(tokens[*mv].lemma)) return out;
      int i = skip_adverbs(tokens, *mv + 1);
      if (i < n && is_adjective_tag(tokens[i].pos)) {
        out.push_back(PatternMatch{pattern, tokens[i].lemma, i});
      }
      return out;
    }
    case PatternId::kComplexMV:
    case PatternId::kComplexAdj: {
      // <main_verb adv* [NPapprox] ["to"] ...>
      int i = skip_adverbs(tokens, *mv + 1);
      if (auto np = match_np_approx(tokens, i)) i = np->end;
      if (i < n && is_to_tag(tokens[i].pos)) ++i;
      if (pattern == PatternId::kComplexAdj) {
        i = skip_adverbs(tokens, i);  // adv* before the embedded verb
      }
      if (i >= n || !is_verb_tag(tokens[i].pos)) return out;
      const auto head = verb_group_head(tokens, i, whole);
      if (!head) return out;
      if (pattern == PatternId::kComplexMV) {
        out.push_back(PatternMatch{pattern, tokens[*head].lemma, *head});
        return out;
      }
      // complexAdj: embedded verb must be copular; then adv* and an adjective.
      if (!copular.contains(tokens[*head].lemma)) return out;
      int j = skip_adverbs(tokens, *head + 1);
      if (j < n && is_adjective_tag(tokens[j].pos)) {
        out.push_back(PatternMatch{pattern, tokens[j].lemma, j});
      }
      return out;
    }
    default:
      throw InternalError("extract_syntactic: unreachable");
  }
}

std::vector<PatternMatch> extract_pattern(const Sentence& s, PatternId pattern,
                                          const CopularSet& copular) {
  switch (pattern) {
    case PatternId::kCoocVerb: return extract_cooccurrence(s, PosClass::kVerb);
    case PatternId::kCoocNoun: return extract_cooccurrence(s, PosClass::kNoun);
    case PatternId::kCoocAdj: return extract_cooccurrence(s, PosClass::kAdj);
    case PatternId::kW5Verb: return extract_within5(s, PosClass::kVerb);
    case PatternId::kW5Noun: return extract_within5(s, PosClass::kNoun);
    case PatternId::kW5Adj: return extract_within5(s, PosClass::kAdj);
    default: return extract_syntactic(s, pattern, copular);
  }
}

}  // namespace evcat
