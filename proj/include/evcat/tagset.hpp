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

#ifndef EVCAT_TAGSET_HPP_
#define EVCAT_TAGSET_HPP_

#include <string_view>

namespace evcat {

/// Part-of-speech classes used by the collocational patterns.
enum class PosClass : int { kVerb = 0, kNoun = 1, kAdj = 2 };

constexpr std::string_view to_string(PosClass pc) {
  switch (pc) {
    case PosClass::kVerb: return "verb";
    case PosClass::kNoun: return "noun";
    case PosClass::kAdj: return "adj";
  }
  return "?";
}

bool known_tagset(std::string_view name);
bool tag_in_tagset(std::string_view tagset_name, std::string_view tag);

// Tag predicates over Penn Treebank tags.
inline bool is_verb_tag(std::string_view tag) {
  return !tag.empty() && tag[0] == 'V';
}
inline bool is_modal_tag(std::string_view tag) { return tag == "MD"; }
inline bool is_adverb_tag(std::string_view tag) {
  return tag == "RB" || tag == "RBR" || tag == "RBS";
}
inline bool is_noun_tag(std::string_view tag) {
  return !tag.empty() && tag[0] == 'N';
}
inline bool is_adjective_tag(std::string_view tag) {
  return !tag.empty() && tag[0] == 'J';
}
inline bool is_personal_pronoun_tag(std::string_view tag) {
  return tag == "PRP";
}
inline bool is_determiner_tag(std::string_view tag) {
  return tag == "DT" || tag == "PDT" || tag == "PRP$";
}
inline bool is_preposition_tag(std::string_view tag) { return tag == "IN"; }
inline bool is_to_tag(std::string_view tag) { return tag == "TO"; }

/// Mapping of tags to the verb/noun/adj pattern classes.  Personal pronouns
/// count as nouns, matching the noun slot of the NP approximation grammar.
inline bool tag_in_pos_class(std::string_view tag, PosClass pc) {
  switch (pc) {
    case PosClass::kVerb: return is_verb_tag(tag);
    case PosClass::kNoun: return is_noun_tag(tag) || is_personal_pronoun_tag(tag);
    case PosClass::kAdj: return is_adjective_tag(tag);
  }
  return false;
}

}  // namespace evcat

#endif  // EVCAT_TAGSET_HPP_
