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

#include "evcat/tagset.hpp"

#include <set>
#include <string>

namespace evcat {
namespace {

const std::set<std::string, std::less<>>& penn_treebank_tags() {
  static const std::set<std::string, std::less<>> tags = {
      // Word-level tags.
      "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
      "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
      "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
      "VBZ", "WDT", "WP", "WP$", "WRB",
      // Punctuation and special tokens.
      "#", "$", ".", ",", ":", "``", "''", "-LRB-", "-RRB-", "-NONE-",
  };
  return tags;
}

}  // namespace

bool known_tagset(std::string_view name) { return name == "penn-treebank"; }

bool tag_in_tagset(std::string_view tagset_name, std::string_view tag) {
  if (tagset_name == "penn-treebank") {
    return penn_treebank_tags().count(tag) > 0;
  }
  return false;
}

}  // namespace evcat
