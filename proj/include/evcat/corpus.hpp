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

#ifndef EVCAT_CORPUS_HPP_
#define EVCAT_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evcat/class_label.hpp"

namespace evcat {

struct Token {
  std::string surface;
  std::string pos;
  std::string lemma;
  bool in_quote = false;
};

/// Half-open token index range.
struct TokenSpan {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool contains(int index) const { return index >= begin && index < end; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct Sentence {
  std::string doc_id;
  int sent_index = 0;
  bool paragraph_start = false;
  std::vector<Token> tokens;
  /// Explicit main-clause span, if the record carried one.
  std::optional<TokenSpan> main_clause;
  /// Pre-annotated main-verb index, if the record carried one.
  std::optional<int> main_verb_index;
  std::optional<ClassLabel> gold_class;

  /// Main clause to operate on: the explicit span, or the whole sentence.
  TokenSpan clause() const {
    if (main_clause) return *main_clause;
    return TokenSpan{0, static_cast<int>(tokens.size())};
  }
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;
};

/// An ordered, immutable collection of annotated documents.  Sentence and
/// document order is stable across reads; sequential features rely on it.
struct Corpus {
  std::string tagset = "penn-treebank";
  std::vector<Document> documents;

  int total_sentences() const;
  int labeled_sentences() const;
  /// Empirical distribution over the six classes among labeled sentences.
  std::array<double, kNumClasses> class_distribution() const;
  std::array<int64_t, kNumClasses> class_counts() const;

  /// New corpus containing the given documents, in the given order.
  Corpus subset(const std::vector<int>& doc_indices) const;
};

/// Reads the JSON Lines corpus format.  Rejects malformed records with the
/// offending line number; never repairs.
Corpus parse_corpus(std::istream& in);
Corpus parse_corpus_file(const std::string& path);

/// Canonical serialization: fixed key order, compact separators, one record
/// per line.  parse(write(parse(x))) == parse(x), and write . parse is a
/// byte-level fixed point.
void write_corpus(const Corpus& corpus, std::ostream& out);
std::string corpus_to_string(const Corpus& corpus);
void write_corpus_file(const Corpus& corpus, const std::string& path);

/// Fingerprint of the canonical serialization; used to pin training folds.
uint64_t corpus_fingerprint(const Corpus& corpus);

/// A subset of a corpus's sentences, document structure intact.  Sentence
/// folding puts scattered sentences in one fold part; the surrounding
/// sentences stay visible as context for the sequential features.
struct CorpusSlice {
  const Corpus* corpus = nullptr;
  std::vector<std::vector<char>> mask;  // per document, per sentence

  static CorpusSlice full(const Corpus& corpus);
  bool covers_all() const;
  int num_sentences() const;
  /// Equals corpus_fingerprint(*corpus) when the slice covers everything;
  /// otherwise folds the selected sentence coordinates into the hash.
  uint64_t fingerprint() const;
};

}  // namespace evcat

#endif  // EVCAT_CORPUS_HPP_
