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

#include "evcat/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "evcat/errors.hpp"
#include "evcat/tagset.hpp"
#include "evcat/util.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;
constexpr const char* kFormatName = "evcat-corpus";

[[noreturn]] void fail(int line_number, const std::string& what) {
  throw DataError("line " + std::to_string(line_number) + ": " + what);
}

const ordered_json& require(const ordered_json& rec, const char* key,
                            int line_number) {
  auto it = rec.find(key);
  if (it == rec.end()) fail(line_number, std::string("missing field '") + key + "'");
  return *it;
}

Token parse_token(const ordered_json& j, int line_number) {
  if (!j.is_object()) fail(line_number, "token is not an object");
  Token t;
  t.surface = require(j, "surface", line_number).get<std::string>();
  t.pos = require(j, "pos", line_number).get<std::string>();
  t.lemma = require(j, "lemma", line_number).get<std::string>();
  t.in_quote = require(j, "in_quote", line_number).get<bool>();
  if (t.surface.empty()) fail(line_number, "empty token surface");
  if (t.lemma.empty()) fail(line_number, "empty token lemma");
  return t;
}

Sentence parse_sentence(const ordered_json& rec, const std::string& tagset,
                        int line_number) {
  if (!rec.is_object()) fail(line_number, "record is not an object");
  Sentence s;
  s.doc_id = require(rec, "doc_id", line_number).get<std::string>();
  if (s.doc_id.empty()) fail(line_number, "empty doc_id");
  s.sent_index = require(rec, "sent_index", line_number).get<int>();
  if (s.sent_index < 0) fail(line_number, "negative sent_index");
  s.paragraph_start = require(rec, "paragraph_start", line_number).get<bool>();

  const auto& toks = require(rec, "tokens", line_number);
  if (!toks.is_array() || toks.empty()) {
    fail(line_number, "tokens must be a non-empty array");
  }
  for (const auto& tj : toks) {
    Token t = parse_token(tj, line_number);
    if (!tag_in_tagset(tagset, t.pos)) {
      fail(line_number, "unknown pos tag '" + t.pos + "' for tagset '" +
                            tagset + "'");
    }
    s.tokens.push_back(std::move(t));
  }

  const int n = static_cast<int>(s.tokens.size());
  if (auto it = rec.find("main_clause"); it != rec.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 2) {
      fail(line_number, "main_clause must be a [start,end] pair");
    }
    TokenSpan span{(*it)[0].get<int>(), (*it)[1].get<int>()};
    if (span.begin < 0 || span.end > n || span.begin >= span.end) {
      fail(line_number, "span out of bounds: main_clause [" +
                            std::to_string(span.begin) + "," +
                            std::to_string(span.end) + ") with " +
                            std::to_string(n) + " tokens");
    }
    s.main_clause = span;
  }
  if (auto it = rec.find("main_verb_index"); it != rec.end() && !it->is_null()) {
    int mv = it->get<int>();
    if (!s.clause().contains(mv)) {
      fail(line_number, "main_verb_index " + std::to_string(mv) +
                            " outside the main clause");
    }
    s.main_verb_index = mv;
  }
  if (auto it = rec.find("gold_class"); it != rec.end() && !it->is_null()) {
    auto label = parse_class_label(it->get<std::string>());
    if (!label) {
      fail(line_number, "unknown gold_class '" + it->get<std::string>() + "'");
    }
    s.gold_class = *label;
  }
  return s;
}

ordered_json token_to_json(const Token& t) {
  ordered_json j;
  j["surface"] = t.surface;
  j["pos"] = t.pos;
  j["lemma"] = t.lemma;
  j["in_quote"] = t.in_quote;
  return j;
}

ordered_json sentence_to_json(const Sentence& s) {
  ordered_json j;
  j["doc_id"] = s.doc_id;
  j["sent_index"] = s.sent_index;
  j["paragraph_start"] = s.paragraph_start;
  if (s.main_clause) {
    j["main_clause"] = {s.main_clause->begin, s.main_clause->end};
  }
  if (s.main_verb_index) j["main_verb_index"] = *s.main_verb_index;
  if (s.gold_class) j["gold_class"] = std::string(to_string(*s.gold_class));
  ordered_json toks = ordered_json::array();
  for (const Token& t : s.tokens) toks.push_back(token_to_json(t));
  j["tokens"] = std::move(toks);
  return j;
}

}  // namespace

int Corpus::total_sentences() const {
  int n = 0;
  for (const Document& d : documents) n += static_cast<int>(d.sentences.size());
  return n;
}

int Corpus::labeled_sentences() const {
  int n = 0;
  for (const Document& d : documents) {
    for (const Sentence& s : d.sentences) {
      if (s.gold_class) ++n;
    }
  }
  return n;
}

std::array<int64_t, kNumClasses> Corpus::class_counts() const {
  std::array<int64_t, kNumClasses> counts{};
  for (const Document& d : documents) {
    for (const Sentence& s : d.sentences) {
      if (s.gold_class) ++counts[class_index(*s.gold_class)];
    }
  }
  return counts;
}

std::array<double, kNumClasses> Corpus::class_distribution() const {
  std::array<double, kNumClasses> dist{};
  const auto counts = class_counts();
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  if (total == 0) return dist;
  for (int i = 0; i < kNumClasses; ++i) {
    dist[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return dist;
}

Corpus Corpus::subset(const std::vector<int>& doc_indices) const {
  Corpus out;
  out.tagset = tagset;
  out.documents.reserve(doc_indices.size());
  for (int idx : doc_indices) {
    internal_check(idx >= 0 && idx < static_cast<int>(documents.size()),
                   "Corpus::subset: document index out of range");
    out.documents.push_back(documents[idx]);
  }
  return out;
}

Corpus parse_corpus(std::istream& in) {
  std::string line;
  int line_number = 0;

  // Header line.
  if (!std::getline(in, line)) throw DataError("empty corpus file");
  ++line_number;
  ordered_json header;
  try {
    header = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    fail(line_number, std::string("malformed header: ") + e.what());
  }
  if (!header.is_object() ||
      require(header, "format", line_number).get<std::string>() != kFormatName) {
    fail(line_number, "not an evcat corpus header");
  }
  if (require(header, "version", line_number).get<int>() != kFormatVersion) {
    fail(line_number, "unsupported corpus format version");
  }
  Corpus corpus;
  corpus.tagset = require(header, "tagset", line_number).get<std::string>();
  if (!known_tagset(corpus.tagset)) {
    fail(line_number, "unknown tagset '" + corpus.tagset + "'");
  }

  std::set<std::pair<std::string, int>> seen;
  std::set<std::string> finished_docs;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) fail(line_number, "empty record line");
    ordered_json rec;
    try {
      rec = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(line_number, std::string("malformed record: ") + e.what());
    }
    Sentence s = parse_sentence(rec, corpus.tagset, line_number);
    if (!seen.insert({s.doc_id, s.sent_index}).second) {
      fail(line_number, "duplicate (doc_id, sent_index) = (" + s.doc_id + ", " +
                            std::to_string(s.sent_index) + ")");
    }
    if (corpus.documents.empty() ||
        corpus.documents.back().doc_id != s.doc_id) {
      if (!finished_docs.insert(s.doc_id).second) {
        fail(line_number,
             "records of document '" + s.doc_id + "' are not contiguous");
      }
      corpus.documents.push_back(Document{s.doc_id, {}});
    }
    Document& doc = corpus.documents.back();
    const int expected = static_cast<int>(doc.sentences.size());
    if (s.sent_index != expected) {
      fail(line_number, "sent_index " + std::to_string(s.sent_index) +
                            " not consecutive (expected " +
                            std::to_string(expected) + ")");
    }
    doc.sentences.push_back(std::move(s));
  }
  return corpus;
}

Corpus parse_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return parse_corpus(in);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  ordered_json header;
  header["format"] = kFormatName;
  header["version"] = kFormatVersion;
  header["tagset"] = corpus.tagset;
  out << header.dump() << '\n';
  for (const Document& d : corpus.documents) {
    for (const Sentence& s : d.sentences) {
      out << sentence_to_json(s).dump() << '\n';
    }
  }
}

std::string corpus_to_string(const Corpus& corpus) {
  std::ostringstream os;
  write_corpus(corpus, os);
  return os.str();
}

void write_corpus_file(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file: " + path);
  write_corpus(corpus, out);
}

uint64_t corpus_fingerprint(const Corpus& corpus) {
  return fnv1a64(corpus_to_string(corpus));
}

CorpusSlice CorpusSlice::full(const Corpus& corpus) {
  CorpusSlice slice;
  slice.corpus = &corpus;
  slice.mask.reserve(corpus.documents.size());
  for (const Document& d : corpus.documents) {
    slice.mask.emplace_back(d.sentences.size(), 1);
  }
  return slice;
}

bool CorpusSlice::covers_all() const {
  internal_check(corpus != nullptr && mask.size() == corpus->documents.size(),
                 "slice does not match its corpus");
  for (size_t d = 0; d < mask.size(); ++d) {
    internal_check(mask[d].size() == corpus->documents[d].sentences.size(),
                   "slice does not match its corpus");
    for (char m : mask[d]) {
      if (!m) return false;
    }
  }
  return true;
}

int CorpusSlice::num_sentences() const {
  int n = 0;
  for (const auto& doc_mask : mask) {
    for (char m : doc_mask) n += (m != 0);
  }
  return n;
}

uint64_t CorpusSlice::fingerprint() const {
  const uint64_t base = corpus_fingerprint(*corpus);
  if (covers_all()) return base;
  uint64_t state = fnv1a64("slice", fnv1a64_mix(base));
  for (size_t d = 0; d < mask.size(); ++d) {
    for (size_t s = 0; s < mask[d].size(); ++s) {
      if (!mask[d][s]) continue;
      state = fnv1a64_mix(static_cast<uint64_t>(s),
                          fnv1a64_mix(static_cast<uint64_t>(d), state));
    }
  }
  return state;
}

}  // namespace evcat
