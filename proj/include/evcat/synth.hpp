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

#ifndef EVCAT_SYNTH_HPP_
#define EVCAT_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "evcat/class_label.hpp"
#include "evcat/corpus.hpp"
#include "evcat/patterns.hpp"

namespace evcat {

/// Indicator lemmas planted for one pattern family.  Every class gets
/// `per_class` lemmas per slot kind (verbs and adjectives for the syntactic
/// slots; nouns and adjectives for the co-occurrence slot).  A sentence of
/// class c carries one of its own indicators with probability `fire_rate`,
/// damped by `majority_scale` for the unmarked other-event class; sentences
/// of other classes carry it at the rate implied by `purity`, the target
/// P(class = c | indicator fires).
struct IndicatorSpec {
  int per_class = 3;
  double fire_rate = 0.35;
  double purity = 0.8;
  double majority_scale = 0.25;
};

/// Knobs of the corpus generator.  Defaults mirror the class balance and
/// the two indicator regimes (sparse-strong syntactic evidence against
/// frequent-weak co-occurrence evidence) of the evaluation setup.
struct SynthParams {
  int num_sentences = 2544;
  uint64_t seed = 7;
  // In canonical class order: private-state, speech-1-direct,
  // speech-2-mixed, speech-3-other, borderline-ps-other, other-event.
  std::array<double, kNumClasses> class_distribution = {0.10, 0.09, 0.04,
                                                        0.24, 0.01, 0.52};
  int min_doc_sentences = 8;
  int max_doc_sentences = 16;
  int min_paragraph_sentences = 2;
  int max_paragraph_sentences = 5;
  // Chance a sentence repeats its paragraph's topic class.
  double paragraph_clustering = 0.6;
  IndicatorSpec syntactic{12, 0.42, 0.72, 0.25};
  IndicatorSpec cooccurrence{2, 0.55, 0.62, 0.45};
  // Chance that a generic-noun slot reuses a noun already drawn in the same
  // document instead of a fresh vocabulary draw.
  double noun_burstiness = 0.6;
  // Chance that an open slot inside a quoted clause names another class's
  // topical vocabulary instead of a generic word (quotes paraphrase the
  // events they comment on).
  double quote_mention_rate = 0.42;
  // Target fraction of in-quote tokens for the two quoting classes.
  double direct_quote_fraction = 0.45;
  double mixed_quote_fraction = 0.18;
  // How often speech-3 sentences carry an attribution tail, and how often
  // anything else does.
  double according_to_rate = 0.35;
  double according_to_noise = 0.06;
};

/// Rejects distributions that do not sum to one, rates outside (0,1),
/// purity outside (0,1], and indicator demands whose implied cross-class
/// planting rates exceed the per-sentence budget.
void validate_params(const SynthParams& params);

std::string params_to_json(const SynthParams& params);
SynthParams params_from_json(const std::string& text);
SynthParams read_params_file(const std::string& path);
void write_params_file(const SynthParams& params, const std::string& path);

/// Deterministic labeled corpus: documents of paragraph-structured clause
/// frames with class-indicator lemmas planted in pattern-specific slots.
/// Class totals follow the distribution exactly (largest remainder).
Corpus generate_synthetic(const SynthParams& params);

/// The lemmas planted for a class in one family ("syntactic" slots are the
/// main/embedded verbs and predicate adjectives; "cooccurrence" slots are
/// the extra noun/adjective of the object or trailing phrase).  Exposed so
/// tests can verify purity and fire-rate targets against generated corpora.
std::vector<std::string> planted_lemmas(const SynthParams& params,
                                        ClassLabel label,
                                        PatternFamily family);

}  // namespace evcat

#endif  // EVCAT_SYNTH_HPP_
