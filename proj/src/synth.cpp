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

#include "evcat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "evcat/errors.hpp"
#include "evcat/util.hpp"
#include "json.hpp"

namespace evcat {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Word pools.  Within each part of speech, the class pools, the generic
// pool, and the structural pools are pairwise disjoint, so a planted
// indicator can only ever fire on the sentences the planter chose.

struct ClassPools {
  std::vector<std::string> verbs;  // syntactic slots (main/embedded verb)
  std::vector<std::string> adjs;   // syntactic slots (predicate adjective)
  std::vector<std::string> nouns;      // co-occurrence slot
  std::vector<std::string> cooc_adjs;  // co-occurrence slot
};

const std::array<ClassPools, kNumClasses>& class_pools() {
  static const std::array<ClassPools, kNumClasses> pools = {{
      // private-state
      {{"believe", "fear", "hope", "doubt", "worry", "suspect", "regret",
        "resent", "dread", "cherish", "distrust", "lament"},
       {"optimistic", "worried", "confident", "skeptical", "anxious",
        "hopeful", "wary", "uneasy", "fearful", "doubtful", "apprehensive",
        "upbeat"},
       {"concern", "confidence", "anxiety", "optimism", "pessimism", "unease",
        "suspicion", "misgiving", "qualm", "trepidation", "disquiet",
        "foreboding"},
       {"heartfelt", "gnawing", "lingering", "nagging", "deepseated",
        "unspoken", "visceral", "quiet", "grave", "mounting", "acute",
        "palpable"}},
      // speech-1-direct
      {{"exclaim", "reply", "shout", "whisper", "remark", "retort", "mutter",
        "blurt", "proclaim", "quip", "snap", "interject"},
       {"blunt", "candid", "vocal", "outspoken", "emphatic", "terse", "curt",
        "brash", "strident", "defiant", "animated", "colorful"},
       {"quote", "remark", "retort", "exclamation", "outburst", "quip",
        "interjection", "utterance", "aside", "jab", "barb", "rejoinder"},
       {"verbatim", "unscripted", "offhand", "pointed", "fiery", "heated",
        "spirited", "caustic", "wry", "sardonic", "breezy", "combative"}},
      // speech-2-mixed
      {{"acknowledge", "concede", "assert", "contend", "allege", "maintain",
        "insist", "imply", "hint", "stress", "suggest", "argue"},
       {"guarded", "careful", "noncommittal", "diplomatic", "measured",
        "evasive", "circumspect", "elliptical", "vague", "coy", "oblique",
        "hedged"},
       {"claim", "assertion", "allegation", "contention", "admission",
        "suggestion", "insistence", "implication", "accusation", "rebuttal",
        "retraction", "caveat"},
       {"qualified", "partial", "paraphrased", "indirect", "attributed",
        "selective", "couched", "nuanced", "muted", "tempered", "cautious",
        "equivocal"}},
      // speech-3-other
      {{"announce", "report", "state", "declare", "confirm", "deny",
        "disclose", "testify", "estimate", "forecast", "reveal", "certify"},
       {"official", "formal", "public", "preliminary", "revised", "unaudited",
        "documented", "verified", "quarterly", "interim", "audited",
        "procedural"},
       {"statement", "announcement", "report", "spokesman", "briefing",
        "testimony", "release", "disclosure", "filing", "bulletin",
        "communique", "advisory"},
       {"published", "issued", "written", "prepared", "submitted", "signed",
        "certified", "stamped", "recorded", "registered", "notarized",
        "archived"}},
      // borderline-ps-other
      {{"plan", "intend", "aim", "decide", "consider", "weigh", "mull",
        "envision", "contemplate", "propose", "favor", "oppose"},
       {"tentative", "provisional", "likely", "possible", "probable",
        "conditional", "undecided", "pending", "speculative", "hypothetical",
        "exploratory", "notional"},
       {"plan", "intention", "proposal", "decision", "consideration",
        "option", "scenario", "blueprint", "timetable", "agenda", "roadmap",
        "framework"},
       {"contingent", "unresolved", "unsettled", "openended", "deferred",
        "postponed", "shelved", "floated", "mooted", "embryonic", "nascent",
        "halfformed"}},
      // other-event
      {{"rise", "fall", "climb", "drop", "open", "close", "build", "sell",
        "buy", "ship", "merge", "expand"},
       {"strong", "weak", "higher", "lower", "flat", "steady", "modest",
        "sharp", "brisk", "sluggish", "solid", "thin"},
       {"market", "profit", "revenue", "price", "contract", "plant",
        "product", "quarter", "sale", "shipment", "output", "demand"},
       {"record", "overseas", "wholesale", "retail", "industrial", "seasonal",
        "regional", "nationwide", "bundled", "discounted", "refurbished",
        "imported"}},
  }};
  return pools;
}

const std::vector<std::string>& subject_nouns() {
  static const std::vector<std::string> v = {
      "analyst",     "director", "executive", "investor",
      "trader",      "economist", "regulator", "shareholder",
      "employee",    "customer", "manager",   "banker"};
  return v;
}

// Deliberately long, so the zipf tail yields words seen once or twice per
// training fold; those look class-pure and slip into per-class inventories.
const std::vector<std::string>& generic_nouns() {
  static const std::vector<std::string> v = {
      "company",   "year",      "time",       "week",      "group",
      "unit",      "business",  "industry",   "program",   "system",
      "effort",    "issue",     "result",     "deal",      "share",
      "stock",     "bond",      "loan",       "bank",      "firm",
      "maker",     "venture",   "budget",     "office",    "division",
      "network",   "factory",   "warehouse",  "supplier",  "portfolio",
      "city",      "town",      "area",       "zone",      "sector",
      "branch",    "agency",    "board",      "panel",     "committee",
      "council",   "bureau",    "desk",       "floor",     "lobby",
      "hall",      "tower",     "campus",     "site",      "depot",
      "terminal",  "port",      "airline",    "railroad",  "utility",
      "refinery",  "mill",      "mine",       "farm",      "ranch",
      "pipeline",  "grid",      "reactor",    "turbine",   "engine",
      "motor",     "chassis",   "sedan",      "truck",     "trailer",
      "tractor",   "crane",     "conveyor",   "gadget",    "widget",
      "appliance", "fixture",   "valve",      "gasket",    "bearing",
      "piston",    "axle",      "sprocket",   "pulley",    "lever",
      "console",   "ledger",    "invoice",    "receipt",   "voucher",
      "coupon",    "rebate",    "tariff",     "levy",      "surcharge",
      "fee",       "toll",      "rent",       "lease",     "mortgage",
      "annuity",   "pension",   "payroll",    "salary",    "wage",
      "bonus",     "dividend",  "margin",     "markup",    "subsidy",
      "grant",     "refund",    "deposit",    "balance",   "escrow",
      "surplus",   "deficit",   "reserve",    "quota",     "inventory",
      "merger",    "buyout",    "takeover",   "spinoff",   "startup",
      "subsidiary", "affiliate", "franchise", "brand",     "label",
      "catalog",   "roster",    "lineup",     "docket",    "itinerary",
      "schedule",  "projection", "outlook",   "audit",     "survey",
      "census",    "index",     "benchmark",  "gauge",     "barometer",
      "tally",     "total",     "summary",    "workshop",  "seminar",
      "symposium", "almanac",   "leaflet",    "gazette",   "journal",
      "pamphlet",  "flyer",     "poster",     "banner",    "billboard",
      "kiosk",     "booth",     "stall",      "counter",   "aisle",
      "shelf",     "rack",      "bin",        "crate",     "pallet",
      "freight",   "cargo",     "consignment", "manifest", "waybill"};
  return v;
}

const std::vector<std::string>& generic_verbs() {
  static const std::vector<std::string> v = {
      "make",  "take", "give",  "move", "hold",   "run",    "show",
      "keep",  "start", "leave", "put",  "bring",  "use",    "find",
      "work",  "call", "need",  "include", "follow", "set",  "win",
      "lose",  "pay",  "cut",   "sign", "join",   "meet",   "send"};
  return v;
}

const std::vector<std::string>& control_verbs() {
  static const std::vector<std::string> v = {"want",   "try",  "agree",
                                             "refuse", "manage", "fail",
                                             "seek"};
  return v;
}

const std::vector<std::string>& generic_adjs() {
  static const std::vector<std::string> v = {
      "new",     "big",      "small",  "early",  "late",   "major",
      "minor",   "recent",   "current", "federal", "local", "foreign",
      "domestic", "annual",  "key",    "top",    "long",   "short",
      "good",    "high"};
  return v;
}

// Attribution tails name sources outside every other pool.  Two lemmas keep
// each one frequent enough that the noise rate pairs both with every class.
const std::vector<std::string>& attribution_nouns() {
  static const std::vector<std::string> v = {"memo", "transcript"};
  return v;
}

const std::vector<std::string>& prepositions() {
  static const std::vector<std::string> v = {"in", "at", "on", "for", "with"};
  return v;
}

/// Pool disjointness within a part of speech is what keeps indicator
/// purity controllable, so it is checked once on first use.
void check_pools() {
  auto assert_disjoint = [](const std::vector<const std::vector<std::string>*>&
                                pools,
                            const char* what) {
    std::set<std::string> seen;
    for (const auto* pool : pools) {
      for (const std::string& w : *pool) {
        internal_check(seen.insert(w).second,
                       std::string("duplicate lemma across ") + what +
                           " pools: " + w);
      }
    }
  };
  std::vector<const std::vector<std::string>*> verbs = {&generic_verbs(),
                                                        &control_verbs()};
  std::vector<const std::vector<std::string>*> nouns = {
      &subject_nouns(), &generic_nouns(), &attribution_nouns()};
  std::vector<const std::vector<std::string>*> adjs = {&generic_adjs()};
  for (const ClassPools& p : class_pools()) {
    verbs.push_back(&p.verbs);
    nouns.push_back(&p.nouns);
    adjs.push_back(&p.adjs);
    adjs.push_back(&p.cooc_adjs);
  }
  assert_disjoint(verbs, "verb");
  assert_disjoint(nouns, "noun");
  assert_disjoint(adjs, "adjective");
}

// ---------------------------------------------------------------------------
// Inflection (cosmetic: lemmas drive the patterns, surfaces the quotes).

const std::map<std::string, std::pair<std::string, std::string>>&
irregular_past() {
  // lemma -> (VBD, VBN)
  static const std::map<std::string, std::pair<std::string, std::string>> m = {
      {"take", {"took", "taken"}},   {"give", {"gave", "given"}},
      {"hold", {"held", "held"}},    {"run", {"ran", "run"}},
      {"show", {"showed", "shown"}}, {"keep", {"kept", "kept"}},
      {"leave", {"left", "left"}},   {"put", {"put", "put"}},
      {"bring", {"brought", "brought"}}, {"find", {"found", "found"}},
      {"make", {"made", "made"}},    {"set", {"set", "set"}},
      {"win", {"won", "won"}},       {"lose", {"lost", "lost"}},
      {"pay", {"paid", "paid"}},     {"cut", {"cut", "cut"}},
      {"meet", {"met", "met"}},      {"send", {"sent", "sent"}},
      {"rise", {"rose", "risen"}},   {"fall", {"fell", "fallen"}},
      {"sell", {"sold", "sold"}},    {"buy", {"bought", "bought"}},
      {"build", {"built", "built"}}, {"say", {"said", "said"}},
      {"seem", {"seemed", "seemed"}}};
  return m;
}

std::string regular_past(const std::string& lemma) {
  if (!lemma.empty() && lemma.back() == 'e') return lemma + "d";
  if (lemma.size() > 1 && lemma.back() == 'y') {
    return lemma.substr(0, lemma.size() - 1) + "ied";
  }
  return lemma + "ed";
}

std::string inflect(const std::string& lemma, const std::string& tag) {
  if (tag == "VB") return lemma;
  if (tag == "VBZ") {
    if (lemma == "be") return "is";
    if (lemma == "have") return "has";
    if (!lemma.empty() && (lemma.back() == 's' || lemma.back() == 'h')) {
      return lemma + "es";
    }
    if (lemma.size() > 1 && lemma.back() == 'y') {
      return lemma.substr(0, lemma.size() - 1) + "ies";
    }
    return lemma + "s";
  }
  if (tag == "VBD" || tag == "VBN") {
    if (lemma == "be") return tag == "VBD" ? "was" : "been";
    if (lemma == "have") return "had";
    auto it = irregular_past().find(lemma);
    if (it != irregular_past().end()) {
      return tag == "VBD" ? it->second.first : it->second.second;
    }
    return regular_past(lemma);
  }
  if (tag == "NNS") {
    if (lemma.size() > 1 && lemma.back() == 'y') {
      return lemma.substr(0, lemma.size() - 1) + "ies";
    }
    if (!lemma.empty() && (lemma.back() == 's' || lemma.back() == 'h')) {
      return lemma + "es";
    }
    return lemma + "s";
  }
  return lemma;
}

// ---------------------------------------------------------------------------
// Planting

enum class Tense { kPast, kPresent, kModal, kPerfect };

/// Per-class chance that a sentence of another class hosts one of this
/// class's indicators, derived from the purity target: with fire rate f and
/// class share pi, P(class | fires) = purity requires the total off-class
/// rate f * pi * (1 - purity) / (purity * (1 - pi)).
std::array<double, kNumClasses> cross_rates(
    const SynthParams& params, const IndicatorSpec& spec) {
  std::array<double, kNumClasses> cross{};
  for (int c = 0; c < kNumClasses; ++c) {
    const double pi = params.class_distribution[c];
    const double f =
        spec.fire_rate *
        (class_from_index(c) == ClassLabel::kOtherEvent ? spec.majority_scale
                                                        : 1.0);
    if (pi <= 0.0 || pi >= 1.0) {
      cross[c] = 0.0;
      continue;
    }
    cross[c] = f * pi * (1.0 - spec.purity) / (spec.purity * (1.0 - pi));
  }
  return cross;
}

/// Draws which class's indicator (if any) a sentence of class `label`
/// hosts: its own at the fire rate, another's at that class's cross rate.
std::optional<int> draw_plant(Rng& rng, int label, const IndicatorSpec& spec,
                              const std::array<double, kNumClasses>& cross) {
  const double own =
      spec.fire_rate *
      (class_from_index(label) == ClassLabel::kOtherEvent
           ? spec.majority_scale
           : 1.0);
  double u = rng.unit();
  if (u < own) return label;
  u -= own;
  for (int c = 0; c < kNumClasses; ++c) {
    if (c == label) continue;
    if (u < cross[c]) return c;
    u -= cross[c];
  }
  return std::nullopt;
}

/// Zipf-ish weights over the first `prefix` entries so pool tails stay
/// sparse (that sparseness is what lets occasional words look class-pure on
/// a training fold).
const std::string& zipf_pick(Rng& rng, const std::vector<std::string>& pool,
                             size_t prefix) {
  const size_t n = std::min(prefix, pool.size());
  std::vector<double> weights(n);
  for (size_t i = 0; i < n; ++i) {
    weights[i] = 1.0 / static_cast<double>(i + 1);
  }
  return pool[rng.weighted(weights)];
}

const std::string& zipf_pick(Rng& rng, const std::vector<std::string>& pool) {
  return zipf_pick(rng, pool, pool.size());
}

// The majority class draws open-class fillers from the whole vocabulary;
// every other class reuses its head.  Head words then sit just under a 0.5
// majority ratio and tail words are majority-pure but rare, so generic
// fillers either stay out of per-class pools or enter as cheap, seldom
// firing majority words.  Without the skew every filler clears the ratio
// test for the majority class outright (its share alone exceeds one half).
constexpr size_t kGenericVerbHead = 8;
constexpr size_t kGenericAdjHead = 9;

std::string generic_verb(Rng& rng, bool majority) {
  return zipf_pick(rng, generic_verbs(),
                   majority ? generic_verbs().size() : kGenericVerbHead);
}

std::string generic_adj(Rng& rng, bool majority) {
  return zipf_pick(rng, generic_adjs(),
                   majority ? generic_adjs().size() : kGenericAdjHead);
}

/// Document-scoped generic-noun source.  Re-drawing a recently used noun
/// gives tail words document bursts: a word seen two or three times inside
/// one article usually sits in one class, which is all a ratio-based
/// per-class inventory needs to take it as pure.
struct NounBag {
  double burst = 0.0;
  std::vector<std::string> recent;

  const std::string& draw(Rng& rng) {
    if (!recent.empty() && rng.bernoulli(burst)) {
      return recent[rng.below(recent.size())];
    }
    recent.push_back(zipf_pick(rng, generic_nouns()));
    return recent.back();
  }
};

// ---------------------------------------------------------------------------
// Sentence realization

struct Slot {
  std::string surface;
  std::string pos;
  std::string lemma;
  bool in_quote = false;
};

void push(std::vector<Slot>& out, std::string surface, std::string pos,
          std::string lemma) {
  out.push_back(Slot{std::move(surface), std::move(pos), std::move(lemma)});
}

void push_word(std::vector<Slot>& out, const std::string& lemma,
               const std::string& tag) {
  push(out, inflect(lemma, tag), tag, lemma);
}

/// det + optional attributive adjective + noun.
void push_np(std::vector<Slot>& out, Rng& rng, const std::string& noun_lemma,
             const std::optional<std::string>& adj_lemma) {
  push(out, rng.bernoulli(0.7) ? "the" : "a", "DT", "the");
  if (adj_lemma) push(out, *adj_lemma, "JJ", *adj_lemma);
  const bool plural = rng.bernoulli(0.25);
  push_word(out, noun_lemma, plural ? "NNS" : "NN");
}

struct SentenceDraws {
  int frame;  // 0 transitive, 1 copular, 2 control, 3 raising, 4 nominal
  Tense tense;
  std::optional<int> syn_class;    // class whose syntactic indicator fires
  std::optional<int> cooc_class;   // class whose co-occurrence indicator fires
  bool cooc_is_adj = false;
  bool cooc_in_tail = false;       // host the cooc slot beyond the ±5 window
  int syn_per_class = 1;           // planted prefix of each class pool
  int cooc_per_class = 1;
  bool majority = false;           // majority class draws the full vocabulary
};

/// Planted draws use only the first `n` lemmas of a pool; the rest of the
/// pool stays unused so per-word frequency tracks per_class.
const std::string& pick_planted(Rng& rng, const std::vector<std::string>& pool,
                                int n) {
  const uint64_t k =
      std::min(pool.size(), static_cast<size_t>(std::max(n, 1)));
  return pool[rng.below(k)];
}

/// The subject: a bare plural professional or det+noun phrase.
void realize_subject(std::vector<Slot>& out, Rng& rng, NounBag& bag) {
  if (rng.bernoulli(0.45)) {
    push_word(out, rng.pick(subject_nouns()), "NNS");
    return;
  }
  push(out, "the", "DT", "the");
  if (rng.bernoulli(0.25)) {
    const std::string& adj = zipf_pick(rng, generic_adjs());
    push(out, adj, "JJ", adj);
  }
  push_word(out, bag.draw(rng), "NN");
}

/// Tensed verb group for `lemma` (adds an auxiliary for modal/perfect).
void realize_verb_group(std::vector<Slot>& out, Rng& rng,
                        const std::string& lemma, Tense tense) {
  switch (tense) {
    case Tense::kPast:
      push_word(out, lemma, "VBD");
      break;
    case Tense::kPresent:
      push_word(out, lemma, "VBZ");
      break;
    case Tense::kModal: {
      static const std::vector<std::string> modals = {"will", "would", "may",
                                                      "might", "could"};
      const std::string& m = rng.pick(modals);
      push(out, m, "MD", m);
      if (rng.bernoulli(0.08)) push(out, "not", "RB", "not");
      push_word(out, lemma, "VB");
      break;
    }
    case Tense::kPerfect:
      push_word(out, "have", rng.bernoulli(0.5) ? "VBZ" : "VBD");
      push_word(out, lemma, "VBN");
      break;
  }
}

void realize_pp(std::vector<Slot>& out, Rng& rng,
                const std::string& noun_lemma,
                const std::optional<std::string>& adj_lemma) {
  const std::string& prep = rng.pick(prepositions());
  push(out, prep, "IN", prep);
  push_np(out, rng, noun_lemma, adj_lemma);
}

/// Picks the verb for a syntactic-indicator slot.
std::string syn_verb(Rng& rng, const SentenceDraws& draws) {
  if (draws.syn_class) {
    return pick_planted(rng, class_pools()[*draws.syn_class].verbs,
                        draws.syn_per_class);
  }
  return generic_verb(rng, draws.majority);
}

std::string syn_adj(Rng& rng, const SentenceDraws& draws) {
  if (draws.syn_class) {
    return pick_planted(rng, class_pools()[*draws.syn_class].adjs,
                        draws.syn_per_class);
  }
  return generic_adj(rng, draws.majority);
}

/// Object or trailing-phrase content words, honoring the co-occurrence
/// plant for this sentence.
struct CoocWords {
  std::string noun;
  std::optional<std::string> adj;
};

CoocWords cooc_words(Rng& rng, const SentenceDraws& draws, bool in_tail,
                     NounBag& bag) {
  CoocWords w;
  w.noun = bag.draw(rng);
  if (draws.cooc_class && draws.cooc_in_tail == in_tail) {
    const ClassPools& pools = class_pools()[*draws.cooc_class];
    if (draws.cooc_is_adj) {
      w.adj = pick_planted(rng, pools.cooc_adjs, draws.cooc_per_class);
    } else {
      w.noun = pick_planted(rng, pools.nouns, draws.cooc_per_class);
    }
  }
  return w;
}

std::vector<Slot> realize_frame(Rng& rng, const SentenceDraws& draws,
                                NounBag& bag) {
  std::vector<Slot> out;
  realize_subject(out, rng, bag);
  const CoocWords obj = cooc_words(rng, draws, /*in_tail=*/false, bag);
  switch (draws.frame) {
    case 0: {  // transitive: SUBJ V OBJ
      realize_verb_group(out, rng, syn_verb(rng, draws), draws.tense);
      push_np(out, rng, obj.noun, obj.adj);
      break;
    }
    case 1: {  // copular: SUBJ be/seem [RB] ADJ [PP]
      static const std::vector<std::string> copulas = {"be", "be", "be",
                                                       "seem", "remain"};
      realize_verb_group(out, rng, rng.pick(copulas), draws.tense);
      if (rng.bernoulli(0.3)) push(out, "still", "RB", "still");
      const std::string adj = syn_adj(rng, draws);
      push(out, adj, "JJ", adj);
      realize_pp(out, rng, obj.noun, obj.adj);
      break;
    }
    case 2: {  // control: SUBJ V [NP] to V OBJ
      realize_verb_group(out, rng, rng.pick(control_verbs()), draws.tense);
      if (rng.bernoulli(0.35)) {
        push(out, "the", "DT", "the");
        push_word(out, rng.pick(subject_nouns()), "NN");
      }
      push(out, "to", "TO", "to");
      push_word(out, syn_verb(rng, draws), "VB");
      push_np(out, rng, obj.noun, obj.adj);
      break;
    }
    case 4: {  // nominal fragment: SUBJ RB PP (headline style, no verb)
      static const std::vector<std::string> directions = {"up", "down", "off",
                                                          "ahead", "back"};
      const std::string& dir = rng.pick(directions);
      push(out, dir, "RB", dir);
      realize_pp(out, rng, obj.noun, obj.adj);
      break;
    }
    default: {  // raising: SUBJ seem/appear to be [RB] ADJ [PP]
      static const std::vector<std::string> raisers = {"seem", "appear"};
      realize_verb_group(out, rng, rng.pick(raisers), draws.tense);
      push(out, "to", "TO", "to");
      push(out, "be", "VB", "be");
      if (rng.bernoulli(0.3)) push(out, "quite", "RB", "quite");
      const std::string adj = syn_adj(rng, draws);
      push(out, adj, "JJ", adj);
      realize_pp(out, rng, obj.noun, obj.adj);
      break;
    }
  }
  // Optional trailing phrase; it can host the co-occurrence slot beyond the
  // within-5 window of the main verb.
  if (draws.cooc_in_tail || rng.bernoulli(0.45)) {
    if (rng.bernoulli(0.4)) push(out, "yesterday", "RB", "yesterday");
    const CoocWords tail = cooc_words(rng, draws, /*in_tail=*/true, bag);
    realize_pp(out, rng, tail.noun, tail.adj);
  }
  return out;
}

/// Appends ", according to the <source>".
void append_attribution(std::vector<Slot>& out, Rng& rng) {
  push(out, ",", ",", ",");
  push(out, "according", "IN", "according");
  push(out, "to", "TO", "to");
  push(out, "the", "DT", "the");
  push_word(out, rng.pick(attribution_nouns()), "NN");
}

/// Noun for a slot inside a quoted clause.  Quotes paraphrase the events
/// they comment on, so a slice of these slots names another class's topical
/// vocabulary; without that, a speech-class row pairs a zero training count
/// with every topic word that strays into it and the decoder must abstain.
const std::string& quote_noun(Rng& rng, const SynthParams& params,
                              NounBag& bag) {
  if (rng.bernoulli(params.quote_mention_rate)) {
    const ClassPools& pools = class_pools()[rng.below(kNumClasses)];
    return pick_planted(rng, pools.nouns, params.cooccurrence.per_class);
  }
  return bag.draw(rng);
}

/// Adjective counterpart of quote_noun.
const std::string& quote_adj(Rng& rng, const SynthParams& params) {
  if (rng.bernoulli(params.quote_mention_rate)) {
    const ClassPools& pools = class_pools()[rng.below(kNumClasses)];
    return pick_planted(rng, pools.cooc_adjs, params.cooccurrence.per_class);
  }
  return zipf_pick(rng, generic_adjs());
}

/// Appends a quoted clause sized to land the in-quote token fraction near
/// `fraction`, marking only the inner tokens.
void append_quote(std::vector<Slot>& out, Rng& rng,
                  const SynthParams& params, double fraction, NounBag& bag) {
  const double base = static_cast<double>(out.size());
  int len = static_cast<int>(std::lround(fraction * base / (1.0 - fraction)));
  len = std::clamp(len, 4, 10);
  push(out, ",", ",", ",");
  push(out, "``", "``", "``");
  std::vector<Slot> quote;
  push(quote, "the", "DT", "the");
  push_word(quote, quote_noun(rng, params, bag), "NN");
  const char* vtag = rng.bernoulli(0.5) ? "VBZ" : "VBD";
  if (rng.bernoulli(params.quote_mention_rate)) {
    // Quoted verb names an event instead of the copula; this token sits
    // past the clause's main verb, so only whole-sentence patterns see it.
    const ClassPools& pools = class_pools()[rng.below(kNumClasses)];
    push_word(quote,
              pick_planted(rng, pools.verbs, params.syntactic.per_class),
              vtag);
    push(quote, "the", "DT", "the");
    push_word(quote, quote_noun(rng, params, bag), "NN");
  } else {
    push_word(quote, "be", vtag);
    const std::string& adj = quote_adj(rng, params);
    push(quote, adj, "JJ", adj);
  }
  while (static_cast<int>(quote.size()) < len) {
    const std::string& prep = rng.pick(prepositions());
    push(quote, prep, "IN", prep);
    push(quote, "the", "DT", "the");
    push_word(quote, quote_noun(rng, params, bag), "NN");
  }
  if (static_cast<int>(quote.size()) > len) quote.resize(len);
  for (Slot& s : quote) s.in_quote = true;
  out.insert(out.end(), quote.begin(), quote.end());
  push(out, "''", "''", "''");
}

/// Forces the in-quote token fraction into (lo, hi] on the fully assembled
/// sentence: grows the quote before its closing mark when too low, pads
/// unquoted material before the final period when too high.
void enforce_quote_band(std::vector<Slot>& out, Rng& rng,
                        const SynthParams& params, double lo, double hi,
                        NounBag& bag) {
  auto ratio = [&out]() {
    int q = 0;
    for (const Slot& s : out) q += s.in_quote ? 1 : 0;
    return static_cast<double>(q) / static_cast<double>(out.size());
  };
  auto closing = [&out]() {
    for (size_t i = out.size(); i > 0; --i) {
      if (out[i - 1].pos == "''") return out.begin() + (i - 1);
    }
    throw InternalError("quote band fixer: no closing mark");
  };
  int guard = 0;
  while (ratio() < lo && guard++ < 24) {
    const std::string& noun = quote_noun(rng, params, bag);
    out.insert(closing(), Slot{inflect(noun, "NN"), "NN", noun, true});
  }
  while (ratio() > hi && guard++ < 24) {
    const std::string& prep = rng.pick(prepositions());
    std::vector<Slot> pad;
    push(pad, prep, "IN", prep);
    push(pad, "the", "DT", "the");
    push_word(pad, bag.draw(rng), "NN");
    out.insert(out.end() - 1, pad.begin(), pad.end());
  }
}

Sentence realize_sentence(Rng& rng, int label, const SynthParams& params,
                          const std::array<double, kNumClasses>& syn_cross,
                          const std::array<double, kNumClasses>& cooc_cross,
                          NounBag& bag) {
  SentenceDraws draws;
  draws.majority = class_from_index(label) == ClassLabel::kOtherEvent;
  draws.syn_class = draw_plant(rng, label, params.syntactic, syn_cross);
  draws.cooc_class = draw_plant(rng, label, params.cooccurrence, cooc_cross);
  // Event reporting leans transitive and often verbless (headline-style
  // fragments); the attitude and speech classes use copular, control, and
  // raising frames more.  Together with the head-limited generic draws this
  // keeps frame verbs and open-class fillers under a 0.5 majority ratio, so
  // none of them can pass a per-class ratio test for the majority class.
  const double frame_u = rng.unit();
  if (draws.majority) {
    if (!draws.syn_class && frame_u < 0.40) {
      draws.frame = 4;
    } else {
      const double v = rng.unit();
      draws.frame = v < 0.67 ? 0 : v < 0.77 ? 1 : v < 0.92 ? 2 : 3;
    }
  } else {
    draws.frame =
        frame_u < 0.45 ? 0 : frame_u < 0.65 ? 1 : frame_u < 0.85 ? 2 : 3;
  }
  const double tense_u = rng.unit();
  draws.tense = tense_u < 0.45   ? Tense::kPast
                : tense_u < 0.75 ? Tense::kPresent
                : tense_u < 0.90 ? Tense::kModal
                                 : Tense::kPerfect;
  draws.cooc_is_adj = rng.bernoulli(0.5);
  draws.cooc_in_tail = rng.bernoulli(0.35);
  draws.syn_per_class = params.syntactic.per_class;
  draws.cooc_per_class = params.cooccurrence.per_class;

  std::vector<Slot> slots = realize_frame(rng, draws, bag);

  const ClassLabel cl = class_from_index(label);
  if (cl == ClassLabel::kSpeech1Direct) {
    append_quote(slots, rng, params, params.direct_quote_fraction, bag);
  } else if (cl == ClassLabel::kSpeech2Mixed) {
    append_quote(slots, rng, params, params.mixed_quote_fraction, bag);
  }
  const double attribution_rate = cl == ClassLabel::kSpeech3Other
                                      ? params.according_to_rate
                                      : params.according_to_noise;
  if (rng.bernoulli(attribution_rate)) append_attribution(slots, rng);
  push(slots, ".", ".", ".");
  // The quote-ratio bands are what separate the two quoting classes, so
  // they are enforced on the final token count (with margin to spare).
  if (cl == ClassLabel::kSpeech1Direct) {
    enforce_quote_band(slots, rng, params, 0.32, 1.0, bag);
  } else if (cl == ClassLabel::kSpeech2Mixed) {
    enforce_quote_band(slots, rng, params, 0.12, 0.28, bag);
  }

  Sentence s;
  s.gold_class = cl;
  s.tokens.reserve(slots.size());
  for (Slot& slot : slots) {
    Token t;
    t.surface = std::move(slot.surface);
    t.pos = std::move(slot.pos);
    t.lemma = std::move(slot.lemma);
    t.in_quote = slot.in_quote;
    s.tokens.push_back(std::move(t));
  }
  return s;
}

/// Class totals by largest remainder, so the empirical distribution is as
/// close to the target as integer counts allow.
std::array<int, kNumClasses> class_quotas(const SynthParams& params) {
  std::array<int, kNumClasses> quota{};
  std::array<double, kNumClasses> remainder{};
  int assigned = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    const double exact = params.class_distribution[c] * params.num_sentences;
    quota[c] = static_cast<int>(exact);
    remainder[c] = exact - quota[c];
    assigned += quota[c];
  }
  while (assigned < params.num_sentences) {
    int best = 0;
    for (int c = 1; c < kNumClasses; ++c) {
      if (remainder[c] > remainder[best]) best = c;
    }
    ++quota[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  return quota;
}

int weighted_class(Rng& rng, const std::array<int, kNumClasses>& remaining) {
  std::array<double, kNumClasses> weights;
  for (int c = 0; c < kNumClasses; ++c) {
    weights[c] = static_cast<double>(remaining[c]);
  }
  return static_cast<int>(rng.weighted(weights));
}

}  // namespace

// ---------------------------------------------------------------------------

void validate_params(const SynthParams& params) {
  if (params.num_sentences < 1) {
    throw ConfigError("num_sentences must be positive");
  }
  double sum = 0.0;
  for (double p : params.class_distribution) {
    if (p < 0.0) throw ConfigError("class probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("class distribution must sum to 1");
  }
  if (params.min_doc_sentences < 1 ||
      params.min_doc_sentences > params.max_doc_sentences) {
    throw ConfigError("document length bounds must satisfy 1 <= min <= max");
  }
  if (params.min_paragraph_sentences < 1 ||
      params.min_paragraph_sentences > params.max_paragraph_sentences) {
    throw ConfigError("paragraph length bounds must satisfy 1 <= min <= max");
  }
  if (params.paragraph_clustering < 0.0 || params.paragraph_clustering > 1.0) {
    throw ConfigError("paragraph_clustering must be in [0,1]");
  }
  if (params.noun_burstiness < 0.0 || params.noun_burstiness >= 1.0) {
    throw ConfigError("noun_burstiness must be in [0,1)");
  }
  if (params.quote_mention_rate < 0.0 || params.quote_mention_rate >= 1.0) {
    throw ConfigError("quote_mention_rate must be in [0,1)");
  }
  for (const IndicatorSpec* spec :
       {&params.syntactic, &params.cooccurrence}) {
    if (spec->per_class < 1 || spec->per_class > 12) {
      throw ConfigError("per_class must be in [1,12]");
    }
    if (!(spec->fire_rate > 0.0 && spec->fire_rate < 1.0)) {
      throw ConfigError("fire_rate must be in (0,1)");
    }
    if (!(spec->purity > 0.0 && spec->purity <= 1.0)) {
      throw ConfigError("purity must be in (0,1]");
    }
    if (!(spec->majority_scale > 0.0 && spec->majority_scale <= 1.0)) {
      throw ConfigError("majority_scale must be in (0,1]");
    }
  }
  if (!(params.direct_quote_fraction > 0.0 &&
        params.direct_quote_fraction < 1.0) ||
      !(params.mixed_quote_fraction > 0.0 &&
        params.mixed_quote_fraction < 1.0)) {
    throw ConfigError("quote fractions must be in (0,1)");
  }
  if (params.according_to_rate < 0.0 || params.according_to_rate >= 1.0 ||
      params.according_to_noise < 0.0 || params.according_to_noise >= 1.0) {
    throw ConfigError("attribution rates must be in [0,1)");
  }
  // The per-sentence plant budget: own fire rate plus every other class's
  // cross rate must leave room for the generic draw.
  for (const IndicatorSpec* spec :
       {&params.syntactic, &params.cooccurrence}) {
    const auto cross = cross_rates(params, *spec);
    for (int d = 0; d < kNumClasses; ++d) {
      double mass =
          spec->fire_rate *
          (class_from_index(d) == ClassLabel::kOtherEvent
               ? spec->majority_scale
               : 1.0);
      for (int c = 0; c < kNumClasses; ++c) {
        if (c != d) mass += cross[c];
      }
      if (mass > 0.98) {
        throw ConfigError(
            "infeasible indicators: purity target demands more cross-class "
            "plants than a sentence can host");
      }
    }
  }
}

Corpus generate_synthetic(const SynthParams& params) {
  validate_params(params);
  check_pools();
  Rng rng(params.seed);
  const auto syn_cross = cross_rates(params, params.syntactic);
  const auto cooc_cross = cross_rates(params, params.cooccurrence);

  std::array<int, kNumClasses> remaining = class_quotas(params);
  int left = params.num_sentences;

  Corpus corpus;
  int doc_number = 0;
  while (left > 0) {
    Document doc;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "synth-%04d", doc_number++);
    doc.doc_id = buf;
    int doc_len = static_cast<int>(
        rng.range(params.min_doc_sentences, params.max_doc_sentences));
    doc_len = std::min(doc_len, left);
    int produced = 0;
    while (produced < doc_len) {
      int para_len = static_cast<int>(rng.range(
          params.min_paragraph_sentences, params.max_paragraph_sentences));
      para_len = std::min(para_len, doc_len - produced);
      const int topic = weighted_class(rng, remaining);
      // Paragraph-scoped bursts: repeats land inside one topic cluster, so
      // a tail noun's few occurrences tend to share a class.
      NounBag bag{params.noun_burstiness, {}};
      for (int i = 0; i < para_len; ++i) {
        int label;
        if (remaining[topic] > 0 &&
            rng.bernoulli(params.paragraph_clustering)) {
          label = topic;
        } else {
          label = weighted_class(rng, remaining);
        }
        --remaining[label];
        Sentence s = realize_sentence(rng, label, params, syn_cross,
                                      cooc_cross, bag);
        s.doc_id = doc.doc_id;
        s.sent_index = static_cast<int>(doc.sentences.size());
        s.paragraph_start = i == 0;
        doc.sentences.push_back(std::move(s));
        ++produced;
      }
    }
    left -= produced;
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

std::vector<std::string> planted_lemmas(const SynthParams& params,
                                        ClassLabel label,
                                        PatternFamily family) {
  const ClassPools& pools = class_pools()[class_index(label)];
  std::vector<std::string> out;
  auto take = [&out](const std::vector<std::string>& pool, int n) {
    for (int i = 0; i < n && i < static_cast<int>(pool.size()); ++i) {
      out.push_back(pool[i]);
    }
  };
  switch (family) {
    case PatternFamily::kSyntactic:
      take(pools.verbs, params.syntactic.per_class);
      take(pools.adjs, params.syntactic.per_class);
      break;
    case PatternFamily::kCooccurrence:
    case PatternFamily::kWithin5:
      take(pools.nouns, params.cooccurrence.per_class);
      take(pools.cooc_adjs, params.cooccurrence.per_class);
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Params serialization

std::string params_to_json(const SynthParams& params) {
  ordered_json j;
  j["format"] = "evcat-synth-params";
  j["version"] = 1;
  j["num_sentences"] = params.num_sentences;
  j["seed"] = params.seed;
  ordered_json dist;
  for (int c = 0; c < kNumClasses; ++c) {
    dist[std::string(to_string(class_from_index(c)))] =
        params.class_distribution[c];
  }
  j["class_distribution"] = dist;
  j["document_sentences"] = {params.min_doc_sentences,
                             params.max_doc_sentences};
  j["paragraph_sentences"] = {params.min_paragraph_sentences,
                              params.max_paragraph_sentences};
  j["paragraph_clustering"] = params.paragraph_clustering;
  auto spec_json = [](const IndicatorSpec& spec) {
    ordered_json s;
    s["per_class"] = spec.per_class;
    s["fire_rate"] = spec.fire_rate;
    s["purity"] = spec.purity;
    s["majority_scale"] = spec.majority_scale;
    return s;
  };
  j["syntactic_indicators"] = spec_json(params.syntactic);
  j["cooccurrence_indicators"] = spec_json(params.cooccurrence);
  j["noun_burstiness"] = params.noun_burstiness;
  j["quote_mention_rate"] = params.quote_mention_rate;
  j["direct_quote_fraction"] = params.direct_quote_fraction;
  j["mixed_quote_fraction"] = params.mixed_quote_fraction;
  j["according_to_rate"] = params.according_to_rate;
  j["according_to_noise"] = params.according_to_noise;
  return j.dump(2) + "\n";
}

SynthParams params_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed params JSON: ") + e.what());
  }
  static const std::set<std::string> known = {
      "format",        "version",
      "num_sentences", "seed",
      "class_distribution", "document_sentences",
      "paragraph_sentences", "paragraph_clustering",
      "syntactic_indicators", "cooccurrence_indicators",
      "noun_burstiness", "quote_mention_rate",
      "direct_quote_fraction", "mixed_quote_fraction",
      "according_to_rate", "according_to_noise"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown params key: " + key);
  }
  SynthParams params;
  try {
    if (j.contains("format") &&
        j.at("format").get<std::string>() != "evcat-synth-params") {
      throw ConfigError("not a synth params file");
    }
    if (j.contains("version") && j.at("version").get<int>() != 1) {
      throw ConfigError("unsupported params version");
    }
    if (j.contains("num_sentences")) {
      params.num_sentences = j.at("num_sentences").get<int>();
    }
    if (j.contains("seed")) params.seed = j.at("seed").get<uint64_t>();
    if (j.contains("class_distribution")) {
      for (const auto& [name, value] :
           j.at("class_distribution").items()) {
        const auto label = parse_class_label(name);
        if (!label) throw ConfigError("unknown class label: " + name);
        params.class_distribution[class_index(*label)] = value.get<double>();
      }
    }
    auto read_pair = [&j](const char* key, int& lo, int& hi) {
      if (!j.contains(key)) return;
      const auto& arr = j.at(key);
      if (!arr.is_array() || arr.size() != 2) {
        throw ConfigError(std::string(key) + " must be [min, max]");
      }
      lo = arr[0].get<int>();
      hi = arr[1].get<int>();
    };
    read_pair("document_sentences", params.min_doc_sentences,
              params.max_doc_sentences);
    read_pair("paragraph_sentences", params.min_paragraph_sentences,
              params.max_paragraph_sentences);
    if (j.contains("paragraph_clustering")) {
      params.paragraph_clustering = j.at("paragraph_clustering").get<double>();
    }
    auto read_spec = [&j](const char* key, IndicatorSpec& spec) {
      if (!j.contains(key)) return;
      const auto& s = j.at(key);
      static const std::set<std::string> spec_known = {
          "per_class", "fire_rate", "purity", "majority_scale"};
      for (const auto& [k, v] : s.items()) {
        if (!spec_known.count(k)) {
          throw ConfigError("unknown indicator key: " + k);
        }
      }
      if (s.contains("per_class")) spec.per_class = s.at("per_class").get<int>();
      if (s.contains("fire_rate")) {
        spec.fire_rate = s.at("fire_rate").get<double>();
      }
      if (s.contains("purity")) spec.purity = s.at("purity").get<double>();
      if (s.contains("majority_scale")) {
        spec.majority_scale = s.at("majority_scale").get<double>();
      }
    };
    read_spec("syntactic_indicators", params.syntactic);
    read_spec("cooccurrence_indicators", params.cooccurrence);
    if (j.contains("noun_burstiness")) {
      params.noun_burstiness = j.at("noun_burstiness").get<double>();
    }
    if (j.contains("quote_mention_rate")) {
      params.quote_mention_rate = j.at("quote_mention_rate").get<double>();
    }
    if (j.contains("direct_quote_fraction")) {
      params.direct_quote_fraction =
          j.at("direct_quote_fraction").get<double>();
    }
    if (j.contains("mixed_quote_fraction")) {
      params.mixed_quote_fraction = j.at("mixed_quote_fraction").get<double>();
    }
    if (j.contains("according_to_rate")) {
      params.according_to_rate = j.at("according_to_rate").get<double>();
    }
    if (j.contains("according_to_noise")) {
      params.according_to_noise = j.at("according_to_noise").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad params value: ") + e.what());
  }
  validate_params(params);
  return params;
}

SynthParams read_params_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str());
}

void write_params_file(const SynthParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << params_to_json(params);
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace evcat
