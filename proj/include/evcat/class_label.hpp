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

#ifndef EVCAT_CLASS_LABEL_HPP_
#define EVCAT_CLASS_LABEL_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace evcat {

/// The six event categories a main clause can be annotated with.  The
/// declaration order is the canonical label order used for deterministic
/// tie-breaking throughout.
enum class ClassLabel : int {
  kPrivateState = 0,
  kSpeech1Direct = 1,
  kSpeech2Mixed = 2,
  kSpeech3Other = 3,
  kBorderlinePsOther = 4,
  kOtherEvent = 5,
};

inline constexpr int kNumClasses = 6;

constexpr std::array<ClassLabel, kNumClasses> all_class_labels() {
  return {ClassLabel::kPrivateState,      ClassLabel::kSpeech1Direct,
          ClassLabel::kSpeech2Mixed,      ClassLabel::kSpeech3Other,
          ClassLabel::kBorderlinePsOther, ClassLabel::kOtherEvent};
}

constexpr std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::kPrivateState: return "private-state";
    case ClassLabel::kSpeech1Direct: return "speech-1-direct";
    case ClassLabel::kSpeech2Mixed: return "speech-2-mixed";
    case ClassLabel::kSpeech3Other: return "speech-3-other";
    case ClassLabel::kBorderlinePsOther: return "borderline-ps-other";
    case ClassLabel::kOtherEvent: return "other-event";
  }
  return "?";
}

constexpr std::optional<ClassLabel> parse_class_label(std::string_view s) {
  for (ClassLabel label : all_class_labels()) {
    if (to_string(label) == s) return label;
  }
  return std::nullopt;
}

constexpr int class_index(ClassLabel label) { return static_cast<int>(label); }

constexpr ClassLabel class_from_index(int index) {
  return all_class_labels()[static_cast<size_t>(index)];
}

/// Whether a label counts toward the "private-state or speech" paragraph
/// proportion.  Borderline-ps-other is its own category and is excluded.
constexpr bool is_ps_or_speech(ClassLabel label) {
  return label == ClassLabel::kPrivateState ||
         label == ClassLabel::kSpeech1Direct ||
         label == ClassLabel::kSpeech2Mixed ||
         label == ClassLabel::kSpeech3Other;
}

}  // namespace evcat

#endif  // EVCAT_CLASS_LABEL_HPP_
