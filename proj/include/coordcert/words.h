// Copyright 2026 The coordcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COORDCERT_WORDS_H
#define COORDCERT_WORDS_H

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace coordcert {

/// A projector letter: party index (0 = A) and outcome.
struct Letter {
    int party = 0;
    int outcome = 0;

    auto operator<=>(const Letter &) const = default;
};

using Word = std::vector<Letter>;

/// Which distinct parties commute. Letters of the same party never commute
/// as symbols; they merge or annihilate instead.
struct Compatibility {
    std::set<std::pair<int, int>> incompatible;

    bool commute(int p, int q) const;
};

/// The inflation's relation: everything commutes except (A, C) and (B, D).
Compatibility inflation_compatibility();

/// Normal form of a product of projectors: idempotence and orthogonality are
/// applied to same-party letters that can be brought next to each other by
/// commutations, then the lexicographically smallest rearrangement is
/// returned. nullopt denotes the zero operator.
std::optional<Word> canonical_word(const Word &word, const Compatibility &compatibility);

Word reversed(const Word &word);
Word concat(const Word &a, const Word &b);

/// "A0 B0", or "1" for the empty word.
std::string to_string(const Word &word);
Word parse_word(const std::string &text);

/// Distinct canonical nonzero words of length <= level over the given letters,
/// sorted by (length, lexicographic). The empty word comes first.
std::vector<Word> word_index(const std::vector<Letter> &letters, int level, const Compatibility &compatibility);

}  // namespace coordcert

#endif
