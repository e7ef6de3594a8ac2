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

#include "coordcert/words.h"

#include <algorithm>
#include <sstream>

#include "coordcert/errors.h"

namespace coordcert {

bool Compatibility::commute(int p, int q) const {
    if (p == q) {
        return false;
    }
    return incompatible.count(std::minmax(p, q)) == 0;
}

Compatibility inflation_compatibility() {
    return Compatibility{{{0, 2}, {1, 3}}};
}

namespace {

/// reach[i][k]: letter i must stay before letter k in every rearrangement.
std::vector<std::vector<bool>> precedence(const Word &w, const Compatibility &comp) {
    const size_t n = w.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (size_t k = 0; k < n; ++k) {
        for (size_t i = k; i-- > 0;) {
            if (reach[i][k]) {
                continue;
            }
            if (!comp.commute(w[i].party, w[k].party)) {
                reach[i][k] = true;
                for (size_t h = 0; h < i; ++h) {
                    if (reach[h][i]) {
                        reach[h][k] = true;
                    }
                }
            }
        }
    }
    return reach;
}

}  // namespace

std::optional<Word> canonical_word(const Word &word, const Compatibility &compatibility) {
    Word w = word;
    bool changed = true;
    while (changed) {
        changed = false;
        const auto reach = precedence(w, compatibility);
        for (size_t i = 0; i < w.size() && !changed; ++i) {
            for (size_t j = i + 1; j < w.size() && !changed; ++j) {
                if (w[i].party != w[j].party) {
                    continue;
                }
                bool blocked = false;
                for (size_t z = i + 1; z < j && !blocked; ++z) {
                    blocked = reach[i][z] && reach[z][j];
                }
                if (blocked) {
                    continue;
                }
                if (w[i].outcome != w[j].outcome) {
                    return std::nullopt;
                }
                w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
            }
        }
    }
    // Greedy smallest available letter gives the lexicographic normal form.
    const auto reach = precedence(w, compatibility);
    std::vector<bool> used(w.size(), false);
    Word out;
    for (size_t step = 0; step < w.size(); ++step) {
        size_t best = w.size();
        for (size_t k = 0; k < w.size(); ++k) {
            if (used[k]) {
                continue;
            }
            bool ready = true;
            for (size_t i = 0; i < k && ready; ++i) {
                ready = used[i] || !reach[i][k];
            }
            if (ready && (best == w.size() || w[k] < w[best])) {
                best = k;
            }
        }
        used[best] = true;
        out.push_back(w[best]);
    }
    return out;
}

Word reversed(const Word &word) {
    return Word(word.rbegin(), word.rend());
}

Word concat(const Word &a, const Word &b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string to_string(const Word &word) {
    if (word.empty()) {
        return "1";
    }
    std::ostringstream os;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) {
            os << ' ';
        }
        os << static_cast<char>('A' + word[i].party) << word[i].outcome;
    }
    return os.str();
}

Word parse_word(const std::string &text) {
    Word w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "1") {
            continue;
        }
        if (tok.size() < 2 || tok[0] < 'A' || tok[0] > 'Z' ||
            !std::all_of(tok.begin() + 1, tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw ValidationError("bad letter '" + tok + "'; expected a party letter and an outcome like A0");
        }
        w.push_back({tok[0] - 'A', std::stoi(tok.substr(1))});
    }
    return w;
}

std::vector<Word> word_index(const std::vector<Letter> &letters, int level, const Compatibility &compatibility) {
    if (level < 0) {
        throw ValidationError("level must be non-negative");
    }
    std::set<Word> seen{Word{}};
    std::vector<Word> frontier{Word{}};
    for (int len = 1; len <= level; ++len) {
        std::vector<Word> next;
        for (const Word &w : frontier) {
            for (const Letter &l : letters) {
                const auto c = canonical_word(concat(w, {l}), compatibility);
                if (c && seen.insert(*c).second) {
                    next.push_back(*c);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Word> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [](const Word &a, const Word &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

}  // namespace coordcert
