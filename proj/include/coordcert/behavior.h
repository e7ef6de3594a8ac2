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

#ifndef COORDCERT_BEHAVIOR_H
#define COORDCERT_BEHAVIOR_H

#include <span>
#include <string>
#include <vector>

namespace coordcert {

/// Joint outcome distribution of a set of measurement nodes. Probabilities
/// are stored row-major with the first party's outcome most significant.
class Behavior {
   public:
    Behavior() = default;
    Behavior(std::vector<std::string> parties, std::vector<int> arities, std::vector<double> probabilities);

    const std::vector<std::string> &parties() const {
        return parties_;
    }
    const std::vector<int> &arities() const {
        return arities_;
    }
    const std::vector<double> &probabilities() const {
        return probabilities_;
    }

    size_t size() const {
        return probabilities_.size();
    }
    size_t index_of(std::span<const int> outcomes) const;
    std::vector<int> outcomes_of(size_t index) const;
    double operator()(std::span<const int> outcomes) const;
    double at(std::initializer_list<int> outcomes) const;

    double total() const;
    bool is_binary() const;
    int party_index(const std::string &party) const;

    /// Throws ValidationError if an entry is below -1e-12 or the total is off
    /// by more than `tol`.
    void check(double tol = 1e-10) const;

    Behavior marginal(const std::vector<std::string> &keep) const;

    /// sum_o P(o) * prod_{k in subset} (-1)^{o_k}. Requires binary outcomes on
    /// the selected parties.
    double correlator(const std::vector<std::string> &subset) const;

    /// Convex combination w*this + (1-w)*other (same parties and arities).
    Behavior mix(const Behavior &other, double w) const;

    bool operator==(const Behavior &other) const = default;

   private:
    std::vector<std::string> parties_;
    std::vector<int> arities_;
    std::vector<double> probabilities_;
};

/// P = 1/2 on a=b=c=d=0 and on a=b=c=d=1.
Behavior shared_random_bit(const std::vector<std::string> &parties = {"A", "B", "C", "D"});
/// P(0...0) = 1.
Behavior deterministic_zero(const std::vector<std::string> &parties = {"A", "B", "C", "D"});
/// Uniform over all binary outcome tuples.
Behavior uniform_binary(const std::vector<std::string> &parties = {"A", "B", "C", "D"});

struct Correlators {
    double a = 0, b = 0, c = 0, d = 0;
    double ab = 0, ac = 0, ad = 0, bc = 0, bd = 0, cd = 0;
};

/// One- and two-body correlators of a binary four-party behavior, with
/// <X> = p(x=0) - p(x=1) and <XY> = p(x=y) - p(x!=y). Parties are taken in
/// stored order as A, B, C, D.
Correlators correlators(const Behavior &behavior);

/// |P(0000)-1/2| <= tol, |P(1111)-1/2| <= tol and every other entry <= tol.
bool is_perfect_coordination(const Behavior &behavior, double tol);

/// Behaviors indexed by a setting per party. Setting tuples are stored
/// row-major, first party most significant, just like outcomes.
class SettingsBehavior {
   public:
    SettingsBehavior() = default;
    SettingsBehavior(std::vector<std::string> parties, std::vector<int> setting_arities, std::vector<Behavior> table);

    const std::vector<std::string> &parties() const {
        return parties_;
    }
    const std::vector<int> &setting_arities() const {
        return setting_arities_;
    }
    const std::vector<Behavior> &table() const {
        return table_;
    }

    size_t index_of(std::span<const int> settings) const;
    std::vector<int> settings_of(size_t index) const;
    const Behavior &at(std::span<const int> settings) const;
    const Behavior &at(std::initializer_list<int> settings) const;

    /// Largest change of any party-subset marginal when only the settings
    /// of parties outside that subset change.
    double signaling_violation() const;

    bool operator==(const SettingsBehavior &other) const = default;

   private:
    std::vector<std::string> parties_;
    std::vector<int> setting_arities_;
    std::vector<Behavior> table_;
};

}  // namespace coordcert

#endif
