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

#include "coordcert/behavior.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "coordcert/errors.h"

namespace coordcert {

Behavior::Behavior(std::vector<std::string> parties, std::vector<int> arities, std::vector<double> probabilities)
    : parties_(std::move(parties)), arities_(std::move(arities)), probabilities_(std::move(probabilities)) {
    if (parties_.size() != arities_.size()) {
        throw ValidationError("behavior needs one arity per party");
    }
    size_t n = 1;
    for (int a : arities_) {
        if (a < 1) {
            throw ValidationError("outcome arity must be positive");
        }
        n *= static_cast<size_t>(a);
    }
    if (probabilities_.size() != n) {
        throw ValidationError("behavior has " + std::to_string(probabilities_.size()) + " entries, expected " +
                              std::to_string(n));
    }
}

size_t Behavior::index_of(std::span<const int> outcomes) const {
    if (outcomes.size() != arities_.size()) {
        throw ValidationError("outcome tuple has the wrong length");
    }
    size_t idx = 0;
    for (size_t k = 0; k < arities_.size(); ++k) {
        if (outcomes[k] < 0 || outcomes[k] >= arities_[k]) {
            throw ValidationError("outcome out of range for party " + parties_[k]);
        }
        idx = idx * static_cast<size_t>(arities_[k]) + static_cast<size_t>(outcomes[k]);
    }
    return idx;
}

std::vector<int> Behavior::outcomes_of(size_t index) const {
    std::vector<int> out(arities_.size());
    for (size_t k = arities_.size(); k-- > 0;) {
        out[k] = static_cast<int>(index % static_cast<size_t>(arities_[k]));
        index /= static_cast<size_t>(arities_[k]);
    }
    return out;
}

double Behavior::operator()(std::span<const int> outcomes) const {
    return probabilities_[index_of(outcomes)];
}

double Behavior::at(std::initializer_list<int> outcomes) const {
    return (*this)(std::span<const int>(outcomes.begin(), outcomes.size()));
}

double Behavior::total() const {
    double t = 0;
    for (double p : probabilities_) {
        t += p;
    }
    return t;
}

bool Behavior::is_binary() const {
    return std::all_of(arities_.begin(), arities_.end(), [](int a) { return a == 2; });
}

int Behavior::party_index(const std::string &party) const {
    for (size_t k = 0; k < parties_.size(); ++k) {
        if (parties_[k] == party) {
            return static_cast<int>(k);
        }
    }
    throw ValidationError("behavior has no party '" + party + "'");
}

void Behavior::check(double tol) const {
    for (size_t i = 0; i < probabilities_.size(); ++i) {
        if (!std::isfinite(probabilities_[i]) || probabilities_[i] < -1e-12) {
            throw ValidationError("behavior entry " + std::to_string(i) + " is negative or not finite");
        }
    }
    if (std::abs(total() - 1.0) > tol) {
        throw ValidationError("behavior does not sum to one");
    }
}

Behavior Behavior::marginal(const std::vector<std::string> &keep) const {
    std::vector<int> idx;
    std::vector<int> ar;
    for (const auto &p : keep) {
        idx.push_back(party_index(p));
        ar.push_back(arities_[idx.back()]);
    }
    size_t n = 1;
    for (int a : ar) {
        n *= static_cast<size_t>(a);
    }
    std::vector<double> probs(n, 0.0);
    for (size_t i = 0; i < probabilities_.size(); ++i) {
        const auto o = outcomes_of(i);
        size_t j = 0;
        for (size_t k = 0; k < idx.size(); ++k) {
            j = j * static_cast<size_t>(ar[k]) + static_cast<size_t>(o[idx[k]]);
        }
        probs[j] += probabilities_[i];
    }
    return Behavior(keep, ar, probs);
}

double Behavior::correlator(const std::vector<std::string> &subset) const {
    std::vector<int> idx;
    for (const auto &p : subset) {
        idx.push_back(party_index(p));
        if (arities_[idx.back()] != 2) {
            throw ValidationError("correlator needs binary outcomes for party " + p);
        }
    }
    double c = 0;
    for (size_t i = 0; i < probabilities_.size(); ++i) {
        const auto o = outcomes_of(i);
        int parity = 0;
        for (int k : idx) {
            parity ^= o[k];
        }
        c += parity ? -probabilities_[i] : probabilities_[i];
    }
    return c;
}

Behavior Behavior::mix(const Behavior &other, double w) const {
    if (parties_ != other.parties_ || arities_ != other.arities_) {
        throw ValidationError("cannot mix behaviors over different parties");
    }
    std::vector<double> probs(probabilities_.size());
    for (size_t i = 0; i < probs.size(); ++i) {
        probs[i] = w * probabilities_[i] + (1.0 - w) * other.probabilities_[i];
    }
    return Behavior(parties_, arities_, probs);
}

namespace {

Behavior binary_table(const std::vector<std::string> &parties) {
    return Behavior(parties, std::vector<int>(parties.size(), 2), std::vector<double>(size_t{1} << parties.size(), 0.0));
}

}  // namespace

Behavior shared_random_bit(const std::vector<std::string> &parties) {
    auto b = binary_table(parties);
    std::vector<double> p = b.probabilities();
    p.front() = 0.5;
    p.back() = 0.5;
    return Behavior(parties, b.arities(), p);
}

Behavior deterministic_zero(const std::vector<std::string> &parties) {
    auto b = binary_table(parties);
    std::vector<double> p = b.probabilities();
    p.front() = 1.0;
    return Behavior(parties, b.arities(), p);
}

Behavior uniform_binary(const std::vector<std::string> &parties) {
    auto b = binary_table(parties);
    const double u = 1.0 / static_cast<double>(b.size());
    return Behavior(parties, b.arities(), std::vector<double>(b.size(), u));
}

Correlators correlators(const Behavior &behavior) {
    if (!behavior.is_binary()) {
        throw ValidationError("correlators need binary outcomes");
    }
    const auto &ps = behavior.parties();
    if (ps.size() != 4) {
        throw ValidationError("correlators need exactly four parties");
    }
    Correlators c;
    c.a = behavior.correlator({ps[0]});
    c.b = behavior.correlator({ps[1]});
    c.c = behavior.correlator({ps[2]});
    c.d = behavior.correlator({ps[3]});
    c.ab = behavior.correlator({ps[0], ps[1]});
    c.ac = behavior.correlator({ps[0], ps[2]});
    c.ad = behavior.correlator({ps[0], ps[3]});
    c.bc = behavior.correlator({ps[1], ps[2]});
    c.bd = behavior.correlator({ps[1], ps[3]});
    c.cd = behavior.correlator({ps[2], ps[3]});
    return c;
}

bool is_perfect_coordination(const Behavior &behavior, double tol) {
    if (!behavior.is_binary()) {
        throw ValidationError("perfect coordination is defined for binary outcomes");
    }
    const auto &p = behavior.probabilities();
    for (size_t i = 0; i < p.size(); ++i) {
        const bool extreme = i == 0 || i + 1 == p.size();
        const double target = extreme ? 0.5 : 0.0;
        if (std::abs(p[i] - target) > tol) {
            return false;
        }
    }
    return true;
}

SettingsBehavior::SettingsBehavior(std::vector<std::string> parties, std::vector<int> setting_arities,
                                   std::vector<Behavior> table)
    : parties_(std::move(parties)), setting_arities_(std::move(setting_arities)), table_(std::move(table)) {
    if (parties_.size() != setting_arities_.size()) {
        throw ValidationError("settings behavior needs one setting arity per party");
    }
    size_t n = 1;
    for (int a : setting_arities_) {
        if (a < 1) {
            throw ValidationError("setting arity must be positive");
        }
        n *= static_cast<size_t>(a);
    }
    if (table_.size() != n) {
        throw ValidationError("settings behavior has the wrong number of entries");
    }
    for (const auto &b : table_) {
        if (b.parties() != parties_) {
            throw ValidationError("settings behavior entries must share the party list");
        }
    }
}

size_t SettingsBehavior::index_of(std::span<const int> settings) const {
    if (settings.size() != setting_arities_.size()) {
        throw ValidationError("setting tuple has the wrong length");
    }
    size_t idx = 0;
    for (size_t k = 0; k < settings.size(); ++k) {
        if (settings[k] < 0 || settings[k] >= setting_arities_[k]) {
            throw ValidationError("missing setting " + std::to_string(settings[k]) + " for party " + parties_[k]);
        }
        idx = idx * static_cast<size_t>(setting_arities_[k]) + static_cast<size_t>(settings[k]);
    }
    return idx;
}

std::vector<int> SettingsBehavior::settings_of(size_t index) const {
    std::vector<int> out(setting_arities_.size());
    for (size_t k = setting_arities_.size(); k-- > 0;) {
        out[k] = static_cast<int>(index % static_cast<size_t>(setting_arities_[k]));
        index /= static_cast<size_t>(setting_arities_[k]);
    }
    return out;
}

const Behavior &SettingsBehavior::at(std::span<const int> settings) const {
    return table_[index_of(settings)];
}

const Behavior &SettingsBehavior::at(std::initializer_list<int> settings) const {
    return at(std::span<const int>(settings.begin(), settings.size()));
}

double SettingsBehavior::signaling_violation() const {
    const size_t n = parties_.size();
    double worst = 0;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<std::string> keep;
        for (size_t k = 0; k < n; ++k) {
            if (mask & (1u << k)) {
                keep.push_back(parties_[k]);
            }
        }
        // Group entries by the settings of the kept parties.
        std::map<std::vector<int>, std::vector<double>> first;
        for (size_t i = 0; i < table_.size(); ++i) {
            const auto s = settings_of(i);
            std::vector<int> key;
            for (size_t k = 0; k < n; ++k) {
                if (mask & (1u << k)) {
                    key.push_back(s[k]);
                }
            }
            const auto m = table_[i].marginal(keep).probabilities();
            auto [it, inserted] = first.emplace(key, m);
            if (!inserted) {
                for (size_t j = 0; j < m.size(); ++j) {
                    worst = std::max(worst, std::abs(m[j] - it->second[j]));
                }
            }
        }
    }
    return worst;
}

}  // namespace coordcert
