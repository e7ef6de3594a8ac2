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

#include "coordcert/moment_problem.h"

#include <cmath>

#include "coordcert/errors.h"

namespace coordcert {

namespace {

const std::vector<Letter> &letters() {
    static const std::vector<Letter> l{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    return l;
}

SdpConstraint equality(std::vector<SdpTerm> terms, double rhs) {
    return SdpConstraint{std::move(terms), rhs};
}

}  // namespace

std::optional<std::pair<int, bool>> MomentProblem::lookup(const Word &word) const {
    const auto c = canonical_word(word, compatibility);
    if (!c) {
        return std::nullopt;
    }
    auto it = moment_ids.find(*c);
    if (it != moment_ids.end()) {
        return std::make_pair(it->second, false);
    }
    const auto r = canonical_word(reversed(*c), compatibility);
    it = moment_ids.find(*r);
    if (it == moment_ids.end()) {
        throw ValidationError("moment '" + to_string(word) + "' is outside the relaxation");
    }
    return std::make_pair(it->second, true);
}

std::vector<SdpTerm> MomentProblem::real_part(const Word &word) const {
    const auto id = lookup(word);
    if (!id) {
        return {};
    }
    const auto [v, w] = moment_entry[static_cast<size_t>(id->first)];
    return {{v, w, 1.0}};
}

MomentProblem build_moment_problem(const InflationSpec &spec, int level, double alpha, double delta) {
    if (level < 1) {
        throw ValidationError("level must be at least 1");
    }
    if (!(alpha >= -1 && alpha <= 1) || !(delta >= -1 && delta <= 1)) {
        throw ValidationError("fixed values <A> and <D> must lie in [-1, 1]");
    }
    MomentProblem p;
    p.level = level;
    p.alpha = alpha;
    p.delta = delta;
    p.compatibility = spec.compatibility();
    p.index = word_index(letters(), level, p.compatibility);
    const int m = p.size();
    p.sdp.n = 2 * m;
    p.sdp.trace_bound = 2.0 * m;
    auto &cons = p.sdp.constraints;

    // Hermitian doubling structure.
    for (int v = 0; v < m; ++v) {
        for (int w = v; w < m; ++w) {
            cons.push_back(equality({{v, w, 1.0}, {m + v, m + w, -1.0}}, 0));
            cons.push_back(equality({{m + v, w, 1.0}, {m + w, v, 1.0}}, 0));
        }
    }

    // Identify entries that carry the same moment.
    struct Ref {
        int v, w;
        bool conj;
    };
    std::vector<Ref> refs;
    for (int v = 0; v < m; ++v) {
        for (int w = v; w < m; ++w) {
            const Word u = concat(reversed(p.index[static_cast<size_t>(v)]), p.index[static_cast<size_t>(w)]);
            const auto c = canonical_word(u, p.compatibility);
            if (!c) {
                cons.push_back(equality({{v, w, 1.0}}, 0));
                cons.push_back(equality({{m + v, w, 1.0}}, 0));
                continue;
            }
            const auto r = *canonical_word(reversed(*c), p.compatibility);
            int id;
            bool conj = false;
            if (auto it = p.moment_ids.find(*c); it != p.moment_ids.end()) {
                id = it->second;
            } else if (auto jt = p.moment_ids.find(r); jt != p.moment_ids.end()) {
                id = jt->second;
                conj = true;
            } else {
                id = static_cast<int>(p.moments.size());
                p.moment_ids[*c] = id;
                p.moments.push_back(*c);
                p.moment_real.push_back(r == *c);
                p.moment_entry.push_back({v, w});
                refs.push_back({v, w, false});
                if (r == *c) {
                    cons.push_back(equality({{m + v, w, 1.0}}, 0));
                }
                continue;
            }
            const Ref &ref = refs[static_cast<size_t>(id)];
            cons.push_back(equality({{v, w, 1.0}, {ref.v, ref.w, -1.0}}, 0));
            if (p.moment_real[static_cast<size_t>(id)]) {
                cons.push_back(equality({{m + v, w, 1.0}}, 0));
            } else {
                const double s = conj == ref.conj ? 1.0 : -1.0;
                cons.push_back(equality({{m + v, w, 1.0}, {m + ref.v, ref.w, -s}}, 0));
            }
        }
    }

    // Normalization and fixed marginals.
    const double pa = (1 + alpha) / 2, pd = (1 + delta) / 2;
    cons.push_back(equality({{0, 0, 1.0}}, 1.0));
    std::map<Word, double> fixed{{Word{{0, 0}}, pa}, {Word{{3, 0}}, pd}};
    for (const auto &[word, value] : fixed) {
        cons.push_back(equality(p.real_part(word), value));
    }

    // A and D share no source: moments of A-only times D-only words factorize.
    for (size_t id = 0; id < p.moments.size(); ++id) {
        Word a, d;
        bool only_ad = true;
        for (const Letter &l : p.moments[id]) {
            if (l.party == 0) {
                a.push_back(l);
            } else if (l.party == 3) {
                d.push_back(l);
            } else {
                only_ad = false;
            }
        }
        if (!only_ad || a.empty() || d.empty()) {
            continue;
        }
        const auto ca = canonical_word(a, p.compatibility);
        const auto cd = canonical_word(d, p.compatibility);
        if (!ca || !cd || !fixed.count(*ca) || !fixed.count(*cd)) {
            continue;
        }
        const auto [v, w] = p.moment_entry[id];
        cons.push_back(equality({{v, w, 1.0}}, fixed.at(*ca) * fixed.at(*cd)));
    }

    // <XY> = 1 - 2<X0> - 2<Y0> + 4<X0 Y0> for the adjacent pairs.
    p.sdp.objective_offset = -alpha * delta / 2;
    for (const auto &[x, y] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}}) {
        p.sdp.objective_offset += 1;
        for (auto t : p.real_part({{x, 0}})) {
            t.coef *= -2;
            p.sdp.objective.push_back(t);
        }
        for (auto t : p.real_part({{y, 0}})) {
            t.coef *= -2;
            p.sdp.objective.push_back(t);
        }
        for (auto t : p.real_part({{x, 0}, {y, 0}})) {
            t.coef *= 4;
            p.sdp.objective.push_back(t);
        }
    }
    return p;
}

void add_correlator_constraint(MomentProblem &problem, char x, char y, double value) {
    if (x < 'A' || x > 'D' || y < 'A' || y > 'D' || x == y) {
        throw ValidationError("correlator parties must be two distinct letters in A..D");
    }
    const int px = x - 'A', py = y - 'A';
    std::vector<SdpTerm> terms;
    for (auto t : problem.real_part({{px, 0}})) {
        t.coef = -2;
        terms.push_back(t);
    }
    for (auto t : problem.real_part({{py, 0}})) {
        t.coef = -2;
        terms.push_back(t);
    }
    if (!problem.compatibility.commute(px, py)) {
        throw ValidationError("correlator of incompatible parties is not a real moment");
    }
    for (auto t : problem.real_part({{px, 0}, {py, 0}})) {
        t.coef = 4;
        terms.push_back(t);
    }
    problem.sdp.constraints.push_back({terms, value - 1});
}

MomentProblem perfect_coordination_problem(const InflationSpec &spec, int level) {
    MomentProblem p = build_moment_problem(spec, level, 0, 0);
    add_correlator_constraint(p, 'A', 'B', 1);
    add_correlator_constraint(p, 'B', 'C', 1);
    add_correlator_constraint(p, 'C', 'D', 1);
    return p;
}

RealMatrix moment_matrix(const MomentProblem &problem, const std::function<Complex(const Word &)> &moment) {
    const int m = problem.size();
    ComplexMatrix mm(m, m);
    for (int v = 0; v < m; ++v) {
        for (int w = 0; w < m; ++w) {
            mm(v, w) = moment(concat(reversed(problem.index[static_cast<size_t>(v)]),
                                     problem.index[static_cast<size_t>(w)]));
        }
    }
    RealMatrix x(2 * m, 2 * m);
    x.topLeftCorner(m, m) = mm.real();
    x.bottomRightCorner(m, m) = mm.real();
    x.topRightCorner(m, m) = -mm.imag();
    x.bottomLeftCorner(m, m) = mm.imag();
    return x;
}

RealMatrix moment_matrix(const MomentProblem &problem, const InflationHeisenberg &heisenberg) {
    const int m = problem.size();
    std::vector<ComplexVector> vecs;
    for (const Word &w : problem.index) {
        vecs.push_back(heisenberg.apply(w, heisenberg.state()));
    }
    ComplexMatrix mm(m, m);
    for (int v = 0; v < m; ++v) {
        for (int w = 0; w < m; ++w) {
            mm(v, w) = vecs[static_cast<size_t>(v)].dot(vecs[static_cast<size_t>(w)]);
        }
    }
    RealMatrix x(2 * m, 2 * m);
    x.topLeftCorner(m, m) = mm.real();
    x.bottomRightCorner(m, m) = mm.real();
    x.topRightCorner(m, m) = -mm.imag();
    x.bottomLeftCorner(m, m) = mm.imag();
    return x;
}

Json export_moment_problem(const MomentProblem &problem) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["level"] = problem.level;
    j["alpha"] = number(problem.alpha);
    j["delta"] = number(problem.delta);
    Json index = Json::array();
    for (const Word &w : problem.index) {
        index.push_back(to_string(w));
    }
    j["index"] = index;
    j["layout"] = "X = [[Re M, -Im M], [Im M, Re M]], M[v, w] = <v^dagger w>";
    Json moments = Json::array();
    for (size_t i = 0; i < problem.moments.size(); ++i) {
        moments.push_back({{"word", to_string(problem.moments[i])},
                           {"real", static_cast<bool>(problem.moment_real[i])},
                           {"entry", {problem.moment_entry[i].first, problem.moment_entry[i].second}}});
    }
    j["moments"] = moments;
    j["sdp"] = to_json(problem.sdp);
    return j;
}

}  // namespace coordcert
