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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>

#include "coordcert/errors.h"
#include "coordcert/inequalities.h"

namespace coordcert {

double coordination_score(const Behavior &behavior) {
    if (behavior.parties().size() != 4 || !behavior.is_binary()) {
        throw ValidationError("coordination score needs a binary four-party behavior");
    }
    double l1 = 0;
    const auto &p = behavior.probabilities();
    for (size_t i = 0; i < p.size(); ++i) {
        const double target = (i == 0 || i + 1 == p.size()) ? 0.5 : 0.0;
        l1 += std::abs(p[i] - target);
    }
    return 1.0 - l1 / 2.0;
}

namespace {

/// Precomputed gather/scatter offsets for an operator acting on a subset of
/// the slots of a state vector.
class SlotOp {
   public:
    SlotOp() = default;
    SlotOp(const std::vector<int> &slots, int slot_count, int dim) {
        std::vector<size_t> stride(static_cast<size_t>(slot_count));
        size_t s = 1;
        for (int k = slot_count - 1; k >= 0; --k) {
            stride[static_cast<size_t>(k)] = s;
            s *= static_cast<size_t>(dim);
        }
        sub_ = offsets(slots, stride, dim);
        std::vector<int> rest;
        for (int k = 0; k < slot_count; ++k) {
            if (std::find(slots.begin(), slots.end(), k) == slots.end()) {
                rest.push_back(k);
            }
        }
        rest_ = offsets(rest, stride, dim);
    }

    void apply(const ComplexMatrix &op, ComplexVector &psi, ComplexMatrix &buffer) const {
        const auto rows = static_cast<Eigen::Index>(sub_.size());
        const auto cols = static_cast<Eigen::Index>(rest_.size());
        buffer.resize(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j) {
            for (Eigen::Index i = 0; i < rows; ++i) {
                buffer(i, j) = psi(static_cast<Eigen::Index>(sub_[static_cast<size_t>(i)] + rest_[static_cast<size_t>(j)]));
            }
        }
        const ComplexMatrix out = op * buffer;
        for (Eigen::Index j = 0; j < cols; ++j) {
            for (Eigen::Index i = 0; i < rows; ++i) {
                psi(static_cast<Eigen::Index>(sub_[static_cast<size_t>(i)] + rest_[static_cast<size_t>(j)])) = out(i, j);
            }
        }
    }

   private:
    static std::vector<size_t> offsets(const std::vector<int> &slots, const std::vector<size_t> &stride, int dim) {
        std::vector<size_t> out{0};
        for (int slot : slots) {
            std::vector<size_t> next;
            next.reserve(out.size() * static_cast<size_t>(dim));
            for (size_t base : out) {
                for (int d = 0; d < dim; ++d) {
                    next.push_back(base + static_cast<size_t>(d) * stride[static_cast<size_t>(slot)]);
                }
            }
            out = std::move(next);
        }
        return out;
    }

    std::vector<size_t> sub_;
    std::vector<size_t> rest_;
};

/// Fig. 1 with every wire of dimension D. Transformation output k reuses the
/// slot of input k, so the global slot layout never changes; each party
/// applies a unitary to its three slots and reads outcome 0 on the first
/// floor(D^3 / 2) basis states.
class Fig1Engine {
   public:
    explicit Fig1Engine(int dim) : dim_(dim), circuit_(fig1_circuit()) {
        for (const auto &w : circuit_.wires()) {
            base_.wire_dims[w.id] = dim;
        }
        for (const auto &s : circuit_.ids_of_kind(NodeKind::source)) {
            sources_.push_back(s);
            for (const Wire *w : circuit_.out_wires(s)) {
                slot_of_[w->id] = static_cast<int>(slot_of_.size());
            }
        }
        slot_count_ = static_cast<int>(slot_of_.size());
        for (const auto &id : circuit_.topological_order()) {
            if (circuit_.node(id).kind != NodeKind::transformation) {
                continue;
            }
            transforms_.push_back(id);
            const auto ins = circuit_.in_wires(id);
            const auto outs = circuit_.out_wires(id);
            if (ins.size() != outs.size()) {
                throw SolverError("fixed-slot search needs equal input and output counts");
            }
            std::vector<int> slots;
            for (size_t k = 0; k < ins.size(); ++k) {
                slots.push_back(slot_of_.at(ins[k]->id));
                slot_of_[outs[k]->id] = slots.back();
            }
            transform_ops_.emplace_back(slots, slot_count_, dim);
        }
        parties_ = circuit_.measurement_ids();
        std::vector<std::vector<int>> party_slots;
        for (const auto &p : parties_) {
            std::vector<int> slots;
            for (const Wire *w : circuit_.in_wires(p)) {
                slots.push_back(slot_of_.at(w->id));
            }
            measure_ops_.emplace_back(slots, slot_count_, dim);
            party_slots.push_back(slots);
        }
        local_dim_ = static_cast<int>(std::pow(dim, 3));
        source_dim_ = local_dim_;
        const size_t total = static_cast<size_t>(std::pow(dim, slot_count_));
        outcome_of_.resize(total);
        for (size_t g = 0; g < total; ++g) {
            int packed = 0;
            for (size_t p = 0; p < party_slots.size(); ++p) {
                int local = 0;
                for (int slot : party_slots[p]) {
                    const size_t digit = (g / static_cast<size_t>(std::pow(dim, slot_count_ - 1 - slot))) %
                                         static_cast<size_t>(dim);
                    local = local * dim + static_cast<int>(digit);
                }
                packed = packed * 2 + (local < local_dim_ / 2 ? 0 : 1);
            }
            outcome_of_[g] = static_cast<uint8_t>(packed);
        }
        source_params_ = 2 * source_dim_;
        transform_params_ = dim * dim * dim * dim;
        measure_params_ = local_dim_ * local_dim_;
    }

    size_t param_count() const {
        return sources_.size() * static_cast<size_t>(source_params_) +
               transforms_.size() * static_cast<size_t>(transform_params_) +
               parties_.size() * static_cast<size_t>(measure_params_);
    }

    struct Parts {
        std::vector<ComplexVector> states;
        std::vector<ComplexMatrix> unitaries;
        std::vector<ComplexMatrix> measures;
    };

    Parts build(std::span<const double> x) const {
        Parts parts;
        size_t k = 0;
        for (size_t s = 0; s < sources_.size(); ++s) {
            parts.states.push_back(source_state(x.subspan(k, static_cast<size_t>(source_params_))));
            k += static_cast<size_t>(source_params_);
        }
        for (size_t t = 0; t < transforms_.size(); ++t) {
            parts.unitaries.push_back(
                exp_i_hermitian(hermitian_from_params(x.subspan(k, static_cast<size_t>(transform_params_)), dim_ * dim_)));
            k += static_cast<size_t>(transform_params_);
        }
        for (size_t p = 0; p < parties_.size(); ++p) {
            parts.measures.push_back(
                exp_i_hermitian(hermitian_from_params(x.subspan(k, static_cast<size_t>(measure_params_)), local_dim_)));
            k += static_cast<size_t>(measure_params_);
        }
        return parts;
    }

    double score(std::span<const double> x) const {
        const Parts parts = build(x);
        ComplexMatrix buffer;
        ComplexVector psi = initial(parts.states);
        run_transforms(parts.unitaries, psi, buffer, -1);
        run_measures(parts.measures, psi, buffer, -1);
        return score_of(psi);
    }

    std::vector<double> gradient(std::span<const double> x, double step) const {
        std::vector<double> g(x.size());
        std::vector<double> xp(x.begin(), x.end());
        const Parts parts = build(x);
        ComplexMatrix buffer;
        size_t k = 0;
        auto central = [&](size_t i, auto &&eval) {
            const double orig = xp[i];
            xp[i] = orig + step;
            const double up = eval();
            xp[i] = orig - step;
            const double down = eval();
            xp[i] = orig;
            g[i] = (up - down) / (2.0 * step);
        };
        for (size_t s = 0; s < sources_.size(); ++s) {
            std::vector<ComplexVector> states = parts.states;
            for (int j = 0; j < source_params_; ++j, ++k) {
                central(k, [&] {
                    states[s] = source_state(std::span<const double>(xp).subspan(
                        k - static_cast<size_t>(j), static_cast<size_t>(source_params_)));
                    ComplexVector psi = initial(states);
                    run_transforms(parts.unitaries, psi, buffer, -1);
                    run_measures(parts.measures, psi, buffer, -1);
                    return score_of(psi);
                });
            }
        }
        const ComplexVector psi0 = initial(parts.states);
        for (size_t t = 0; t < transforms_.size(); ++t) {
            // Cache the prefix and replay the suffix.
            ComplexVector prefix = psi0;
            for (size_t u = 0; u < t; ++u) {
                transform_ops_[u].apply(parts.unitaries[u], prefix, buffer);
            }
            for (int j = 0; j < transform_params_; ++j, ++k) {
                central(k, [&] {
                    ComplexVector psi = prefix;
                    const ComplexMatrix u = exp_i_hermitian(hermitian_from_params(
                        std::span<const double>(xp).subspan(k - static_cast<size_t>(j),
                                                            static_cast<size_t>(transform_params_)),
                        dim_ * dim_));
                    transform_ops_[t].apply(u, psi, buffer);
                    for (size_t w = t + 1; w < transforms_.size(); ++w) {
                        transform_ops_[w].apply(parts.unitaries[w], psi, buffer);
                    }
                    run_measures(parts.measures, psi, buffer, -1);
                    return score_of(psi);
                });
            }
        }
        ComplexVector psi_t = psi0;
        run_transforms(parts.unitaries, psi_t, buffer, -1);
        for (size_t p = 0; p < parties_.size(); ++p) {
            // Party unitaries act on disjoint slots and commute.
            ComplexVector others = psi_t;
            run_measures(parts.measures, others, buffer, static_cast<int>(p));
            for (int j = 0; j < measure_params_; ++j, ++k) {
                central(k, [&] {
                    ComplexVector psi = others;
                    const ComplexMatrix v = exp_i_hermitian(hermitian_from_params(
                        std::span<const double>(xp).subspan(k - static_cast<size_t>(j),
                                                            static_cast<size_t>(measure_params_)),
                        local_dim_));
                    measure_ops_[p].apply(v, psi, buffer);
                    return score_of(psi);
                });
            }
        }
        return g;
    }

    QuantumRealization realization(std::span<const double> x) const {
        const Parts parts = build(x);
        QuantumRealization r = base_;
        for (size_t s = 0; s < sources_.size(); ++s) {
            r.sources[sources_[s]] = SourceState::from_vector(parts.states[s]);
        }
        for (size_t t = 0; t < transforms_.size(); ++t) {
            r.unitaries[transforms_[t]] = parts.unitaries[t];
        }
        ComplexMatrix pi0 = ComplexMatrix::Zero(local_dim_, local_dim_);
        for (int i = 0; i < local_dim_ / 2; ++i) {
            pi0(i, i) = 1;
        }
        for (size_t p = 0; p < parties_.size(); ++p) {
            const ComplexMatrix &v = parts.measures[p];
            const ComplexMatrix e0 = v.adjoint() * pi0 * v;
            const ComplexMatrix e1 = ComplexMatrix::Identity(local_dim_, local_dim_) - e0;
            r.measurements[parties_[p]] = {e0, e1};
        }
        return r;
    }

    const CausalCircuit &circuit() const {
        return circuit_;
    }

   private:
    ComplexVector source_state(std::span<const double> x) const {
        ComplexVector v(source_dim_);
        for (int i = 0; i < source_dim_; ++i) {
            v(i) = Complex(x[static_cast<size_t>(2 * i)], x[static_cast<size_t>(2 * i + 1)]);
        }
        const double n = v.norm();
        if (n < 1e-12) {
            v.setZero();
            v(0) = 1;
            return v;
        }
        return v / n;
    }

    ComplexVector initial(const std::vector<ComplexVector> &states) const {
        ComplexVector psi = states.front();
        for (size_t s = 1; s < states.size(); ++s) {
            psi = kron(psi, states[s]);
        }
        return psi;
    }

    void run_transforms(const std::vector<ComplexMatrix> &u, ComplexVector &psi, ComplexMatrix &buffer,
                        int skip) const {
        for (size_t t = 0; t < transforms_.size(); ++t) {
            if (static_cast<int>(t) != skip) {
                transform_ops_[t].apply(u[t], psi, buffer);
            }
        }
    }

    void run_measures(const std::vector<ComplexMatrix> &v, ComplexVector &psi, ComplexMatrix &buffer,
                      int skip) const {
        for (size_t p = 0; p < parties_.size(); ++p) {
            if (static_cast<int>(p) != skip) {
                measure_ops_[p].apply(v[p], psi, buffer);
            }
        }
    }

    double score_of(const ComplexVector &psi) const {
        std::array<double, 16> p{};
        for (Eigen::Index g = 0; g < psi.size(); ++g) {
            p[outcome_of_[static_cast<size_t>(g)]] += std::norm(psi(g));
        }
        double l1 = 0;
        for (size_t i = 0; i < 16; ++i) {
            l1 += std::abs(p[i] - ((i == 0 || i == 15) ? 0.5 : 0.0));
        }
        return 1.0 - l1 / 2.0;
    }

    int dim_;
    CausalCircuit circuit_;
    QuantumRealization base_;
    std::vector<std::string> sources_;
    std::vector<std::string> transforms_;
    std::vector<std::string> parties_;
    std::map<std::string, int> slot_of_;
    int slot_count_ = 0;
    int local_dim_ = 0;
    int source_dim_ = 0;
    int source_params_ = 0;
    int transform_params_ = 0;
    int measure_params_ = 0;
    std::vector<SlotOp> transform_ops_;
    std::vector<SlotOp> measure_ops_;
    std::vector<uint8_t> outcome_of_;
};

}  // namespace

SearchResult max_coordination_search(const SearchOptions &options) {
    if (options.wire_dim != 2) {
        throw ValidationError("search supports wire dimension 2 only; the dimension-3 state has 3^12 amplitudes");
    }
    if (options.restarts < 1 || options.iterations < 0) {
        throw ValidationError("search needs at least one restart and a non-negative iteration count");
    }
    const Fig1Engine engine(options.wire_dim);
    OptimizerOptions opt;
    opt.restarts = options.restarts;
    opt.iterations = options.iterations;
    opt.seed = options.seed;
    opt.jobs = options.jobs;
    const double step = opt.fd_step;
    const Objective f = [&](std::span<const double> x) { return engine.score(x); };
    const Gradient grad = [&](std::span<const double> x) { return engine.gradient(x, step); };
    auto start = [&](Rng &rng, int) {
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> x(engine.param_count());
        for (auto &a : x) {
            a = normal(rng);
        }
        return x;
    };
    const OptimizationResult best = multistart_maximize(f, start, opt, grad);
    SearchResult result;
    result.realization = engine.realization(best.x);
    result.behavior = simulate(engine.circuit(), result.realization);
    result.score = coordination_score(result.behavior);
    result.restart = best.restart;
    if (std::abs(result.score - best.value) > 1e-8) {
        throw SolverError("search engine disagrees with the staged simulator");
    }
    return result;
}

}  // namespace coordcert
