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

#include "coordcert/propagator.h"

#include <algorithm>
#include <stdexcept>

#include "coordcert/errors.h"

namespace coordcert {

StateTensor::StateTensor() : amplitudes_(ComplexVector::Ones(1)) {
}

StateTensor::StateTensor(std::vector<Mode> modes, ComplexVector amplitudes)
    : modes_(std::move(modes)), amplitudes_(std::move(amplitudes)) {
    size_t total = 1;
    for (const auto &m : modes_) {
        total *= static_cast<size_t>(m.dim);
    }
    if (total != dim()) {
        throw ValidationError("state size does not match its modes");
    }
}

int StateTensor::mode_index(const std::string &wire) const {
    for (size_t k = 0; k < modes_.size(); ++k) {
        if (modes_[k].wire == wire) {
            return static_cast<int>(k);
        }
    }
    throw ValidationError("no live mode for wire '" + wire + "'");
}

void StateTensor::append(const std::vector<Mode> &modes, const ComplexVector &amplitudes) {
    amplitudes_ = kron(amplitudes_, amplitudes);
    modes_.insert(modes_.end(), modes.begin(), modes.end());
}

void StateTensor::permute(const std::vector<int> &order) {
    const size_t k = modes_.size();
    if (order.size() != k) {
        throw std::logic_error("permutation size mismatch");
    }
    bool identity = true;
    for (size_t i = 0; i < k; ++i) {
        identity = identity && order[i] == static_cast<int>(i);
    }
    if (identity) {
        return;
    }
    std::vector<size_t> old_stride(k);
    size_t s = 1;
    for (size_t i = k; i-- > 0;) {
        old_stride[i] = s;
        s *= static_cast<size_t>(modes_[i].dim);
    }
    std::vector<Mode> new_modes(k);
    std::vector<size_t> stride_in_new_order(k);
    for (size_t i = 0; i < k; ++i) {
        new_modes[i] = modes_[order[i]];
        stride_in_new_order[i] = old_stride[order[i]];
    }
    ComplexVector out(amplitudes_.size());
    std::vector<int> digit(k, 0);
    size_t old_index = 0;
    const size_t n = dim();
    for (size_t idx = 0; idx < n; ++idx) {
        out(static_cast<Eigen::Index>(idx)) = amplitudes_(static_cast<Eigen::Index>(old_index));
        // Increment the mixed-radix counter over the new mode order.
        for (size_t i = k; i-- > 0;) {
            if (++digit[i] < new_modes[i].dim) {
                old_index += stride_in_new_order[i];
                break;
            }
            old_index -= stride_in_new_order[i] * static_cast<size_t>(new_modes[i].dim - 1);
            digit[i] = 0;
        }
    }
    modes_ = std::move(new_modes);
    amplitudes_ = std::move(out);
}

void StateTensor::reorder(const std::vector<std::string> &wires) {
    if (wires.size() != modes_.size()) {
        throw std::logic_error("reorder needs every mode");
    }
    std::vector<int> order;
    order.reserve(wires.size());
    for (const auto &w : wires) {
        order.push_back(mode_index(w));
    }
    permute(order);
}

void StateTensor::move_to_back(const std::vector<std::string> &wires) {
    std::vector<int> picked;
    for (const auto &w : wires) {
        picked.push_back(mode_index(w));
    }
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(modes_.size()); ++i) {
        if (std::find(picked.begin(), picked.end(), i) == picked.end()) {
            order.push_back(i);
        }
    }
    order.insert(order.end(), picked.begin(), picked.end());
    permute(order);
}

void StateTensor::apply(const std::vector<std::string> &wires, const ComplexMatrix &op) {
    const size_t k = modes_.size();
    std::vector<size_t> stride(k);
    size_t s = 1;
    for (size_t i = k; i-- > 0;) {
        stride[i] = s;
        s *= static_cast<size_t>(modes_[i].dim);
    }
    std::vector<int> picked;
    for (const auto &w : wires) {
        picked.push_back(mode_index(w));
    }
    // Offsets of the picked subspace, first listed wire most significant.
    std::vector<size_t> sub_offsets{0};
    for (int p : picked) {
        std::vector<size_t> next;
        next.reserve(sub_offsets.size() * static_cast<size_t>(modes_[p].dim));
        for (size_t off : sub_offsets) {
            for (int d = 0; d < modes_[p].dim; ++d) {
                next.push_back(off + static_cast<size_t>(d) * stride[p]);
            }
        }
        sub_offsets = std::move(next);
    }
    const size_t sub = sub_offsets.size();
    if (static_cast<size_t>(op.rows()) != sub || static_cast<size_t>(op.cols()) != sub) {
        throw ValidationError("operator dimension does not match the addressed modes");
    }
    std::vector<size_t> rest_offsets{0};
    for (size_t i = 0; i < k; ++i) {
        if (std::find(picked.begin(), picked.end(), static_cast<int>(i)) != picked.end()) {
            continue;
        }
        std::vector<size_t> next;
        next.reserve(rest_offsets.size() * static_cast<size_t>(modes_[i].dim));
        for (size_t off : rest_offsets) {
            for (int d = 0; d < modes_[i].dim; ++d) {
                next.push_back(off + static_cast<size_t>(d) * stride[i]);
            }
        }
        rest_offsets = std::move(next);
    }
    const Eigen::Index nsub = static_cast<Eigen::Index>(sub);
    const Eigen::Index nrest = static_cast<Eigen::Index>(rest_offsets.size());
    ComplexMatrix gathered(nsub, nrest);
    for (Eigen::Index r = 0; r < nrest; ++r) {
        const size_t base = rest_offsets[static_cast<size_t>(r)];
        for (Eigen::Index j = 0; j < nsub; ++j) {
            gathered(j, r) = amplitudes_(static_cast<Eigen::Index>(base + sub_offsets[static_cast<size_t>(j)]));
        }
    }
    const ComplexMatrix result = op * gathered;
    for (Eigen::Index r = 0; r < nrest; ++r) {
        const size_t base = rest_offsets[static_cast<size_t>(r)];
        for (Eigen::Index j = 0; j < nsub; ++j) {
            amplitudes_(static_cast<Eigen::Index>(base + sub_offsets[static_cast<size_t>(j)])) = result(j, r);
        }
    }
}

void StateTensor::transform(const std::vector<std::string> &inputs, const std::vector<Mode> &outputs,
                            const ComplexMatrix &op) {
    move_to_back(inputs);
    size_t in_total = 1;
    for (size_t i = modes_.size() - inputs.size(); i < modes_.size(); ++i) {
        in_total *= static_cast<size_t>(modes_[i].dim);
    }
    size_t out_total = 1;
    for (const auto &m : outputs) {
        out_total *= static_cast<size_t>(m.dim);
    }
    if (in_total != out_total || static_cast<size_t>(op.rows()) != out_total ||
        static_cast<size_t>(op.cols()) != in_total) {
        throw ValidationError("transformation dimensions do not match its wires");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(in_total);
    const Eigen::Index rest = static_cast<Eigen::Index>(dim() / in_total);
    // Row-major (rest x d) is column-major (d x rest).
    Eigen::Map<ComplexMatrix> view(amplitudes_.data(), d, rest);
    ComplexMatrix updated = op * view;
    view = updated;
    modes_.resize(modes_.size() - inputs.size());
    modes_.insert(modes_.end(), outputs.begin(), outputs.end());
}

void Propagator::forward(StateTensor &state) const {
    for (const auto &step : steps_) {
        state.transform(step.inputs, step.outputs, step.unitary);
    }
}

void Propagator::backward(StateTensor &state) const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        std::vector<std::string> outs;
        for (const auto &m : it->outputs) {
            outs.push_back(m.wire);
        }
        state.transform(outs, it->input_modes, it->unitary.adjoint());
    }
}

}  // namespace coordcert
