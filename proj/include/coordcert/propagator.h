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

#ifndef COORDCERT_PROPAGATOR_H
#define COORDCERT_PROPAGATOR_H

#include <string>
#include <vector>

#include "coordcert/linalg.h"

namespace coordcert {

struct Mode {
    std::string wire;
    int dim = 1;
};

/// A pure state on a list of named tensor factors ("modes"). The first mode
/// is the most significant index of the amplitude vector.
class StateTensor {
   public:
    StateTensor();
    StateTensor(std::vector<Mode> modes, ComplexVector amplitudes);

    const std::vector<Mode> &modes() const {
        return modes_;
    }
    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    ComplexVector &amplitudes() {
        return amplitudes_;
    }
    size_t dim() const {
        return static_cast<size_t>(amplitudes_.size());
    }

    int mode_index(const std::string &wire) const;

    /// Tensor product with a new factor appended after the existing modes.
    void append(const std::vector<Mode> &modes, const ComplexVector &amplitudes);

    /// Reorders modes; `order[k]` is the old position of the new k-th mode.
    void permute(const std::vector<int> &order);

    /// Reorders modes to follow `wires`, which must name every mode.
    void reorder(const std::vector<std::string> &wires);

    /// Applies `op` to the listed modes (taken in the given order), leaving
    /// the mode list unchanged. `op` may be any square matrix.
    void apply(const std::vector<std::string> &wires, const ComplexMatrix &op);

    /// Applies `op` to the joint space of `inputs` and relabels that space as
    /// `outputs` (same total dimension). Output modes go to the end.
    void transform(const std::vector<std::string> &inputs, const std::vector<Mode> &outputs, const ComplexMatrix &op);

   private:
    void move_to_back(const std::vector<std::string> &wires);

    std::vector<Mode> modes_;
    ComplexVector amplitudes_;
};

/// One transformation: a unitary from the joint input-wire space to the joint
/// output-wire space.
struct TransformStep {
    std::string node;
    std::vector<std::string> inputs;
    std::vector<Mode> outputs;
    std::vector<Mode> input_modes;
    ComplexMatrix unitary;
};

/// Ordered list of transformation steps. `forward` pushes a state through
/// all of them; `backward` undoes them in reverse order with U^dagger, so
/// backward(P forward(psi)) is the Heisenberg-picture operator applied to psi.
class Propagator {
   public:
    Propagator() = default;
    explicit Propagator(std::vector<TransformStep> steps) : steps_(std::move(steps)) {
    }

    void forward(StateTensor &state) const;
    void backward(StateTensor &state) const;

    const std::vector<TransformStep> &steps() const {
        return steps_;
    }

   private:
    std::vector<TransformStep> steps_;
};

}  // namespace coordcert

#endif
