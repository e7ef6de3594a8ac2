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

#ifndef COORDCERT_CIRCUIT_H
#define COORDCERT_CIRCUIT_H

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coordcert/errors.h"

namespace coordcert {

enum class NodeKind { source, transformation, measurement };

std::string_view to_string(NodeKind kind);
NodeKind node_kind_from_string(std::string_view text);

struct Node {
    std::string id;
    NodeKind kind = NodeKind::source;
    /// Number of outcomes; only meaningful for measurement nodes.
    int outcomes = 2;
};

/// A directed wire. `dim` is an annotation for the quantum layer; the graph
/// algorithms never look at it.
struct Wire {
    std::string id;
    std::string from;
    std::string to;
    int dim = 2;
};

/// Set of measurement node ids, kept sorted.
using PartySet = std::set<std::string>;

/// A causal circuit: sources, transformations and measurements connected by
/// wires. The class stores whatever it is given; `validate` decides whether
/// the result is a well-formed circuit.
class CausalCircuit {
   public:
    void add_node(std::string id, NodeKind kind, int outcomes = 2);

    /// Adds a wire and returns its id. Without an explicit id the wire is
    /// named "from->to", with a "#k" suffix for the k-th parallel duplicate.
    std::string add_wire(const std::string &from, const std::string &to, int dim = 2, std::string id = {});

    const std::vector<Node> &nodes() const {
        return nodes_;
    }
    const std::vector<Wire> &wires() const {
        return wires_;
    }

    const Node *find_node(std::string_view id) const;
    /// Throws ValidationError for unknown ids.
    const Node &node(std::string_view id) const;
    const Wire *find_wire(std::string_view id) const;

    /// Wires entering / leaving a node, sorted by wire id. This order fixes the
    /// local tensor-factor order used by the quantum layer.
    std::vector<const Wire *> in_wires(std::string_view id) const;
    std::vector<const Wire *> out_wires(std::string_view id) const;

    std::vector<std::string> ids_of_kind(NodeKind kind) const;
    std::vector<std::string> measurement_ids() const {
        return ids_of_kind(NodeKind::measurement);
    }

    /// Kahn order with ties broken by node id. Throws ValidationError on a cycle.
    std::vector<std::string> topological_order() const;

    /// Same circuit with nodes sorted by id and wires sorted by (from, to, id).
    CausalCircuit sorted() const;

    bool operator==(const CausalCircuit &other) const;

   private:
    std::vector<Node> nodes_;
    std::vector<Wire> wires_;
};

enum class ViolationKind {
    duplicate_node,
    duplicate_wire,
    unknown_endpoint,
    cycle,
    source_has_inputs,
    measurement_has_outputs,
    transformation_without_inputs,
    transformation_without_outputs,
    bad_outcome_count,
    bad_dimension,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string subject;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        return violations.empty();
    }
    bool has(ViolationKind kind) const;
    std::string to_string() const;
};

ValidationReport validate(const CausalCircuit &circuit);

/// Throws ValidationError carrying the first violation.
void require_valid(const CausalCircuit &circuit);

/// Measurement nodes reachable from `id` along directed wires. A measurement
/// node belongs to its own future.
PartySet measurement_future(const CausalCircuit &circuit, std::string_view id);

/// A node whose measurement future contains every party, if any.
std::optional<std::string> common_cause_witness(const CausalCircuit &circuit, const PartySet &parties);

bool shares_common_cause(const CausalCircuit &circuit, const PartySet &parties);

/// Node id derived from a label: the sorted party ids concatenated (joined by
/// '.' when some id is longer than one character), with a trailing '#' when
/// the result would collide with a measurement id.
std::string label_id(const PartySet &label, const PartySet &measurement_ids);

/// Relabels every source/transformation by its measurement future and merges
/// nodes with equal labels. Nodes with an empty future are dropped, parallel
/// wires are collapsed (dimension annotations multiply) and wires internal to
/// a merged group disappear. A merged group becomes a source when nothing
/// outside the group feeds it, otherwise a transformation.
CausalCircuit canonicalize(const CausalCircuit &circuit);

/// The four-party circuit without a global common cause: sources ABC, ABD,
/// ACD, BCD; transformations AB..CD; measurements A..D; 24 qubit wires.
CausalCircuit fig1_circuit();

/// One source "ABCD" wired straight into A, B, C and D (used for the GHZ
/// experiments, where a common cause is present by construction).
CausalCircuit ghz4_circuit();

enum class EmbeddingFailure { party_count_mismatch, common_cause_present };

class EmbeddingError : public ValidationError {
   public:
    EmbeddingError(EmbeddingFailure reason, const std::string &what) : ValidationError(what), reason_(reason) {
    }
    EmbeddingFailure reason() const {
        return reason_;
    }

   private:
    EmbeddingFailure reason_;
};

struct CanonicalEmbedding {
    CausalCircuit canonical;
    /// Original measurement ids (sorted) onto "A".."D".
    std::map<std::string, std::string> party_map;
    /// Canonical node id onto a node of fig1_circuit().
    std::map<std::string, std::string> node_map;
    /// Each canonical wire id onto a directed path of fig1 node ids. A path
    /// of length one means both endpoints land on the same fig1 node.
    std::map<std::string, std::vector<std::string>> wire_paths;
};

CanonicalEmbedding embed_into_canonical(const CausalCircuit &circuit);

}  // namespace coordcert

#endif
