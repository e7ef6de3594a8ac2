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

#include "coordcert/circuit.h"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>
#include <tuple>

namespace coordcert {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::source:
            return "source";
        case NodeKind::transformation:
            return "transformation";
        case NodeKind::measurement:
            return "measurement";
    }
    return "?";
}

NodeKind node_kind_from_string(std::string_view text) {
    if (text == "source") {
        return NodeKind::source;
    }
    if (text == "transformation") {
        return NodeKind::transformation;
    }
    if (text == "measurement") {
        return NodeKind::measurement;
    }
    throw ValidationError("unknown node kind '" + std::string(text) + "'");
}

void CausalCircuit::add_node(std::string id, NodeKind kind, int outcomes) {
    nodes_.push_back(Node{std::move(id), kind, outcomes});
}

std::string CausalCircuit::add_wire(const std::string &from, const std::string &to, int dim, std::string id) {
    if (id.empty()) {
        std::string base = from + "->" + to;
        id = base;
        for (int k = 1; find_wire(id) != nullptr; ++k) {
            id = base + "#" + std::to_string(k);
        }
    }
    wires_.push_back(Wire{id, from, to, dim});
    return id;
}

const Node *CausalCircuit::find_node(std::string_view id) const {
    for (const auto &n : nodes_) {
        if (n.id == id) {
            return &n;
        }
    }
    return nullptr;
}

const Node &CausalCircuit::node(std::string_view id) const {
    const Node *n = find_node(id);
    if (n == nullptr) {
        throw ValidationError("unknown node '" + std::string(id) + "'");
    }
    return *n;
}

const Wire *CausalCircuit::find_wire(std::string_view id) const {
    for (const auto &w : wires_) {
        if (w.id == id) {
            return &w;
        }
    }
    return nullptr;
}

namespace {

std::vector<const Wire *> sorted_by_id(std::vector<const Wire *> ws) {
    std::sort(ws.begin(), ws.end(), [](const Wire *a, const Wire *b) {
        return a->id < b->id;
    });
    return ws;
}

}  // namespace

std::vector<const Wire *> CausalCircuit::in_wires(std::string_view id) const {
    std::vector<const Wire *> out;
    for (const auto &w : wires_) {
        if (w.to == id) {
            out.push_back(&w);
        }
    }
    return sorted_by_id(std::move(out));
}

std::vector<const Wire *> CausalCircuit::out_wires(std::string_view id) const {
    std::vector<const Wire *> out;
    for (const auto &w : wires_) {
        if (w.from == id) {
            out.push_back(&w);
        }
    }
    return sorted_by_id(std::move(out));
}

std::vector<std::string> CausalCircuit::ids_of_kind(NodeKind kind) const {
    std::vector<std::string> out;
    for (const auto &n : nodes_) {
        if (n.kind == kind) {
            out.push_back(n.id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> CausalCircuit::topological_order() const {
    std::map<std::string, int> indegree;
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto &n : nodes_) {
        indegree[n.id];
    }
    for (const auto &w : wires_) {
        if (indegree.count(w.from) == 0 || indegree.count(w.to) == 0) {
            throw ValidationError("wire '" + w.id + "' references an unknown node");
        }
        indegree[w.to]++;
        succ[w.from].push_back(w.to);
    }
    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto &[id, deg] : indegree) {
        if (deg == 0) {
            ready.push(id);
        }
    }
    std::vector<std::string> order;
    while (!ready.empty()) {
        std::string id = ready.top();
        ready.pop();
        order.push_back(id);
        for (const auto &t : succ[id]) {
            if (--indegree[t] == 0) {
                ready.push(t);
            }
        }
    }
    if (order.size() != indegree.size()) {
        throw ValidationError("circuit contains a directed cycle");
    }
    return order;
}

CausalCircuit CausalCircuit::sorted() const {
    CausalCircuit out = *this;
    std::sort(out.nodes_.begin(), out.nodes_.end(), [](const Node &a, const Node &b) {
        return a.id < b.id;
    });
    std::sort(out.wires_.begin(), out.wires_.end(), [](const Wire &a, const Wire &b) {
        return std::tie(a.from, a.to, a.id) < std::tie(b.from, b.to, b.id);
    });
    return out;
}

bool CausalCircuit::operator==(const CausalCircuit &other) const {
    CausalCircuit a = sorted();
    CausalCircuit b = other.sorted();
    if (a.nodes_.size() != b.nodes_.size() || a.wires_.size() != b.wires_.size()) {
        return false;
    }
    for (size_t i = 0; i < a.nodes_.size(); ++i) {
        const auto &x = a.nodes_[i];
        const auto &y = b.nodes_[i];
        if (x.id != y.id || x.kind != y.kind ||
            (x.kind == NodeKind::measurement && x.outcomes != y.outcomes)) {
            return false;
        }
    }
    for (size_t i = 0; i < a.wires_.size(); ++i) {
        const auto &x = a.wires_[i];
        const auto &y = b.wires_[i];
        if (x.id != y.id || x.from != y.from || x.to != y.to || x.dim != y.dim) {
            return false;
        }
    }
    return true;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::duplicate_node:
            return "duplicate-node";
        case ViolationKind::duplicate_wire:
            return "duplicate-wire";
        case ViolationKind::unknown_endpoint:
            return "unknown-endpoint";
        case ViolationKind::cycle:
            return "cycle";
        case ViolationKind::source_has_inputs:
            return "source-has-inputs";
        case ViolationKind::measurement_has_outputs:
            return "measurement-has-outputs";
        case ViolationKind::transformation_without_inputs:
            return "transformation-without-inputs";
        case ViolationKind::transformation_without_outputs:
            return "transformation-without-outputs";
        case ViolationKind::bad_outcome_count:
            return "bad-outcome-count";
        case ViolationKind::bad_dimension:
            return "bad-dimension";
    }
    return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation &v) {
        return v.kind == kind;
    });
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto &v : violations) {
        out << coordcert::to_string(v.kind) << " [" << v.subject << "]: " << v.message << "\n";
    }
    return out.str();
}

ValidationReport validate(const CausalCircuit &circuit) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, const std::string &subject, const std::string &message) {
        report.violations.push_back(Violation{kind, subject, message});
    };

    std::set<std::string> node_ids;
    for (const auto &n : circuit.nodes()) {
        if (!node_ids.insert(n.id).second) {
            add(ViolationKind::duplicate_node, n.id, "node id used more than once");
        }
        if (n.kind == NodeKind::measurement && n.outcomes < 1) {
            add(ViolationKind::bad_outcome_count, n.id, "measurement needs at least one outcome");
        }
    }
    std::set<std::string> wire_ids;
    bool endpoints_ok = true;
    for (const auto &w : circuit.wires()) {
        if (!wire_ids.insert(w.id).second) {
            add(ViolationKind::duplicate_wire, w.id, "wire id used more than once");
        }
        if (!node_ids.count(w.from) || !node_ids.count(w.to)) {
            add(ViolationKind::unknown_endpoint, w.id, "wire " + w.from + " -> " + w.to + " has an unknown endpoint");
            endpoints_ok = false;
        }
        if (w.dim < 1) {
            add(ViolationKind::bad_dimension, w.id, "wire dimension must be positive");
        }
    }

    std::map<std::string, int> indeg;
    std::map<std::string, int> outdeg;
    for (const auto &w : circuit.wires()) {
        indeg[w.to]++;
        outdeg[w.from]++;
    }
    for (const auto &n : circuit.nodes()) {
        switch (n.kind) {
            case NodeKind::source:
                if (indeg[n.id] > 0) {
                    add(ViolationKind::source_has_inputs, n.id, "source node has incoming wires");
                }
                break;
            case NodeKind::measurement:
                if (outdeg[n.id] > 0) {
                    add(ViolationKind::measurement_has_outputs, n.id, "measurement node has outgoing wires");
                }
                break;
            case NodeKind::transformation:
                if (indeg[n.id] == 0) {
                    add(ViolationKind::transformation_without_inputs, n.id, "transformation has no incoming wire");
                }
                if (outdeg[n.id] == 0) {
                    add(ViolationKind::transformation_without_outputs, n.id, "transformation has no outgoing wire");
                }
                break;
        }
    }

    if (endpoints_ok) {
        try {
            (void)circuit.topological_order();
        } catch (const ValidationError &) {
            add(ViolationKind::cycle, "", "circuit contains a directed cycle");
        }
    }
    return report;
}

void require_valid(const CausalCircuit &circuit) {
    ValidationReport report = validate(circuit);
    if (!report.ok()) {
        const auto &v = report.violations.front();
        throw ValidationError("invalid circuit: " + std::string(to_string(v.kind)) + " [" + v.subject + "]: " + v.message);
    }
}

PartySet measurement_future(const CausalCircuit &circuit, std::string_view id) {
    (void)circuit.node(id);
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto &w : circuit.wires()) {
        succ[w.from].push_back(w.to);
    }
    PartySet out;
    std::set<std::string> seen{std::string(id)};
    std::deque<std::string> todo{std::string(id)};
    while (!todo.empty()) {
        std::string cur = todo.front();
        todo.pop_front();
        const Node *n = circuit.find_node(cur);
        if (n != nullptr && n->kind == NodeKind::measurement) {
            out.insert(cur);
        }
        for (const auto &t : succ[cur]) {
            if (seen.insert(t).second) {
                todo.push_back(t);
            }
        }
    }
    return out;
}

std::optional<std::string> common_cause_witness(const CausalCircuit &circuit, const PartySet &parties) {
    for (const auto &p : parties) {
        if (circuit.node(p).kind != NodeKind::measurement) {
            throw ValidationError("'" + p + "' is not a measurement node");
        }
    }
    for (const auto &id : circuit.topological_order()) {
        PartySet future = measurement_future(circuit, id);
        if (std::includes(future.begin(), future.end(), parties.begin(), parties.end())) {
            return id;
        }
    }
    return std::nullopt;
}

bool shares_common_cause(const CausalCircuit &circuit, const PartySet &parties) {
    return common_cause_witness(circuit, parties).has_value();
}

std::string label_id(const PartySet &label, const PartySet &measurement_ids) {
    bool short_ids = std::all_of(label.begin(), label.end(), [](const std::string &s) {
        return s.size() == 1;
    });
    std::string id;
    for (const auto &p : label) {
        if (!id.empty() && !short_ids) {
            id += '.';
        }
        id += p;
    }
    if (measurement_ids.count(id)) {
        id += '#';
    }
    return id;
}

CausalCircuit canonicalize(const CausalCircuit &circuit) {
    require_valid(circuit);
    std::vector<std::string> party_list = circuit.measurement_ids();
    PartySet parties(party_list.begin(), party_list.end());

    // Node id -> merged id; dropped nodes are absent.
    std::map<std::string, std::string> merged;
    std::map<PartySet, std::vector<std::string>> groups;
    for (const auto &n : circuit.nodes()) {
        if (n.kind == NodeKind::measurement) {
            merged[n.id] = n.id;
            continue;
        }
        PartySet label = measurement_future(circuit, n.id);
        if (!label.empty()) {
            groups[label].push_back(n.id);
        }
    }
    for (const auto &[label, members] : groups) {
        for (const auto &m : members) {
            merged[m] = label_id(label, parties);
        }
    }

    CausalCircuit out;
    for (const auto &[label, members] : groups) {
        const std::string gid = label_id(label, parties);
        bool fed_from_outside = false;
        for (const auto &w : circuit.wires()) {
            auto it = merged.find(w.to);
            auto jt = merged.find(w.from);
            if (it != merged.end() && it->second == gid && (jt == merged.end() || jt->second != gid)) {
                fed_from_outside = true;
            }
        }
        out.add_node(gid, fed_from_outside ? NodeKind::transformation : NodeKind::source);
    }
    for (const auto &n : circuit.nodes()) {
        if (n.kind == NodeKind::measurement) {
            out.add_node(n.id, NodeKind::measurement, n.outcomes);
        }
    }

    std::map<std::pair<std::string, std::string>, int> collapsed;
    for (const auto &w : circuit.wires()) {
        auto from = merged.find(w.from);
        auto to = merged.find(w.to);
        if (from == merged.end() || to == merged.end() || from->second == to->second) {
            continue;
        }
        auto key = std::make_pair(from->second, to->second);
        auto [it, inserted] = collapsed.emplace(key, w.dim);
        if (!inserted) {
            it->second *= w.dim;
        }
    }
    for (const auto &[key, dim] : collapsed) {
        out.add_wire(key.first, key.second, dim);
    }
    return out.sorted();
}

CausalCircuit fig1_circuit() {
    const std::vector<std::string> parties{"A", "B", "C", "D"};
    CausalCircuit c;
    std::vector<std::string> sources;
    for (int skip = 3; skip >= 0; --skip) {
        std::string id;
        for (int i = 0; i < 4; ++i) {
            if (i != skip) {
                id += parties[i];
            }
        }
        sources.push_back(id);
    }
    std::sort(sources.begin(), sources.end());
    for (const auto &s : sources) {
        c.add_node(s, NodeKind::source);
    }
    std::vector<std::string> pairs;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            pairs.push_back(parties[i] + parties[j]);
            c.add_node(pairs.back(), NodeKind::transformation);
        }
    }
    for (const auto &p : parties) {
        c.add_node(p, NodeKind::measurement, 2);
    }
    for (const auto &s : sources) {
        for (const auto &t : pairs) {
            if (s.find(t[0]) != std::string::npos && s.find(t[1]) != std::string::npos) {
                c.add_wire(s, t, 2);
            }
        }
    }
    for (const auto &t : pairs) {
        c.add_wire(t, std::string(1, t[0]), 2);
        c.add_wire(t, std::string(1, t[1]), 2);
    }
    return c.sorted();
}

CausalCircuit ghz4_circuit() {
    CausalCircuit c;
    c.add_node("ABCD", NodeKind::source);
    for (const char *p : {"A", "B", "C", "D"}) {
        c.add_node(p, NodeKind::measurement, 2);
        c.add_wire("ABCD", p, 2);
    }
    return c.sorted();
}

namespace {

bool has_wire(const CausalCircuit &c, const std::string &from, const std::string &to) {
    for (const auto &w : c.wires()) {
        if (w.from == from && w.to == to) {
            return true;
        }
    }
    return false;
}

}  // namespace

CanonicalEmbedding embed_into_canonical(const CausalCircuit &circuit) {
    require_valid(circuit);
    std::vector<std::string> parties = circuit.measurement_ids();
    if (parties.size() != 4) {
        throw EmbeddingError(EmbeddingFailure::party_count_mismatch,
                             "embedding needs exactly 4 measurement nodes, found " + std::to_string(parties.size()));
    }
    PartySet all(parties.begin(), parties.end());
    if (auto witness = common_cause_witness(circuit, all)) {
        throw EmbeddingError(EmbeddingFailure::common_cause_present,
                             "node '" + *witness + "' is a common cause of all four parties");
    }

    CanonicalEmbedding emb;
    emb.canonical = canonicalize(circuit);
    const char *letters[] = {"A", "B", "C", "D"};
    for (size_t i = 0; i < 4; ++i) {
        emb.party_map[parties[i]] = letters[i];
    }
    auto fig1_label = [&](const PartySet &label) {
        std::string out;
        for (const auto &p : label) {
            out += emb.party_map.at(p);
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    for (const auto &n : emb.canonical.nodes()) {
        if (n.kind == NodeKind::measurement) {
            emb.node_map[n.id] = emb.party_map.at(n.id);
        } else {
            // Labels have size 1..3 here; size 1 lands on the measurement itself.
            emb.node_map[n.id] = fig1_label(measurement_future(emb.canonical, n.id));
        }
    }

    const CausalCircuit fig1 = fig1_circuit();
    for (const auto &w : emb.canonical.wires()) {
        const std::string &from = emb.node_map.at(w.from);
        const std::string &to = emb.node_map.at(w.to);
        std::vector<std::string> path;
        if (from == to) {
            path = {from};
        } else if (has_wire(fig1, from, to)) {
            path = {from, to};
        } else {
            // source (3 letters) into a single party: route through the first
            // transformation of the source that reaches it.
            std::string via;
            for (char c : from) {
                std::string pair{std::min(c, to[0]), std::max(c, to[0])};
                if (c != to[0] && has_wire(fig1, from, pair)) {
                    via = pair;
                    break;
                }
            }
            path = {from, via, to};
        }
        emb.wire_paths[w.id] = path;
    }
    return emb;
}

}  // namespace coordcert
