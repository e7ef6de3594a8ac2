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

#include "gtest/gtest.h"
#include "test_support.h"

using namespace coordcert;

namespace {

bool wired(const CausalCircuit &c, const std::string &from, const std::string &to) {
    return std::any_of(c.wires().begin(), c.wires().end(),
                       [&](const Wire &w) { return w.from == from && w.to == to; });
}

std::vector<PartySet> nonempty_subsets(const std::vector<std::string> &parties) {
    std::vector<PartySet> out;
    for (unsigned mask = 1; mask < (1u << parties.size()); ++mask) {
        PartySet s;
        for (size_t k = 0; k < parties.size(); ++k) {
            if (mask & (1u << k)) {
                s.insert(parties[k]);
            }
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(fig1, structure) {
    const CausalCircuit c = fig1_circuit();
    EXPECT_EQ(c.wires().size(), 24u);
    EXPECT_EQ(c.ids_of_kind(NodeKind::source), (std::vector<std::string>{"ABC", "ABD", "ACD", "BCD"}));
    EXPECT_EQ(c.ids_of_kind(NodeKind::transformation),
              (std::vector<std::string>{"AB", "AC", "AD", "BC", "BD", "CD"}));
    EXPECT_EQ(c.measurement_ids(), (std::vector<std::string>{"A", "B", "C", "D"}));
    EXPECT_TRUE(wired(c, "ABC", "AB"));
    EXPECT_TRUE(wired(c, "ABC", "AC"));
    EXPECT_TRUE(wired(c, "ABC", "BC"));
    EXPECT_FALSE(wired(c, "ABC", "D"));
    EXPECT_FALSE(measurement_future(c, "ABC").contains("D"));
    for (const auto &t : c.ids_of_kind(NodeKind::transformation)) {
        EXPECT_EQ(c.in_wires(t).size(), 2u);
        EXPECT_EQ(c.out_wires(t).size(), 2u);
        EXPECT_TRUE(wired(c, t, t.substr(0, 1)));
        EXPECT_TRUE(wired(c, t, t.substr(1, 1)));
    }
    EXPECT_TRUE(validate(c).ok()) << validate(c).to_string();
}

TEST(validate, reports_each_invariant) {
    {
        CausalCircuit c;
        c.add_node("s", NodeKind::source);
        c.add_node("t1", NodeKind::transformation);
        c.add_node("t2", NodeKind::transformation);
        c.add_node("A", NodeKind::measurement);
        c.add_wire("s", "t1");
        c.add_wire("t1", "t2");
        c.add_wire("t2", "t1");
        c.add_wire("t2", "A");
        const auto r = validate(c);
        EXPECT_TRUE(r.has(ViolationKind::cycle));
        EXPECT_THROW(c.topological_order(), ValidationError);
    }
    {
        CausalCircuit c;
        c.add_node("s", NodeKind::source);
        c.add_node("r", NodeKind::source);
        c.add_node("A", NodeKind::measurement);
        c.add_wire("r", "s");
        c.add_wire("s", "A");
        EXPECT_TRUE(validate(c).has(ViolationKind::source_has_inputs));
    }
    {
        CausalCircuit c;
        c.add_node("s", NodeKind::source);
        c.add_node("A", NodeKind::measurement);
        c.add_node("B", NodeKind::measurement);
        c.add_wire("s", "A");
        c.add_wire("A", "B");
        EXPECT_TRUE(validate(c).has(ViolationKind::measurement_has_outputs));
    }
    {
        CausalCircuit c;
        c.add_node("s", NodeKind::source);
        c.add_node("t", NodeKind::transformation);
        c.add_node("u", NodeKind::transformation);
        c.add_node("A", NodeKind::measurement);
        c.add_wire("s", "t");
        c.add_wire("u", "A");
        const auto r = validate(c);
        EXPECT_TRUE(r.has(ViolationKind::transformation_without_outputs));
        EXPECT_TRUE(r.has(ViolationKind::transformation_without_inputs));
    }
    {
        CausalCircuit c;
        c.add_node("s", NodeKind::source);
        c.add_node("s", NodeKind::source);
        c.add_node("A", NodeKind::measurement, 0);
        c.add_wire("s", "A", 2, "w");
        c.add_wire("s", "A", 0, "w");
        c.add_wire("s", "Z");
        const auto r = validate(c);
        EXPECT_TRUE(r.has(ViolationKind::duplicate_node));
        EXPECT_TRUE(r.has(ViolationKind::duplicate_wire));
        EXPECT_TRUE(r.has(ViolationKind::unknown_endpoint));
        EXPECT_TRUE(r.has(ViolationKind::bad_outcome_count));
        EXPECT_TRUE(r.has(ViolationKind::bad_dimension));
        EXPECT_THROW(require_valid(c), ValidationError);
    }
}

TEST(measurement_future, fig1_examples) {
    const CausalCircuit c = fig1_circuit();
    EXPECT_EQ(measurement_future(c, "ABC"), (PartySet{"A", "B", "C"}));
    EXPECT_EQ(measurement_future(c, "CD"), (PartySet{"C", "D"}));
    EXPECT_EQ(measurement_future(c, "A"), (PartySet{"A"}));
    EXPECT_THROW(measurement_future(c, "nope"), ValidationError);
}

TEST(measurement_future, monotone_under_wire_addition) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        CausalCircuit c = test_support::random_dag(rng, 4, 3, 4);
        std::map<std::string, PartySet> before;
        for (const auto &n : c.nodes()) {
            before[n.id] = measurement_future(c, n.id);
        }
        // Adding a wire from a source to a measurement keeps the DAG valid.
        const auto sources = c.ids_of_kind(NodeKind::source);
        std::uniform_int_distribution<size_t> ps(0, sources.size() - 1);
        std::uniform_int_distribution<int> pm(0, 3);
        c.add_wire(sources[ps(rng)], std::string(1, static_cast<char>('A' + pm(rng))));
        ASSERT_TRUE(validate(c).ok());
        for (const auto &n : c.nodes()) {
            const PartySet after = measurement_future(c, n.id);
            EXPECT_TRUE(std::includes(after.begin(), after.end(), before[n.id].begin(), before[n.id].end()));
            for (const auto &m : after) {
                EXPECT_EQ(c.node(m).kind, NodeKind::measurement);
            }
        }
    }
}

TEST(shares_common_cause, fig1_examples) {
    const CausalCircuit c = fig1_circuit();
    EXPECT_FALSE(shares_common_cause(c, {"A", "B", "C", "D"}));
    EXPECT_TRUE(shares_common_cause(c, {"A", "B"}));
    EXPECT_EQ(common_cause_witness(c, {"A", "B"}).value(), "ABC");
    EXPECT_TRUE(shares_common_cause(c, {"A", "B", "C"}));
    EXPECT_EQ(common_cause_witness(c, {"A", "B", "C"}).value(), "ABC");
    EXPECT_TRUE(shares_common_cause(c, {"A"}));
    EXPECT_THROW(shares_common_cause(c, {"A", "X"}), ValidationError);
    EXPECT_THROW(shares_common_cause(c, {"AB"}), ValidationError);
}

TEST(shares_common_cause, subsets_of_shared_sets_share) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const CausalCircuit c = test_support::random_dag(rng, 4, 3, 4);
        for (const auto &s : nonempty_subsets(c.measurement_ids())) {
            if (s.size() == 1) {
                EXPECT_TRUE(shares_common_cause(c, s));
            }
            if (!shares_common_cause(c, s)) {
                continue;
            }
            for (const auto &t : nonempty_subsets({s.begin(), s.end()})) {
                EXPECT_TRUE(shares_common_cause(c, t));
            }
        }
    }
}

TEST(canonicalize, fig1_is_already_canonical) {
    const CausalCircuit c = fig1_circuit();
    std::set<PartySet> labels;
    for (const auto &n : c.nodes()) {
        if (n.kind != NodeKind::measurement) {
            EXPECT_TRUE(labels.insert(measurement_future(c, n.id)).second) << n.id;
        }
    }
    EXPECT_EQ(canonicalize(c), c);
}

TEST(canonicalize, merges_parallel_sources) {
    CausalCircuit c;
    for (const char *m : {"A", "B"}) {
        c.add_node(m, NodeKind::measurement);
    }
    for (const char *s : {"s1", "s2"}) {
        c.add_node(s, NodeKind::source);
        c.add_wire(s, "A");
        c.add_wire(s, "B");
    }
    const CausalCircuit k = canonicalize(c);
    EXPECT_EQ(k.ids_of_kind(NodeKind::source), (std::vector<std::string>{"AB"}));
    ASSERT_EQ(k.wires().size(), 2u);
    // Two parallel qubit wires collapse into one wire of dimension 4.
    EXPECT_EQ(k.wires()[0].dim, 4);
    EXPECT_TRUE(validate(k).ok());
}

TEST(canonicalize, drops_nodes_without_measurement_future) {
    CausalCircuit c;
    c.add_node("A", NodeKind::measurement);
    c.add_node("s", NodeKind::source);
    c.add_node("t", NodeKind::transformation);
    c.add_node("u", NodeKind::transformation);
    c.add_node("idle", NodeKind::source);
    c.add_wire("s", "t");
    c.add_wire("t", "u");
    c.add_wire("u", "A");
    ASSERT_TRUE(validate(c).ok());
    const CausalCircuit k = canonicalize(c);
    // s, t and u all carry label {A} and merge into one source; "idle" has an
    // empty label and disappears.
    EXPECT_EQ(k.nodes().size(), 2u);
    EXPECT_EQ(k.ids_of_kind(NodeKind::source).size(), 1u);
    EXPECT_TRUE(validate(k).ok());
}

TEST(canonicalize, random_dags_properties) {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const CausalCircuit c = test_support::random_dag(rng, 4, 4, 5);
        ASSERT_TRUE(validate(c).ok()) << validate(c).to_string();
        const CausalCircuit k = canonicalize(c);
        EXPECT_TRUE(validate(k).ok()) << validate(k).to_string();
        EXPECT_EQ(canonicalize(k), k);
        EXPECT_EQ(k.measurement_ids(), c.measurement_ids());
        for (const auto &s : nonempty_subsets(c.measurement_ids())) {
            EXPECT_EQ(shares_common_cause(k, s), shares_common_cause(c, s));
        }
        std::set<PartySet> labels;
        for (const auto &n : k.nodes()) {
            if (n.kind != NodeKind::measurement) {
                EXPECT_TRUE(labels.insert(measurement_future(k, n.id)).second);
            }
        }
    }
}

TEST(canonicalize, rejects_invalid_circuit) {
    CausalCircuit c;
    c.add_node("A", NodeKind::measurement);
    c.add_node("t", NodeKind::transformation);
    c.add_wire("t", "A");
    EXPECT_THROW(canonicalize(c), ValidationError);
}

namespace {

void expect_valid_embedding(const CausalCircuit &c, const CanonicalEmbedding &e) {
    const CausalCircuit fig1 = fig1_circuit();
    for (const auto &n : e.canonical.nodes()) {
        const std::string &target = e.node_map.at(n.id);
        ASSERT_NE(fig1.find_node(target), nullptr);
        PartySet mapped;
        for (const auto &p : measurement_future(e.canonical, n.id)) {
            mapped.insert(e.party_map.at(p));
        }
        const PartySet home = measurement_future(fig1, target);
        EXPECT_TRUE(std::includes(home.begin(), home.end(), mapped.begin(), mapped.end())) << n.id;
    }
    for (const auto &w : e.canonical.wires()) {
        const auto &path = e.wire_paths.at(w.id);
        ASSERT_FALSE(path.empty());
        EXPECT_EQ(path.front(), e.node_map.at(w.from));
        EXPECT_EQ(path.back(), e.node_map.at(w.to));
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            EXPECT_TRUE(wired(fig1, path[i], path[i + 1])) << path[i] << "->" << path[i + 1];
        }
    }
    (void)c;
}

}  // namespace

TEST(embed_into_canonical, fig1_is_identity) {
    const CausalCircuit c = fig1_circuit();
    const auto e = embed_into_canonical(c);
    for (const auto &n : c.nodes()) {
        EXPECT_EQ(e.node_map.at(n.id), n.id);
    }
    for (const auto &w : c.wires()) {
        EXPECT_EQ(e.wire_paths.at(w.id), (std::vector<std::string>{w.from, w.to}));
    }
    expect_valid_embedding(c, e);
}

TEST(embed_into_canonical, global_source_is_rejected) {
    const CausalCircuit c = ghz4_circuit();
    try {
        embed_into_canonical(c);
        FAIL();
    } catch (const EmbeddingError &e) {
        EXPECT_EQ(e.reason(), EmbeddingFailure::common_cause_present);
    }
}

TEST(embed_into_canonical, party_count_mismatch) {
    CausalCircuit c;
    c.add_node("s", NodeKind::source);
    for (const char *m : {"A", "B", "C"}) {
        c.add_node(m, NodeKind::measurement);
        c.add_wire("s", m);
    }
    try {
        embed_into_canonical(c);
        FAIL();
    } catch (const EmbeddingError &e) {
        EXPECT_EQ(e.reason(), EmbeddingFailure::party_count_mismatch);
    }
}

TEST(embed_into_canonical, bipartite_chain_sources) {
    CausalCircuit c;
    for (const char *m : {"A", "B", "C", "D"}) {
        c.add_node(m, NodeKind::measurement);
    }
    for (const std::string s : {"AB", "BC", "CD"}) {
        c.add_node("src" + s, NodeKind::source);
        c.add_wire("src" + s, s.substr(0, 1));
        c.add_wire("src" + s, s.substr(1, 1));
    }
    const auto e = embed_into_canonical(c);
    EXPECT_EQ(e.node_map.at("AB"), "AB");
    EXPECT_EQ(e.node_map.at("CD"), "CD");
    EXPECT_EQ(e.wire_paths.at("BC->C"), (std::vector<std::string>{"BC", "C"}));
    expect_valid_embedding(c, e);
}

TEST(embed_into_canonical, tripartite_source_straight_into_parties) {
    CausalCircuit c;
    for (const char *m : {"A", "B", "C", "D"}) {
        c.add_node(m, NodeKind::measurement);
    }
    c.add_node("s", NodeKind::source);
    for (const char *m : {"B", "C", "D"}) {
        c.add_wire("s", m);
    }
    c.add_node("r", NodeKind::source);
    c.add_wire("r", "A");
    const auto e = embed_into_canonical(c);
    EXPECT_EQ(e.node_map.at("BCD"), "BCD");
    EXPECT_EQ(e.wire_paths.at("BCD->B").size(), 3u);
    expect_valid_embedding(c, e);
}

TEST(embed_into_canonical, succeeds_iff_no_global_common_cause) {
    Rng rng(99);
    int embedded = 0, rejected = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const CausalCircuit c = test_support::random_dag(rng, 4, 4, 3);
        const bool shared = shares_common_cause(c, {"A", "B", "C", "D"});
        try {
            const auto e = embed_into_canonical(c);
            EXPECT_FALSE(shared);
            expect_valid_embedding(c, e);
            ++embedded;
        } catch (const EmbeddingError &err) {
            EXPECT_TRUE(shared);
            EXPECT_EQ(err.reason(), EmbeddingFailure::common_cause_present);
            ++rejected;
        }
    }
    EXPECT_GT(embedded, 20);
    EXPECT_GT(rejected, 20);
}

TEST(label_id, concatenates_and_avoids_measurement_ids) {
    const PartySet ms{"A", "B", "C", "D"};
    EXPECT_EQ(label_id({"A", "C"}, ms), "AC");
    EXPECT_NE(label_id({"A"}, ms), "A");
    EXPECT_EQ(label_id({"x1", "y2"}, {"x1", "y2"}), "x1.y2");
}

TEST(circuit, wire_ids_and_ordering) {
    CausalCircuit c;
    c.add_node("s", NodeKind::source);
    c.add_node("A", NodeKind::measurement);
    EXPECT_EQ(c.add_wire("s", "A"), "s->A");
    EXPECT_EQ(c.add_wire("s", "A"), "s->A#1");
    EXPECT_EQ(c.in_wires("A").size(), 2u);
    EXPECT_EQ(to_string(NodeKind::transformation), "transformation");
    EXPECT_EQ(node_kind_from_string("source"), NodeKind::source);
    EXPECT_THROW(node_kind_from_string("nope"), ValidationError);
}
