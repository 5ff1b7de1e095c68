#include <gtest/gtest.h>

#include <iostream>
#include <random>

#include "support.hpp"
#include "zxg/classicalize.hpp"
#include "zxg/semantics.hpp"

using namespace zxg;
using namespace zxg::test;

namespace {

using L = Label;
const L kAll[] = {L::Q, L::X, L::Y, L::Z, L::Bot};

std::size_t idx(L l) { return static_cast<std::size_t>(l); }

// Written out by hand; rows/cols in the order Q, X, Y, Z, Bot.
const L kStar[5][5] = {
    /* Q   */ {L::Q, L::Q, L::Q, L::Z, L::Z},
    /* X   */ {L::Q, L::X, L::Y, L::Z, L::Bot},
    /* Y   */ {L::Q, L::Y, L::X, L::Z, L::Bot},
    /* Z   */ {L::Z, L::Z, L::Z, L::Z, L::Z},
    /* Bot */ {L::Z, L::Bot, L::Bot, L::Z, L::Bot},
};

// Label as a set of 1-qubit states, coarsely: which of the Z/X/Y Bloch
// components may be non-zero. Q = all, X = {x}, Y = {y}, Z = {z}, Bot = none.
unsigned bloch(L l) {
    switch (l) {
        case L::Q: return 7;
        case L::X: return 1;
        case L::Y: return 2;
        case L::Z: return 4;
        case L::Bot: return 0;
    }
    return 0;
}

const Phase kAngles[] = {Phase(0, 1), Phase(1, 4), Phase(1, 2), Phase(3, 4),
                         Phase(1, 1), Phase(5, 4), Phase(3, 2), Phase(7, 4)};

std::size_t wires_total(const HybridCircuit& c) { return c.wires.size(); }

HybridCircuit xor_circuit() {
    // bits 2, 3 are loaded into qubits 0, 1 and measured back
    HybridCircuit c = HybridCircuit::make(2, 2);
    c.gates = {Gate::prepare(2, 0), Gate::prepare(3, 1), Gate::cnot(0, 1), Gate::measure(0, 2), Gate::measure(1, 3)};
    return c;
}

}  // namespace

TEST(Labels, StarMatchesTable) {
    for (L a : kAll)
        for (L b : kAll) EXPECT_EQ(star(a, b), kStar[idx(a)][idx(b)]) << label_name(a) << "," << label_name(b);
    EXPECT_EQ(star(L::Z, L::Q), L::Z);
    EXPECT_EQ(star(L::X, L::Y), L::Y);
    EXPECT_EQ(star(L::Y, L::Y), L::X);
    EXPECT_EQ(star(L::Bot, L::Q), L::Z);
}

TEST(Labels, StarIsCommutativeMonoid) {
    for (L a : kAll) {
        EXPECT_EQ(star(L::X, a), a);
        for (L b : kAll) {
            EXPECT_EQ(star(a, b), star(b, a));
            for (L c : kAll) EXPECT_EQ(star(star(a, b), c), star(a, star(b, c)));
        }
    }
}

TEST(Labels, Rot) {
    EXPECT_EQ(rot(Phase::pi(), L::X), L::X);
    EXPECT_EQ(rot(Phase::half_pi(), L::X), L::Y);
    EXPECT_EQ(rot(Phase(3, 2), L::Y), L::X);
    EXPECT_EQ(rot(Phase(1, 4), L::Y), L::Q);
    for (Phase a : kAngles)
        for (L l : {L::Z, L::Q, L::Bot}) EXPECT_EQ(rot(a, l), l);
}

TEST(Labels, RotStarCompatibility) {
    for (Phase a : kAngles)
        for (L x : kAll)
            for (L y : kAll) EXPECT_TRUE(label_leq(rot(a, star(x, y)), star(rot(a, x), y)));
}

TEST(Labels, HadamardAndMeet) {
    EXPECT_EQ(hlabel(L::X), L::Z);
    EXPECT_EQ(hlabel(L::Y), L::Y);
    EXPECT_EQ(hlabel(L::Q), L::Q);
    EXPECT_EQ(meet(L::Q, L::Z), L::Z);
    EXPECT_EQ(meet(L::X, L::Z), L::Bot);
    EXPECT_EQ(meet(L::Y, L::Y), L::Y);
    for (L a : kAll) {
        EXPECT_EQ(hlabel(hlabel(a)), a);
        EXPECT_EQ(meet(a, a), a);
        for (L b : kAll) {
            EXPECT_EQ(meet(a, b), meet(b, a));
            // meet is intersection of the allowed Bloch components
            EXPECT_EQ(bloch(meet(a, b)), bloch(a) & bloch(b));
            EXPECT_EQ(label_leq(a, b), (bloch(a) & ~bloch(b)) == 0u);
            for (L c : kAll) EXPECT_EQ(meet(meet(a, b), c), meet(a, meet(b, c)));
        }
    }
}

TEST(Classicalize, XorChainIsClassical) {
    const auto c = xor_circuit();
    const auto r = classicalize(c);
    EXPECT_TRUE(r.classical_gate[2]);  // the CNOT
    for (std::size_t w : {0u, 1u}) {
        const auto* e = r.labelling.segment({w, 2});
        ASSERT_NE(e, nullptr);
        EXPECT_TRUE(e->at_a == L::Z || e->at_b == L::Z);
        const auto* f = r.labelling.segment({w, 3 + w});
        ASSERT_NE(f, nullptr);
        EXPECT_TRUE(f->at_a == L::Z || f->at_b == L::Z);
    }
    for (const auto& chk : validate_labelling(c, r.labelling)) EXPECT_TRUE(chk.ok);
}

TEST(Classicalize, AllQuantumStaysQ) {
    HybridCircuit c = HybridCircuit::make(2, 0);
    c.gates = {Gate::hadamard(0), Gate::cnot(0, 1), Gate::z(1, Phase(1, 4)), Gate::cz(0, 1), Gate::x(0, Phase(1, 2))};
    const auto r = classicalize(c);
    for (const auto& e : r.labelling.edges) {
        EXPECT_EQ(e.at_a, L::Q);
        EXPECT_EQ(e.at_b, L::Q);
    }
    for (bool b : r.classical_gate) EXPECT_FALSE(b);
    EXPECT_EQ(r.labelling.changes, 0u);
}

TEST(Classicalize, LocalSearchMissesEntangledIdentity) {
    // Two CZs cancel, so the outputs are really Z-diagonal, but the labels
    // around the CZ cycle never leave Q.
    HybridCircuit c;
    c.wires = {WireType::quantum, WireType::quantum, WireType::classical, WireType::classical};
    c.gates = {Gate::prepare(2, 0), Gate::prepare(3, 1), Gate::hadamard(0), Gate::hadamard(1), Gate::cz(0, 1),
               Gate::cz(0, 1),      Gate::hadamard(0),    Gate::hadamard(1)};
    auto r = classicalize(c);
    const std::size_t end = c.gates.size();
    for (std::size_t w : {0u, 1u}) {
        auto* e = const_cast<LabelEdge*>(r.labelling.segment({w, end}));
        ASSERT_NE(e, nullptr);
        EXPECT_EQ(e->at_a, L::Q);
        EXPECT_EQ(e->at_b, L::Q);
        // A Z label there would have been valid.
        e->at_a = L::Z;
    }
    for (const auto& chk : validate_labelling(c, r.labelling)) EXPECT_TRUE(chk.ok);
}

TEST(Classicalize, MeasuredWireDephasesFreely) {
    HybridCircuit c = HybridCircuit::make(1, 1);
    c.gates = {Gate::hadamard(0), Gate::measure(0, 1), Gate::qinit(0)};
    const auto r = classicalize(c);
    const auto* e = r.labelling.segment({1, c.gates.size()});
    ASSERT_NE(e, nullptr);
    EXPECT_TRUE(e->classical());
    const auto checks = validate_labelling(c, r.labelling);
    EXPECT_FALSE(checks.empty());
    for (const auto& chk : checks) EXPECT_TRUE(chk.ok);
}

TEST(Classicalize, CorruptedLabelIsCaught) {
    HybridCircuit c = HybridCircuit::make(1, 0);
    c.gates = {Gate::qterm(0), Gate::qinit(0), Gate::hadamard(0)};
    auto r = classicalize(c);
    auto* e = const_cast<LabelEdge*>(r.labelling.segment({0, 3}));
    ASSERT_NE(e, nullptr);
    // |+> is X-diagonal; Z is wrong.
    EXPECT_TRUE(e->at_a == L::X || e->at_b == L::X);
    e->at_a = e->at_b = L::Z;
    bool caught = false;
    for (const auto& chk : validate_labelling(c, r.labelling))
        if (chk.segment == WireSegment{0, 3}) caught = caught || !chk.ok;
    EXPECT_TRUE(caught);
}

TEST(Classicalize, SizeGuard) {
    HybridCircuit c = HybridCircuit::make(6, 0);
    const auto r = classicalize(c);
    EXPECT_THROW(validate_labelling(c, r.labelling), SizeLimitError);
}

TEST(Classicalize, SoundOnRandomCircuits) {
    std::mt19937_64 rng(71);
    std::size_t labelled = 0, classical_gates = 0;
    for (int i = 0; i < 120; ++i) {
        const auto c = random_hybrid_circuit(rng, 1 + rng() % 3, 1 + rng() % 2, 1 + rng() % 16);
        ASSERT_LE(wires_total(c), 5u);
        const auto r = classicalize(c);
        // Each endpoint can drop at most twice (Q -> middle -> Bot).
        EXPECT_LE(r.labelling.changes, 2 * r.labelling.endpoints());
        for (const auto& chk : validate_labelling(c, r.labelling)) {
            ++labelled;
            EXPECT_TRUE(chk.ok) << serialize_circuit(c) << "wire " << chk.segment.wire << " before "
                                << chk.segment.before_gate << " label " << label_name(chk.label);
        }
        for (bool b : r.classical_gate) classical_gates += b;
    }
    std::cout << "labels checked " << labelled << ", classical gates " << classical_gates << "\n";
    EXPECT_GT(labelled, 120u);
    EXPECT_GT(classical_gates, 20u);
}
