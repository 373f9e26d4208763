#include "lcsft/synth.hpp"

#include <gtest/gtest.h>

#include "lcsft/encoder.hpp"
#include "lcsft/propagate.hpp"
#include "lcsft/tableau.hpp"

using namespace lcsft;

namespace {

StabilizerCode the_code() { return lcs_15_3_3(); }

// Checks G L G^dag == expected * s for a positive stabilizer element s.
void expect_logical_action(const StabilizerCode &code, const Circuit &bare,
                           const PauliOperator &in, const PauliOperator &expected) {
    PauliOperator got = circuit_conjugate(bare, in);
    PauliOperator diff = got * expected.inverse();
    EXPECT_TRUE(code.is_exact_stabilizer_element(diff))
        << "in " << in.str() << " out " << got.str() << " expected " << expected.str();
}

PauliOperator logical_y(const StabilizerCode &code, uint32_t i) {
    PauliOperator y = code.logical_x[i] * code.logical_z[i];
    y.phase = static_cast<uint8_t>((y.phase + 1) & 3);
    return y;
}

TEST(Synth, BareHadamardLogicalAction) {
    StabilizerCode code = the_code();
    for (uint32_t i = 0; i < 3; i++) {
        Circuit bare = synth_logical(code, {LogicalGate::H, {i}, GateFlavor::Bare}).circuit;
        expect_logical_action(code, bare, code.logical_x[i], code.logical_z[i]);
        expect_logical_action(code, bare, code.logical_z[i], code.logical_x[i]);
        PauliOperator minus_y = logical_y(code, i);
        minus_y.phase = static_cast<uint8_t>((minus_y.phase + 2) & 3);
        expect_logical_action(code, bare, logical_y(code, i), minus_y);
        // Untouched logicals and all generators are preserved.
        for (uint32_t j = 0; j < 3; j++) {
            if (j != i) {
                expect_logical_action(code, bare, code.logical_x[j], code.logical_x[j]);
                expect_logical_action(code, bare, code.logical_z[j], code.logical_z[j]);
            }
        }
        for (const auto &g : code.generators) {
            PauliOperator img = circuit_conjugate(bare, g);
            EXPECT_TRUE(code.is_exact_stabilizer_element(img)) << g.str() << " -> " << img.str();
        }
    }
}

TEST(Synth, BareSGateLogicalAction) {
    StabilizerCode code = the_code();
    for (uint32_t i = 0; i < 3; i++) {
        Circuit bare = synth_logical(code, {LogicalGate::S, {i}, GateFlavor::Bare}).circuit;
        // S: X -> Y, Z -> Z, Y -> -X.
        expect_logical_action(code, bare, code.logical_x[i], logical_y(code, i));
        expect_logical_action(code, bare, code.logical_z[i], code.logical_z[i]);
        PauliOperator minus_x = code.logical_x[i];
        minus_x.phase = 2;
        expect_logical_action(code, bare, logical_y(code, i), minus_x);
        for (const auto &g : code.generators) {
            EXPECT_TRUE(code.is_exact_stabilizer_element(circuit_conjugate(bare, g)));
        }
    }
}

TEST(Synth, BareCxLogicalAction) {
    StabilizerCode code = the_code();
    for (uint32_t i = 0; i < 3; i++) {
        for (uint32_t j = 0; j < 3; j++) {
            if (i == j) {
                continue;
            }
            Circuit bare =
                synth_logical(code, {LogicalGate::CX, {i, j}, GateFlavor::Bare}).circuit;
            expect_logical_action(code, bare, code.logical_x[i],
                                  code.logical_x[i] * code.logical_x[j]);
            expect_logical_action(code, bare, code.logical_z[i], code.logical_z[i]);
            expect_logical_action(code, bare, code.logical_x[j], code.logical_x[j]);
            expect_logical_action(code, bare, code.logical_z[j],
                                  code.logical_z[i] * code.logical_z[j]);
            for (const auto &g : code.generators) {
                EXPECT_TRUE(code.is_exact_stabilizer_element(circuit_conjugate(bare, g)));
            }
        }
    }
}

TEST(Synth, TableIResourceCounts) {
    StabilizerCode code = the_code();
    struct Want {
        LogicalGate kind;
        std::vector<uint32_t> logicals;
        uint32_t bare, flagged, ft;
    };
    std::vector<Want> wants = {
        {LogicalGate::H, {0}, 3, 18, 75},
        {LogicalGate::S, {0}, 3, 18, 72},
        {LogicalGate::CX, {0, 1}, 9, 21, 75},
    };
    for (const auto &w : wants) {
        auto bare = synth_logical(code, {w.kind, w.logicals, GateFlavor::Bare});
        auto flagged = synth_logical(code, {w.kind, w.logicals, GateFlavor::Flagged});
        auto ft = synth_logical(code, {w.kind, w.logicals, GateFlavor::FlaggedWithStabs});
        EXPECT_EQ(bare.entangling_count, w.bare);
        EXPECT_EQ(flagged.entangling_count, w.flagged);
        EXPECT_EQ(ft.ft_reference_entangling, w.ft);
        EXPECT_EQ(flagged.flag_qubits.size(), 6u);
        EXPECT_LE(ft.flag_qubits.size(), 6u);
    }
}

// All three flavors act as the same logical channel on every relevant input.
void expect_flavor_equivalence(const StabilizerCode &code, LogicalGate kind,
                               std::vector<uint32_t> logicals) {
    std::vector<LogicalStateSpec> bases;
    for (uint8_t b : {kX, kY, kZ}) {
        for (bool minus : {false, true}) {
            bases.push_back({b, minus});
        }
    }
    size_t combos = logicals.size() == 1 ? 6 : 36;
    for (size_t ci = 0; ci < combos; ci++) {
        std::vector<LogicalStateSpec> state(code.k, {kZ, false});
        state[logicals[0]] = bases[ci % 6];
        if (logicals.size() == 2) {
            state[logicals[1]] = bases[ci / 6];
        }
        Circuit prep = perfect_encoder(code, state);
        std::vector<std::vector<std::string>> results;
        for (GateFlavor f : {GateFlavor::Bare, GateFlavor::Flagged, GateFlavor::FlaggedWithStabs}) {
            auto gate = synth_logical(code, {kind, logicals, f});
            Circuit full = prep;
            full.append(gate.circuit);
            TableauSim sim(full.n_qubits);
            Rng rng(7);
            run_on_tableau(sim, full, rng);
            results.push_back(sim.canonical_stabilizers_on(code.n));
        }
        EXPECT_EQ(results[0], results[1]);
        EXPECT_EQ(results[0], results[2]);
    }
}

TEST(Synth, FlavorsImplementSameLogicalChannel) {
    StabilizerCode code = the_code();
    for (uint32_t i = 0; i < 3; i++) {
        expect_flavor_equivalence(code, LogicalGate::H, {i});
        expect_flavor_equivalence(code, LogicalGate::S, {i});
    }
    expect_flavor_equivalence(code, LogicalGate::CX, {0, 1});
    expect_flavor_equivalence(code, LogicalGate::CX, {2, 1});
}

TEST(Synth, FlaggedCircuitDetectorsAreValid) {
    StabilizerCode code = the_code();
    std::vector<LogicalStateSpec> zero(code.k, {kZ, false});
    Circuit prep = perfect_encoder(code, zero);
    for (GateFlavor f : {GateFlavor::Flagged, GateFlavor::FlaggedWithStabs}) {
        for (uint32_t i = 0; i < 3; i++) {
            Circuit full = prep;
            full.append(synth_logical(code, {LogicalGate::H, {i}, f}).circuit);
            EXPECT_TRUE(validate_detectors(full).ok);
            Circuit fs = prep;
            fs.append(synth_logical(code, {LogicalGate::S, {i}, f}).circuit);
            EXPECT_TRUE(validate_detectors(fs).ok);
        }
        Circuit fc = prep;
        fc.append(synth_logical(code, {LogicalGate::CX, {1, 2}, f}).circuit);
        EXPECT_TRUE(validate_detectors(fc).ok);
    }
}

TEST(Synth, GeneralDistanceCircuits) {
    StabilizerCode code = the_code();
    // d=3 generic output matches synth_logical's bare circuit.
    Circuit d3 = synth_general_d({{0, 10, 12}}, LogicalGate::H);
    d3.require_qubits(code.n);
    Circuit bare = synth_logical(code, {LogicalGate::H, {0}, GateFlavor::Bare}).circuit;
    EXPECT_EQ(d3.serialize(), bare.serialize());
    // d=5: 10 YCY plus transversal H, no Y layer.
    Circuit d5 = synth_general_d({{0, 1, 2, 3, 4}}, LogicalGate::H);
    uint32_t ycy = 0, h = 0, y = 0;
    for (const auto &ins : d5.instructions) {
        ycy += ins.op == Op::YCY ? ins.group_count() : 0;
        h += ins.op == Op::H ? ins.group_count() : 0;
        y += ins.op == Op::Y ? ins.group_count() : 0;
    }
    EXPECT_EQ(ycy, 10u);
    EXPECT_EQ(h, 5u);
    EXPECT_EQ(y, 0u);
    // d=7 keeps the Y layer.
    Circuit d7 = synth_general_d({{0, 1, 2, 3, 4, 5, 6}}, LogicalGate::H);
    uint32_t y7 = 0;
    for (const auto &ins : d7.instructions) {
        y7 += ins.op == Op::Y ? ins.group_count() : 0;
    }
    EXPECT_EQ(y7, 7u);
    EXPECT_THROW(synth_general_d({{0, 1}}, LogicalGate::H), std::invalid_argument);
}

// Synthetic code with matching-support logicals: X^d / Z^d with Y_i Y_{i+1}
// stabilizers on each block.
StabilizerCode synthetic_code(uint32_t d, uint32_t blocks) {
    uint32_t n = d * blocks;
    std::vector<PauliOperator> gens, lx, lz;
    for (uint32_t b = 0; b < blocks; b++) {
        std::vector<uint32_t> qs;
        for (uint32_t q = 0; q < d; q++) {
            qs.push_back(b * d + q);
        }
        for (uint32_t q = 0; q + 1 < d; q++) {
            gens.push_back(PauliOperator::from_sites(n, kY, {qs[q], qs[q + 1]}));
        }
        lx.push_back(PauliOperator::from_sites(n, kX, qs));
        lz.push_back(PauliOperator::from_sites(n, kZ, qs));
    }
    return StabilizerCode::from_parts(n, "synthetic", std::move(gens), std::move(lx),
                                      std::move(lz));
}

TEST(Synth, GeneralDistanceLogicalActionOnSyntheticSupports) {
    for (uint32_t d : {5u, 7u}) {
        StabilizerCode code = synthetic_code(d, 1);
        std::vector<uint32_t> support = code.logical_x[0].support();
        for (LogicalGate kind : {LogicalGate::H, LogicalGate::S}) {
            Circuit c = synth_general_d({support}, kind);
            PauliOperator gx = circuit_conjugate(c, code.logical_x[0]);
            PauliOperator gz = circuit_conjugate(c, code.logical_z[0]);
            if (kind == LogicalGate::H) {
                EXPECT_TRUE(code.is_exact_stabilizer_element(gx * code.logical_z[0].inverse()));
                EXPECT_TRUE(code.is_exact_stabilizer_element(gz * code.logical_x[0].inverse()));
            } else {
                PauliOperator y = code.logical_x[0] * code.logical_z[0];
                y.phase = static_cast<uint8_t>((y.phase + 1) & 3);
                EXPECT_TRUE(code.is_exact_stabilizer_element(gx * y.inverse()));
                EXPECT_TRUE(code.is_exact_stabilizer_element(gz * code.logical_z[0].inverse()));
            }
            for (const auto &g : code.generators) {
                EXPECT_TRUE(code.is_exact_stabilizer_element(circuit_conjugate(c, g)))
                    << "d=" << d;
            }
        }
        // Two-block CX.
        StabilizerCode two = synthetic_code(d, 2);
        Circuit cx = synth_general_d(
            {two.logical_x[0].support(), two.logical_x[1].support()}, LogicalGate::CX);
        EXPECT_TRUE(two.is_exact_stabilizer_element(
            circuit_conjugate(cx, two.logical_x[0]) *
            (two.logical_x[0] * two.logical_x[1]).inverse()));
        EXPECT_TRUE(two.is_exact_stabilizer_element(
            circuit_conjugate(cx, two.logical_z[1]) *
            (two.logical_z[0] * two.logical_z[1]).inverse()));
        for (const auto &g : two.generators) {
            EXPECT_TRUE(two.is_exact_stabilizer_element(circuit_conjugate(cx, g)));
        }
    }
}

TEST(Synth, SyndromeExtractionStructure) {
    StabilizerCode code = the_code();
    Circuit round = synth_syndrome_extraction(code, false);
    EXPECT_EQ(count_entangling(round), 54u);
    EXPECT_EQ(round.num_measurements(), 12u);
    // Noise-free on an encoded state: all detectors trivial.
    Circuit full = perfect_encoder(code, {{kZ, false}, {kZ, false}, {kZ, false}});
    full.append(round);
    auto report = validate_detectors(full);
    EXPECT_TRUE(report.ok);
    for (bool ref : report.detector_reference) {
        EXPECT_FALSE(ref);
    }
    Circuit flagged = synth_syndrome_extraction(code, true);
    EXPECT_EQ(count_entangling(flagged), 54u + 24u);
    EXPECT_EQ(flagged.num_measurements(), 24u);
}

TEST(Synth, FlaggedExtractionCatchesHookFault) {
    // The weight-2 hook on an unflagged 4-body measurement flips the flag in
    // the flagged variant.
    StabilizerCode code = the_code();
    Circuit flagged = synth_syndrome_extraction(code, true);
    CompiledCircuit cc = CompiledCircuit::compile(flagged);
    // Ancilla of generator 0 is qubit 15; find its second CP gate and inject
    // X on the ancilla right after it.
    uint32_t anc = 15;
    size_t count = 0;
    size_t inject_at = 0;
    for (size_t i = 0; i < cc.ops.size(); i++) {
        if (op_is_pcp(cc.ops[i].op) && cc.ops[i].targets[0] == anc &&
            cc.ops[i].targets[1] < code.n) {
            if (++count == 2) {
                inject_at = i + 1;
                break;
            }
        }
    }
    ASSERT_GT(inject_at, 0u);
    PauliOperator hook(cc.n_qubits);
    hook.set_letter(anc, kX);
    FaultEffect eff = propagate_from(cc, inject_at, hook);
    // Weight-2 data residual, caught by the flag detector.
    EXPECT_EQ(eff.residual.truncated(code.n).weight(), 2u);
    EXPECT_TRUE(eff.detector_flips.any());
}

TEST(Synth, MagicMeasureStructure) {
    StabilizerCode code = the_code();
    auto flagged = synth_magic_measure(code, 0, true);
    EXPECT_EQ(flagged.flag_qubits.size(), 1u);
    uint32_t cycy = 0, ch = 0, cy = 0;
    for (const auto &ins : flagged.circuit.instructions) {
        cycy += ins.op == Op::C_YCY ? ins.group_count() : 0;
        ch += ins.op == Op::CH ? ins.group_count() : 0;
        cy += ins.op == Op::ZCY ? ins.group_count() : 0;
    }
    EXPECT_EQ(cycy, 3u);
    EXPECT_EQ(ch, 3u);
    EXPECT_EQ(cy, 3u);
    auto bare = synth_magic_measure(code, 0, false);
    EXPECT_EQ(bare.flag_qubits.size(), 0u);
    EXPECT_THROW(synth_magic_measure(synthetic_code(5, 1), 0, true), std::invalid_argument);
}

TEST(Synth, EncoderPreparesRequestedEigenstates) {
    StabilizerCode code = the_code();
    std::vector<std::vector<LogicalStateSpec>> states = {
        {{kZ, false}, {kZ, false}, {kZ, false}},
        {{kX, false}, {kZ, false}, {kZ, false}},
        {{kY, true}, {kZ, false}, {kZ, false}},
        {{kX, true}, {kY, false}, {kZ, true}},
    };
    for (const auto &state : states) {
        Circuit prep = perfect_encoder(code, state);
        TableauSim sim(prep.n_qubits);
        Rng rng(3);
        run_on_tableau(sim, prep, rng);
        for (const auto &g : code.generators) {
            EXPECT_TRUE(sim.is_stabilized_by(g));
        }
        for (uint32_t i = 0; i < code.k; i++) {
            EXPECT_TRUE(sim.is_stabilized_by(logical_state_stabilizer(code, i, state[i])));
        }
    }
}

}  // namespace
