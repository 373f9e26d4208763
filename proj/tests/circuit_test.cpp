#include "lcsft/circuit.hpp"

#include <gtest/gtest.h>

#include "lcsft/tableau.hpp"

using namespace lcsft;

namespace {

Circuit sample_circuit() {
    Circuit c;
    c.require_qubits(17);
    c.add(Op::InitX, {16});
    c.add(Op::YCY, {0, 10});
    c.add(Op::Depolarize2, {0, 10}, 0.001);
    c.add(Op::H, {0, 10, 12});
    uint32_t m0 = c.measure(Op::MeasureX, 16);
    uint32_t m1 = c.measure(Op::MeasureZ, 3);
    c.add_detector({m0});
    c.add_observable(0, {m1});
    return c;
}

TEST(Circuit, SerializeParseRoundTripIsBitExact) {
    Circuit c = sample_circuit();
    std::string text = c.serialize();
    Circuit parsed = Circuit::parse(text);
    EXPECT_EQ(parsed.serialize(), text);
    EXPECT_EQ(parsed.n_qubits, c.n_qubits);
    EXPECT_EQ(parsed.instructions.size(), c.instructions.size());
    EXPECT_EQ(parsed.hash64(), c.hash64());
}

TEST(Circuit, ParsesSpecExampleLines) {
    std::string text =
        "YCY 0 10\n"
        "DEPOLARIZE2(0.001) 0 10\n"
        "MX 16\n"
        "MX 2\n"
        "M 1\n"
        "M 5\n"
        "M 7\n"
        "DETECTOR rec[-1] rec[-5]\n"
        "OBSERVABLE(0) rec[-3]\n";
    Circuit c = Circuit::parse(text);
    auto dets = c.detectors();
    ASSERT_EQ(dets.size(), 1u);
    EXPECT_EQ(dets[0], (std::vector<uint32_t>{4, 0}));
    auto obs = c.observables();
    ASSERT_EQ(obs.size(), 1u);
    EXPECT_EQ(obs[0], (std::vector<uint32_t>{2}));
    EXPECT_EQ(c.n_qubits, 17u);
}

TEST(Circuit, AliasesAndErrors) {
    EXPECT_EQ(Circuit::parse("CX 0 1\n").instructions[0].op, Op::ZCX);
    EXPECT_EQ(Circuit::parse("CZ 0 1\n").instructions[0].op, Op::ZCZ);
    EXPECT_THROW(Circuit::parse("FOO 0\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::parse("M 0\nDETECTOR rec[-2]\n"), std::invalid_argument);
    Circuit c;
    EXPECT_THROW(c.add(Op::YCY, {3, 3}), std::invalid_argument);
    EXPECT_THROW(c.add(Op::C_YCY, {1, 2, 2}), std::invalid_argument);
    EXPECT_THROW(c.add(Op::YCY, {1, 2, 3}), std::invalid_argument);
}

TEST(Circuit, AppendOffsetsRecords) {
    Circuit a;
    a.measure(Op::MeasureZ, 0);
    Circuit b;
    uint32_t m = b.measure(Op::MeasureZ, 1);
    b.add_detector({m});
    a.append(b);
    EXPECT_EQ(a.detectors()[0], (std::vector<uint32_t>{1}));
}

TEST(Circuit, ValidateDetectorsAcceptsDeterministic) {
    // Bell-pair stabilizer measurement via an ancilla: deterministic.
    Circuit c;
    c.require_qubits(3);
    c.add(Op::H, {0});
    c.add(Op::ZCX, {0, 1});
    // Measure X0X1 with ancilla 2.
    c.add(Op::InitX, {2});
    c.add(Op::ZCX, {2, 0});
    c.add(Op::ZCX, {2, 1});
    uint32_t m = c.measure(Op::MeasureX, 2);
    c.add_detector({m});
    auto report = validate_detectors(c);
    EXPECT_TRUE(report.ok);
    ASSERT_EQ(report.detector_reference.size(), 1u);
    EXPECT_FALSE(report.detector_reference[0]);
}

TEST(Circuit, ValidateDetectorsRejectsRandomBit) {
    Circuit c;
    c.require_qubits(1);
    c.add(Op::InitZ, {0});
    uint32_t m = c.measure(Op::MeasureX, 0);
    c.add_detector({m});
    auto report = validate_detectors(c);
    EXPECT_FALSE(report.ok);
    ASSERT_EQ(report.violations.size(), 1u);
}

TEST(Circuit, ValidateDetectorsRejectsTGate) {
    Circuit c;
    c.add(Op::T, {0});
    EXPECT_THROW(validate_detectors(c), std::invalid_argument);
}

}  // namespace
