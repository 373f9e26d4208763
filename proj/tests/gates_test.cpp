#include "lcsft/gates.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace lcsft;

namespace {

// Independent unitaries, pinned by literals where the convention matters.
oracle::Mat oracle_unitary(Op op) {
    using oracle::Mat;
    const double s = 1.0 / std::sqrt(2.0);
    const oracle::C i = oracle::kImag;
    switch (op) {
        case Op::H: return Mat(2, {s, s, s, -s});
        case Op::S: return Mat(2, {1, 0, 0, i});
        case Op::SDag: return Mat(2, {1, 0, 0, -i});
        case Op::X: return Mat(2, {0, 1, 1, 0});
        case Op::Y: return Mat(2, {0, -i, i, 0});
        case Op::Z: return Mat(2, {1, 0, 0, -1});
        case Op::T: return Mat(2, {1, 0, 0, std::polar(1.0, M_PI / 4)});
        case Op::CH:
            return Mat(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, s, s, 0, 0, s, -s});
        default: break;
    }
    if (op_is_pcp(op)) {
        auto [pc, pt] = pcp_paulis(op);
        // (I + P)/2 (x) I + (I - P)/2 (x) P': target fires on the -1
        // eigenspace of the control Pauli.
        Mat id = Mat::eye(2);
        Mat proj_plus = oracle::scale(oracle::add(id, oracle::letter_mat(pc)), 0.5);
        Mat proj_minus = oracle::scale(oracle::add(id, oracle::scale(oracle::letter_mat(pc), -1)), 0.5);
        return oracle::add(oracle::kron(proj_plus, id),
                           oracle::kron(proj_minus, oracle::letter_mat(pt)));
    }
    if (op_is_cpcp(op)) {
        Op inner = static_cast<Op>(static_cast<int>(Op::XCX) + static_cast<int>(op) -
                                   static_cast<int>(Op::C_XCX));
        oracle::Mat u = oracle_unitary(inner);
        oracle::Mat m(8);
        for (size_t a = 0; a < 4; a++) {
            m(a, a) = 1;
            for (size_t b = 0; b < 4; b++) {
                m(4 + a, 4 + b) = u(a, b);
            }
        }
        return m;
    }
    throw std::invalid_argument("no oracle unitary");
}

TEST(Gates, ZcxIsTextbookCnotAndZczIsCz) {
    // These two literals pin the Pauli-controlled-Pauli trigger convention.
    oracle::Mat cnot(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    oracle::Mat cz(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
    CMat zcx = op_unitary(Op::ZCX);
    CMat zcz = op_unitary(Op::ZCZ);
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            EXPECT_NEAR(std::abs(zcx.at(r, c) - cnot(r, c)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(zcz.at(r, c) - cz(r, c)), 0.0, 1e-12);
        }
    }
}

TEST(Gates, ConjugationTablesMatchOracleForAllKinds) {
    const GateTables &tables = gate_tables();
    for (size_t oi = 0; oi < kNumOps; oi++) {
        Op op = static_cast<Op>(oi);
        if (!op_is_unitary(op)) {
            continue;
        }
        uint32_t arity = op_arity(op);
        oracle::Mat u = oracle_unitary(op);
        oracle::Mat udag = oracle::dagger(u);
        for (uint32_t in = 1; in < (1u << (2 * arity)); in++) {
            PauliOperator p(arity);
            for (uint32_t q = 0; q < arity; q++) {
                p.set_letter(q, (in >> (2 * q)) & 3);
            }
            oracle::Mat conj = oracle::mul(oracle::mul(u, oracle::pauli_mat(p)), udag);
            PauliOperator want(arity);
            bool is_pauli = oracle::match_pauli(conj, arity, &want);
            const ConjEntry &e = tables.entry(op, in);
            ASSERT_EQ(e.pauli, is_pauli) << op_name(op) << " input " << p.str();
            if (is_pauli) {
                PauliOperator got(arity);
                for (uint32_t q = 0; q < arity; q++) {
                    got.set_letter(q, e.letters[q]);
                }
                got.phase = e.phase;
                EXPECT_EQ(got, want) << op_name(op) << " input " << p.str();
            }
        }
    }
}

TEST(Gates, CliffordTablesAreTotal) {
    const GateTables &tables = gate_tables();
    for (size_t oi = 0; oi < kNumOps; oi++) {
        Op op = static_cast<Op>(oi);
        if (!op_is_unitary(op)) {
            continue;
        }
        uint32_t arity = op_arity(op);
        bool total = true;
        for (uint32_t in = 1; in < (1u << (2 * arity)); in++) {
            total = total && tables.entry(op, in).pauli;
        }
        EXPECT_EQ(total, op_is_clifford(op)) << op_name(op);
    }
}

TEST(Gates, HadamardConjugation) {
    const GateTables &t = gate_tables();
    EXPECT_EQ(t.entry(Op::H, kX).letters[0], kZ);
    EXPECT_EQ(t.entry(Op::H, kX).phase, 0);
    EXPECT_EQ(t.entry(Op::H, kZ).letters[0], kX);
    EXPECT_EQ(t.entry(Op::H, kZ).phase, 0);
    EXPECT_EQ(t.entry(Op::H, kY).letters[0], kY);
    EXPECT_EQ(t.entry(Op::H, kY).phase, 2);
}

TEST(Gates, YcyPhaseKickOnMixedPair) {
    // Z on the control and X on the target of a YCY both change type and the
    // pair picks up a -1.
    const GateTables &t = gate_tables();
    uint32_t in = kZ | (kX << 2);
    const ConjEntry &e = t.entry(Op::YCY, in);
    ASSERT_TRUE(e.pauli);
    EXPECT_EQ(e.letters[0], kX);
    EXPECT_EQ(e.letters[1], kZ);
    EXPECT_EQ(e.phase, 2);
}

TEST(Gates, ZczSpreadsControlOntoTarget) {
    const GateTables &t = gate_tables();
    const ConjEntry &e = t.entry(Op::ZCZ, kX);  // X on control, I on target
    ASSERT_TRUE(e.pauli);
    EXPECT_EQ(e.letters[0], kX);
    EXPECT_EQ(e.letters[1], kZ);
    EXPECT_EQ(e.phase, 0);
}

TEST(Gates, NonCliffordDetection) {
    const GateTables &t = gate_tables();
    EXPECT_FALSE(t.entry(Op::T, kX).pauli);
    EXPECT_TRUE(t.entry(Op::T, kZ).pauli);
    // CH: Z on the control survives, X on the control does not.
    EXPECT_TRUE(t.entry(Op::CH, kZ).pauli);
    EXPECT_FALSE(t.entry(Op::CH, kX).pauli);
}

}  // namespace
