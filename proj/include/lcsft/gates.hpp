#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/dense.hpp"
#include "lcsft/pauli.hpp"

namespace lcsft {

enum class Op : uint8_t {
    InitZ,
    InitX,
    Reset,
    MeasureZ,
    MeasureX,
    H,
    S,
    SDag,
    X,
    Y,
    Z,
    T,
    XCX,
    XCY,
    XCZ,
    YCX,
    YCY,
    YCZ,
    ZCX,
    ZCY,
    ZCZ,
    C_XCX,
    C_XCY,
    C_XCZ,
    C_YCX,
    C_YCY,
    C_YCZ,
    C_ZCX,
    C_ZCY,
    C_ZCZ,
    CH,
    Depolarize1,
    Depolarize2,
    Depolarize3,
    Tick,
    Detector,
    Observable,
    kOpCount,
};

constexpr size_t kNumOps = static_cast<size_t>(Op::kOpCount);

inline bool op_is_pcp(Op op) { return op >= Op::XCX && op <= Op::ZCZ; }
inline bool op_is_cpcp(Op op) { return op >= Op::C_XCX && op <= Op::C_ZCZ; }

inline bool op_is_unitary(Op op) { return op >= Op::H && op <= Op::CH; }

inline bool op_is_clifford(Op op) {
    return op_is_unitary(op) && op != Op::T && op != Op::CH && !op_is_cpcp(op);
}

inline bool op_is_measurement(Op op) { return op == Op::MeasureZ || op == Op::MeasureX; }
inline bool op_is_init(Op op) { return op == Op::InitZ || op == Op::InitX || op == Op::Reset; }
inline bool op_is_noise(Op op) {
    return op == Op::Depolarize1 || op == Op::Depolarize2 || op == Op::Depolarize3;
}

// Number of qubit targets a single application consumes.
inline uint32_t op_arity(Op op) {
    if (op_is_pcp(op) || op == Op::CH || op == Op::Depolarize2) {
        return 2;
    }
    if (op_is_cpcp(op) || op == Op::Depolarize3) {
        return 3;
    }
    if (op == Op::Tick || op == Op::Detector || op == Op::Observable) {
        return 0;
    }
    return 1;
}

// Control/target Pauli codes of a PCP kind, e.g. YCZ -> (Y, Z).
inline std::pair<uint8_t, uint8_t> pcp_paulis(Op op) {
    static constexpr uint8_t ord[3] = {kX, kY, kZ};
    int idx;
    if (op_is_pcp(op)) {
        idx = static_cast<int>(op) - static_cast<int>(Op::XCX);
    } else if (op_is_cpcp(op)) {
        idx = static_cast<int>(op) - static_cast<int>(Op::C_XCX);
    } else {
        throw std::invalid_argument("pcp_paulis: not a PCP kind");
    }
    return {ord[idx / 3], ord[idx % 3]};
}

inline Op pcp_op(uint8_t control_code, uint8_t target_code) {
    auto slot = [](uint8_t c) -> int {
        switch (c) {
            case kX: return 0;
            case kY: return 1;
            case kZ: return 2;
            default: throw std::invalid_argument("pcp_op: identity letter");
        }
    };
    return static_cast<Op>(static_cast<int>(Op::XCX) + 3 * slot(control_code) + slot(target_code));
}

inline const char *op_name(Op op) {
    static constexpr const char *kNames[] = {
        "R",    "RX",    "RESET", "M",     "MX",    "H",     "S",     "S_DAG", "X",
        "Y",    "Z",     "T",     "XCX",   "XCY",   "XCZ",   "YCX",   "YCY",   "YCZ",
        "ZCX",  "ZCY",   "ZCZ",   "C_XCX", "C_XCY", "C_XCZ", "C_YCX", "C_YCY", "C_YCZ",
        "C_ZCX", "C_ZCY", "C_ZCZ", "CH",    "DEPOLARIZE1", "DEPOLARIZE2", "DEPOLARIZE3",
        "TICK", "DETECTOR", "OBSERVABLE",
    };
    return kNames[static_cast<size_t>(op)];
}

// Dense unitary of a gate kind. Pauli-controlled-Pauli applies the target
// Pauli when the control sits in the -1 eigenspace of its control Pauli, so
// ZCX is the textbook CNOT. Qubit 0 of the gate is the most significant bit.
inline CMat op_unitary(Op op) {
    if (!op_is_unitary(op)) {
        throw std::invalid_argument(std::string("op_unitary: not unitary: ") + op_name(op));
    }
    const double isq = 1.0 / std::sqrt(2.0);
    switch (op) {
        case Op::H: {
            CMat m(2);
            m.at(0, 0) = isq;
            m.at(0, 1) = isq;
            m.at(1, 0) = isq;
            m.at(1, 1) = -isq;
            return m;
        }
        case Op::S: {
            CMat m(2);
            m.at(0, 0) = 1;
            m.at(1, 1) = cplx(0, 1);
            return m;
        }
        case Op::SDag: {
            CMat m(2);
            m.at(0, 0) = 1;
            m.at(1, 1) = cplx(0, -1);
            return m;
        }
        case Op::X: return pauli_matrix(kX);
        case Op::Y: return pauli_matrix(kY);
        case Op::Z: return pauli_matrix(kZ);
        case Op::T: {
            CMat m(2);
            m.at(0, 0) = 1;
            m.at(1, 1) = std::polar(1.0, M_PI / 4);
            return m;
        }
        case Op::CH: {
            CMat m(4);
            m.at(0, 0) = 1;
            m.at(1, 1) = 1;
            m.at(2, 2) = isq;
            m.at(2, 3) = isq;
            m.at(3, 2) = isq;
            m.at(3, 3) = -isq;
            return m;
        }
        default: break;
    }
    if (op_is_pcp(op)) {
        auto [pc, pt] = pcp_paulis(op);
        CMat id2 = CMat::identity(2);
        CMat plus = (id2 + pauli_matrix(pc)).scaled(0.5);
        CMat minus = (id2 + pauli_matrix(pc).scaled(-1.0)).scaled(0.5);
        return kron(plus, id2) + kron(minus, pauli_matrix(pt));
    }
    // C_PCP: plain |1>-controlled PCP on the two trailing targets.
    Op inner = static_cast<Op>(static_cast<int>(Op::XCX) + static_cast<int>(op) -
                               static_cast<int>(Op::C_XCX));
    CMat u = op_unitary(inner);
    CMat m(8);
    for (size_t i = 0; i < 4; i++) {
        m.at(i, i) = 1;
        for (size_t j = 0; j < 4; j++) {
            m.at(4 + i, 4 + j) = u.at(i, j);
        }
    }
    return m;
}

// One conjugation-table slot: U P U^dag for a Pauli letter tuple. For
// non-Clifford kinds, only inputs whose image stays in the Pauli group have
// an entry.
struct ConjEntry {
    bool pauli = false;
    std::array<uint8_t, 3> letters{};
    uint8_t phase = 0;  // i^phase
};

struct GateTables {
    // Indexed [op][packed input letters]; input packing is little-endian in
    // the gate's target order: code(q0) + 4*code(q1) + 16*code(q2).
    std::array<std::vector<ConjEntry>, kNumOps> conj;

    const ConjEntry &entry(Op op, uint32_t packed) const {
        const auto &v = conj[static_cast<size_t>(op)];
        if (v.empty()) {
            throw std::invalid_argument(std::string("no conjugation table for ") + op_name(op));
        }
        return v[packed];
    }
};

namespace detail {

inline std::vector<ConjEntry> build_conj_table(Op op) {
    uint32_t arity = op_arity(op);
    CMat u = op_unitary(op);
    CMat udag = u.adjoint();
    size_t combos = 1u << (2 * arity);
    std::vector<ConjEntry> table(combos);
    for (uint32_t in = 0; in < combos; in++) {
        // Gate qubit 0 is the most significant tensor factor.
        std::array<uint8_t, 3> codes{};
        for (uint32_t q = 0; q < arity; q++) {
            codes[q] = (in >> (2 * q)) & 3;
        }
        CMat m = u * pauli_matrix(codes.data(), arity) * udag;
        // Match against i^t * (Pauli tuple).
        ConjEntry e;
        for (uint32_t out = 0; out < combos && !e.pauli; out++) {
            std::array<uint8_t, 3> ocodes{};
            for (uint32_t q = 0; q < arity; q++) {
                ocodes[q] = (out >> (2 * q)) & 3;
            }
            CMat cand = pauli_matrix(ocodes.data(), arity);
            for (uint8_t t = 0; t < 4 && !e.pauli; t++) {
                cplx ph = t == 0 ? cplx(1) : t == 1 ? cplx(0, 1) : t == 2 ? cplx(-1) : cplx(0, -1);
                if (cand.scaled(ph).approx_equal(m)) {
                    e.pauli = true;
                    e.letters = ocodes;
                    e.phase = t;
                }
            }
        }
        table[in] = e;
    }
    return table;
}

}  // namespace detail

inline const GateTables &gate_tables() {
    static const GateTables tables = [] {
        GateTables t;
        for (size_t i = 0; i < kNumOps; i++) {
            Op op = static_cast<Op>(i);
            if (op_is_unitary(op)) {
                t.conj[i] = detail::build_conj_table(op);
            }
        }
        return t;
    }();
    return tables;
}

// In-place U P U^dag on the letters at the gate's targets. Throws when the
// image leaves the Pauli group (possible only for T / CH / C_PCP inputs).
inline void conjugate_via_table(PauliOperator &p, Op op, const uint32_t *targets) {
    uint32_t arity = op_arity(op);
    uint32_t packed = 0;
    for (uint32_t q = 0; q < arity; q++) {
        packed |= static_cast<uint32_t>(p.letter(targets[q])) << (2 * q);
    }
    if (packed == 0) {
        return;
    }
    const ConjEntry &e = gate_tables().entry(op, packed);
    if (!e.pauli) {
        throw std::invalid_argument(std::string("conjugation through ") + op_name(op) +
                                    " leaves the Pauli group");
    }
    for (uint32_t q = 0; q < arity; q++) {
        p.set_letter(targets[q], e.letters[q]);
    }
    p.phase = static_cast<uint8_t>((p.phase + e.phase) & 3);
}

// Exact Clifford conjugation of a full-width Pauli; rejects non-Clifford
// gate kinds outright.
inline PauliOperator conjugate(Op op, const std::vector<uint32_t> &targets,
                               const PauliOperator &p) {
    if (!op_is_clifford(op)) {
        throw std::invalid_argument(std::string("conjugate: non-Clifford gate ") + op_name(op));
    }
    if (targets.size() != op_arity(op)) {
        throw std::invalid_argument("conjugate: wrong target count");
    }
    PauliOperator out = p;
    conjugate_via_table(out, op, targets.data());
    return out;
}

}  // namespace lcsft
