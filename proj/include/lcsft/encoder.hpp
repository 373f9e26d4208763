#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/circuit.hpp"
#include "lcsft/code.hpp"

namespace lcsft {

// Synthesizes a noise-free Clifford circuit preparing the stabilizer state
// with the given n signed generators from |0...0>. Works by reducing the
// target list to {+Z_q} with recorded gates and emitting the inverse.
inline Circuit synth_stabilizer_state_circuit(std::vector<PauliOperator> targets) {
    if (targets.empty()) {
        throw std::invalid_argument("state synth: no targets");
    }
    uint32_t n = targets[0].n;
    if (targets.size() != n) {
        throw std::invalid_argument("state synth: need exactly n generators");
    }
    for (size_t i = 0; i < targets.size(); i++) {
        if (targets[i].phase & 1) {
            throw std::invalid_argument("state synth: generators must be Hermitian");
        }
        for (size_t j = i + 1; j < targets.size(); j++) {
            if (PauliOperator::anticommutes(targets[i], targets[j])) {
                throw std::invalid_argument("state synth: generators must commute");
            }
        }
    }

    struct RecordedGate {
        Op op;
        uint32_t a;
        uint32_t b;
    };
    std::vector<RecordedGate> ops;
    auto apply = [&](Op op, uint32_t a, uint32_t b = UINT32_MAX) {
        uint32_t t[2] = {a, b};
        for (auto &row : targets) {
            conjugate_via_table(row, op, t);
        }
        ops.push_back({op, a, b});
    };

    for (uint32_t q = 0; q < n; q++) {
        // Locate a pivot row with X or Y at column q; fall back to a Z pivot
        // rotated into X.
        size_t pivot = q;
        while (pivot < n && !(targets[pivot].letter(q) & 1)) {
            pivot++;
        }
        if (pivot == n) {
            size_t zrow = q;
            while (zrow < n && targets[zrow].letter(q) != kZ) {
                zrow++;
            }
            if (zrow == n) {
                throw std::invalid_argument("state synth: generators not independent");
            }
            apply(Op::H, q);
            pivot = q;
            while (pivot < n && !(targets[pivot].letter(q) & 1)) {
                pivot++;
            }
        }
        std::swap(targets[q], targets[pivot]);
        if (targets[q].letter(q) == kY) {
            apply(Op::S, q);  // S: Y -> -X
        }
        for (uint32_t r = 0; r < n; r++) {
            if (r == q) {
                continue;
            }
            uint8_t l = targets[q].letter(r);
            if (l == kI) {
                continue;
            }
            if (l == kY) {
                apply(Op::S, r);
            } else if (l == kZ) {
                apply(Op::H, r);
            }
            apply(Op::ZCX, q, r);
        }
        apply(Op::H, q);
        if (targets[q].phase == 2) {
            apply(Op::X, q);
        }
        if (!(targets[q].letter(q) == kZ && targets[q].weight() == 1 && targets[q].phase == 0)) {
            throw std::logic_error("state synth: row reduction failed");
        }
        // Clear the finished column from the remaining rows.
        for (uint32_t r = q + 1; r < n; r++) {
            if (targets[r].letter(q) == kZ) {
                targets[r] *= targets[q];
            }
        }
    }

    Circuit c;
    c.require_qubits(n);
    std::vector<uint32_t> all;
    for (uint32_t q = 0; q < n; q++) {
        all.push_back(q);
    }
    c.add(Op::InitZ, all);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        Op op = it->op == Op::S ? Op::SDag : it->op;  // others are involutions
        if (it->b == UINT32_MAX) {
            c.add(op, {it->a});
        } else {
            c.add(op, {it->a, it->b});
        }
    }
    return c;
}

// One logical qubit's prepared eigenstate.
struct LogicalStateSpec {
    uint8_t basis = kZ;  // kX, kY or kZ
    bool minus = false;  // eigenvalue sign

    static LogicalStateSpec parse(const std::string &s) {
        // Accepts "0","1","+","-","+i","-i" and "Z+","Z-","X+","X-","Y+","Y-".
        if (s == "0") return {kZ, false};
        if (s == "1") return {kZ, true};
        if (s == "+") return {kX, false};
        if (s == "-") return {kX, true};
        if (s == "+i" || s == "i") return {kY, false};
        if (s == "-i") return {kY, true};
        if (s.size() == 2 && (s[1] == '+' || s[1] == '-')) {
            return {letter_code(s[0]), s[1] == '-'};
        }
        throw std::invalid_argument("bad logical state spec: " + s);
    }

    std::string str() const {
        std::string out(1, letter_char(basis));
        out += minus ? '-' : '+';
        return out;
    }
};

// The signed logical Pauli stabilizing the specified eigenstate.
inline PauliOperator logical_state_stabilizer(const StabilizerCode &code, uint32_t logical,
                                              const LogicalStateSpec &spec) {
    PauliOperator op(code.n);
    switch (spec.basis) {
        case kX: op = code.logical_x[logical]; break;
        case kZ: op = code.logical_z[logical]; break;
        case kY: {
            op = code.logical_x[logical] * code.logical_z[logical];
            op.phase = static_cast<uint8_t>((op.phase + 1) & 3);  // Y = i X Z
            break;
        }
        default: throw std::invalid_argument("logical basis must be X, Y or Z");
    }
    if (spec.minus) {
        op.phase = static_cast<uint8_t>((op.phase + 2) & 3);
    }
    return op;
}

// Noise-free encoder for a full logical Pauli eigenstate of the code block.
inline Circuit perfect_encoder(const StabilizerCode &code,
                               const std::vector<LogicalStateSpec> &state) {
    if (state.size() != code.k) {
        throw std::invalid_argument("perfect_encoder: need one state per logical qubit");
    }
    std::vector<PauliOperator> targets = code.generators;
    for (uint32_t i = 0; i < code.k; i++) {
        targets.push_back(logical_state_stabilizer(code, i, state[i]));
    }
    return synth_stabilizer_state_circuit(std::move(targets));
}

}  // namespace lcsft
