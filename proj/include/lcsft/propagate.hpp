#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/circuit.hpp"
#include "lcsft/gf2.hpp"
#include "lcsft/pauli.hpp"

namespace lcsft {

struct BitRowHash {
    size_t operator()(const BitRow &r) const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (uint64_t w : r.w) {
            h ^= w;
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

// Flattened single-application view of a circuit plus detector/observable
// masks per measurement record. All hot paths run on this form.
struct CompiledCircuit {
    struct FlatOp {
        Op op;
        std::array<uint32_t, 3> targets{};
        double arg = 0.0;
        uint32_t record = UINT32_MAX;  // measurement index when applicable
    };

    uint32_t n_qubits = 0;
    std::vector<FlatOp> ops;
    uint32_t num_records = 0;
    uint32_t num_detectors = 0;
    uint32_t num_observables = 0;
    std::vector<BitRow> det_mask_of_record;  // record -> detectors touched
    std::vector<uint64_t> obs_mask_of_record;

    static CompiledCircuit compile(const Circuit &c) {
        CompiledCircuit cc;
        cc.n_qubits = c.n_qubits;
        uint32_t rec = 0;
        for (const auto &ins : c.instructions) {
            if (ins.op == Op::Detector || ins.op == Op::Observable || ins.op == Op::Tick) {
                continue;
            }
            uint32_t arity = op_arity(ins.op);
            for (size_t g = 0; g + arity <= ins.targets.size(); g += arity) {
                FlatOp f;
                f.op = ins.op;
                f.arg = ins.arg;
                for (uint32_t q = 0; q < arity; q++) {
                    f.targets[q] = ins.targets[g + q];
                }
                if (op_is_measurement(ins.op)) {
                    f.record = rec++;
                }
                cc.ops.push_back(f);
            }
        }
        cc.num_records = rec;
        cc.det_mask_of_record.assign(rec, BitRow{});
        cc.obs_mask_of_record.assign(rec, 0);
        uint32_t det = 0;
        for (const auto &ins : c.instructions) {
            if (ins.op == Op::Detector) {
                if (det >= BitRow::kMaxBits) {
                    throw std::invalid_argument("too many detectors");
                }
                for (uint32_t r : ins.records) {
                    cc.det_mask_of_record[r].flip(det);
                }
                det++;
            } else if (ins.op == Op::Observable) {
                uint32_t k = static_cast<uint32_t>(ins.arg);
                if (k >= 64) {
                    throw std::invalid_argument("too many observables");
                }
                cc.num_observables = std::max(cc.num_observables, k + 1);
                for (uint32_t r : ins.records) {
                    cc.obs_mask_of_record[r] ^= 1ull << k;
                }
            }
        }
        cc.num_detectors = det;
        return cc;
    }
};

// Flips and residual caused by one Pauli inserted into the circuit.
struct FaultEffect {
    BitRow record_flips;
    BitRow detector_flips;
    uint64_t observable_flips = 0;
    PauliOperator residual;  // full circuit width, letters only
};

// Forward-propagates `frame` starting just before ops[start]. The frame is a
// letters-only Pauli deviation from the noise-free run; measurements flip
// when the frame anticommutes with the measured basis, inits clear the frame.
inline FaultEffect propagate_from(const CompiledCircuit &cc, size_t start, PauliOperator frame) {
    FaultEffect eff;
    for (size_t i = start; i < cc.ops.size(); i++) {
        const auto &f = cc.ops[i];
        if (op_is_noise(f.op)) {
            continue;
        }
        if (op_is_measurement(f.op)) {
            uint8_t l = frame.letter(f.targets[0]);
            bool flips = f.op == Op::MeasureZ ? (l & 1) != 0 : (l & 2) != 0;
            if (flips) {
                eff.record_flips.flip(f.record);
                eff.detector_flips ^= cc.det_mask_of_record[f.record];
                eff.observable_flips ^= cc.obs_mask_of_record[f.record];
            }
            continue;
        }
        if (op_is_init(f.op)) {
            frame.set_letter(f.targets[0], kI);
            continue;
        }
        if (op_is_unitary(f.op)) {
            conjugate_via_table(frame, f.op, f.targets.data());
        }
    }
    eff.residual = std::move(frame);
    return eff;
}

// An elementary fault: one Pauli term at one circuit position. `index` is
// the op index before which the term is inserted.
struct Fault {
    uint32_t location = 0;  // channel / location id, for grouping
    size_t index = 0;
    PauliOperator term;
    double probability = 0.0;
    bool measurement_flip = false;  // classical outcome flip at ops[index]
};

// Enumerates the elementary faults of every noise channel instruction in the
// circuit, with per-term probabilities p / (4^k - 1).
inline std::vector<Fault> noise_model_faults(const CompiledCircuit &cc) {
    std::vector<Fault> out;
    uint32_t loc = 0;
    for (size_t i = 0; i < cc.ops.size(); i++) {
        const auto &f = cc.ops[i];
        if (!op_is_noise(f.op)) {
            continue;
        }
        uint32_t arity = op_arity(f.op);
        uint32_t terms = (1u << (2 * arity)) - 1;
        for (uint32_t t = 1; t <= terms; t++) {
            Fault fault;
            fault.location = loc;
            fault.index = i + 1;  // applied after this channel's position
            fault.term = PauliOperator(cc.n_qubits);
            for (uint32_t q = 0; q < arity; q++) {
                uint8_t code = (t >> (2 * q)) & 3;
                if (code) {
                    fault.term.set_letter(f.targets[q], code);
                }
            }
            fault.probability = f.arg / terms;
            out.push_back(std::move(fault));
        }
        loc++;
    }
    return out;
}

inline FaultEffect fault_effect(const CompiledCircuit &cc, const Fault &f) {
    if (f.measurement_flip) {
        FaultEffect eff;
        uint32_t r = cc.ops[f.index].record;
        eff.record_flips.flip(r);
        eff.detector_flips = cc.det_mask_of_record[r];
        eff.observable_flips = cc.obs_mask_of_record[r];
        eff.residual = PauliOperator(cc.n_qubits);
        return eff;
    }
    return propagate_from(cc, f.index, f.term);
}

}  // namespace lcsft
