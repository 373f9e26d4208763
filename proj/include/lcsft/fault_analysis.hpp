#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lcsft/code.hpp"
#include "lcsft/propagate.hpp"
#include "lcsft/synth.hpp"

namespace lcsft {

// Which circuit positions count as fault locations when reproducing the
// published exhaustive fault counts. Monte Carlo noise is independent of
// this; it always follows the inserted noise channels.
struct CountingPolicy {
    bool gate_noise = true;        // every unitary gate, 4^arity - 1 terms
    bool input_layer = false;      // depolarizing terms on all data qubits up front
    bool init_flip = true;         // one state-flip term per initialization
    bool measure_flip = true;      // one outcome-flip term per measurement
    bool count_diagonal_pairs = false;  // include same-fault pairs in the total

    // Published counts for the single-qubit gates use gate noise plus the
    // one-term init/measure flips of the flags.
    static CountingPolicy single_qubit_gate() { return {}; }
    // The two-qubit gate counts additionally include an input depolarizing
    // layer and count unordered pairs with repetition.
    static CountingPolicy two_qubit_gate() {
        CountingPolicy p;
        p.input_layer = true;
        p.count_diagonal_pairs = true;
        return p;
    }
    static CountingPolicy for_gate(LogicalGate kind) {
        return kind == LogicalGate::CX ? two_qubit_gate() : single_qubit_gate();
    }
};

inline std::vector<Fault> policy_faults(const CompiledCircuit &cc, uint32_t n_data,
                                        const CountingPolicy &policy) {
    std::vector<Fault> out;
    uint32_t loc = 0;
    if (policy.input_layer) {
        for (uint32_t q = 0; q < n_data; q++) {
            for (uint8_t code = 1; code <= 3; code++) {
                Fault f;
                f.location = loc;
                f.index = 0;
                f.term = PauliOperator(cc.n_qubits);
                f.term.set_letter(q, code);
                f.probability = 1.0;
                out.push_back(std::move(f));
            }
            loc++;
        }
    }
    for (size_t i = 0; i < cc.ops.size(); i++) {
        const auto &op = cc.ops[i];
        if (policy.gate_noise && op_is_unitary(op.op)) {
            uint32_t arity = op_arity(op.op);
            uint32_t terms = (1u << (2 * arity)) - 1;
            for (uint32_t t = 1; t <= terms; t++) {
                Fault f;
                f.location = loc;
                f.index = i + 1;
                f.term = PauliOperator(cc.n_qubits);
                for (uint32_t q = 0; q < arity; q++) {
                    uint8_t code = (t >> (2 * q)) & 3;
                    if (code) {
                        f.term.set_letter(op.targets[q], code);
                    }
                }
                f.probability = 1.0;
                out.push_back(std::move(f));
            }
            loc++;
        } else if (policy.init_flip && op_is_init(op.op)) {
            Fault f;
            f.location = loc++;
            f.index = i + 1;
            f.term = PauliOperator(cc.n_qubits);
            f.term.set_letter(op.targets[0], op.op == Op::InitX ? kZ : kX);
            f.probability = 1.0;
            out.push_back(std::move(f));
        } else if (policy.measure_flip && op_is_measurement(op.op)) {
            Fault f;
            f.location = loc++;
            f.index = i;
            f.term = PauliOperator(cc.n_qubits);
            f.measurement_flip = true;
            f.probability = 1.0;
            out.push_back(std::move(f));
        }
    }
    return out;
}

// Elementary fault effects reduced to the classification data: detector
// flips, observable flips, residual syndrome and logical coordinates.
struct FaultRecord {
    BitRow det;
    uint64_t obs = 0;
    uint64_t syndrome = 0;
    uint32_t coords = 0;
    PauliOperator residual;  // restricted to the code block
    double probability = 0.0;
    uint32_t location = 0;
};

inline std::vector<FaultRecord> build_fault_records(const CompiledCircuit &cc,
                                                    const StabilizerCode &code,
                                                    const std::vector<Fault> &faults) {
    std::vector<FaultRecord> out;
    out.reserve(faults.size());
    for (const auto &f : faults) {
        FaultEffect eff = fault_effect(cc, f);
        FaultRecord r;
        r.det = eff.detector_flips;
        r.obs = eff.observable_flips;
        r.residual = eff.residual.truncated(code.n);
        r.syndrome = code.syndrome_bits(r.residual);
        r.coords = code.logical_coords(r.residual);
        r.probability = f.probability;
        r.location = f.location;
        out.push_back(std::move(r));
    }
    return out;
}

// Order-1 / order-2 fault path enumeration. Order 2 yields unordered pairs
// of distinct elementary faults (same channel allowed).
inline void enumerate_fault_paths(const std::vector<Fault> &faults, int order,
                                  const std::function<void(size_t, size_t)> &visit) {
    if (order == 1) {
        for (size_t i = 0; i < faults.size(); i++) {
            visit(i, SIZE_MAX);
        }
        return;
    }
    if (order != 2) {
        throw std::invalid_argument("fault enumeration supports order 1 and 2 only");
    }
    for (size_t i = 0; i < faults.size(); i++) {
        for (size_t j = i + 1; j < faults.size(); j++) {
            visit(i, j);
        }
    }
}

struct PairClassification {
    size_t num_elementary = 0;
    size_t total_pairs = 0;        // per the policy's pair-counting convention
    size_t uncorrectable = 0;      // undetected logical errors at order 2
    std::vector<std::pair<size_t, size_t>> witnesses;
};

// Counts order-2 fault paths whose joint effect flips no detector, has a
// trivial residual syndrome, and acts as a logical operator.
inline PairClassification classify_fault_pairs(const CompiledCircuit &cc,
                                               const StabilizerCode &code,
                                               const CountingPolicy &policy,
                                               size_t witness_cap = 8) {
    std::vector<Fault> faults = policy_faults(cc, code.n, policy);
    std::vector<FaultRecord> recs = build_fault_records(cc, code, faults);
    PairClassification result;
    result.num_elementary = faults.size();
    size_t n = recs.size();
    result.total_pairs = n * (n - 1) / 2 + (policy.count_diagonal_pairs ? n : 0);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (recs[i].det == recs[j].det && recs[i].syndrome == recs[j].syndrome &&
                recs[i].coords != recs[j].coords) {
                result.uncorrectable++;
                if (result.witnesses.size() < witness_cap) {
                    result.witnesses.emplace_back(i, j);
                }
            }
        }
    }
    return result;
}

struct DistinguishabilityReport {
    bool distinguishable = true;
    size_t total_pairs = 0;
    size_t violating_pairs = 0;
    // First violating pair of propagated errors, when present.
    std::optional<std::pair<std::string, std::string>> witness;
};

// Checks the order-1 fault set (including the empty path) pairwise: every
// pair must differ in detectors, be stabilizer-equivalent, or differ in
// syndrome.
inline DistinguishabilityReport check_distinguishability(const CompiledCircuit &cc,
                                                         const StabilizerCode &code,
                                                         const std::vector<Fault> &faults) {
    std::vector<FaultRecord> recs = build_fault_records(cc, code, faults);
    DistinguishabilityReport report;
    size_t n = recs.size();
    report.total_pairs = n * (n - 1) / 2 + n;  // fault pairs plus (empty, fault)
    auto violates = [&](const FaultRecord &a, const FaultRecord &b) {
        return a.det == b.det && a.syndrome == b.syndrome && a.coords != b.coords;
    };
    FaultRecord empty;
    empty.residual = PauliOperator(code.n);
    for (size_t i = 0; i < n; i++) {
        if (violates(recs[i], empty)) {
            report.violating_pairs++;
            if (!report.witness) {
                report.witness = {recs[i].residual.str(), "+I"};
            }
        }
        for (size_t j = i + 1; j < n; j++) {
            if (violates(recs[i], recs[j])) {
                report.violating_pairs++;
                if (!report.witness) {
                    report.witness = {recs[i].residual.str(), recs[j].residual.str()};
                }
            }
        }
    }
    report.distinguishable = report.violating_pairs == 0;
    return report;
}

struct CircuitDistanceResult {
    std::optional<uint32_t> distance;  // empty: nothing found up to the bound
    uint32_t searched_up_to = 0;
};

// Minimum number of elementary faults that flip some observable while
// leaving every detector trivial; exhaustive up to order 3.
inline CircuitDistanceResult circuit_distance(const CompiledCircuit &cc,
                                              const std::vector<Fault> &faults,
                                              uint32_t max_order = 3) {
    if (cc.num_observables == 0) {
        throw std::invalid_argument("circuit_distance: no observables");
    }
    std::vector<FaultRecord> recs;
    recs.reserve(faults.size());
    for (const auto &f : faults) {
        FaultEffect eff = fault_effect(cc, f);
        FaultRecord r;
        r.det = eff.detector_flips;
        r.obs = eff.observable_flips;
        recs.push_back(std::move(r));
    }
    CircuitDistanceResult result;
    size_t n = recs.size();
    for (size_t i = 0; i < n; i++) {
        if (!recs[i].det.any() && recs[i].obs) {
            result.distance = 1;
            result.searched_up_to = 1;
            return result;
        }
    }
    result.searched_up_to = 1;
    if (max_order < 2) {
        return result;
    }
    std::unordered_map<BitRow, std::vector<uint32_t>, BitRowHash> by_det;
    for (size_t i = 0; i < n; i++) {
        by_det[recs[i].det].push_back(static_cast<uint32_t>(i));
    }
    for (const auto &[det, group] : by_det) {
        for (size_t a = 0; a < group.size(); a++) {
            for (size_t b = a + 1; b < group.size(); b++) {
                if (recs[group[a]].obs ^ recs[group[b]].obs) {
                    result.distance = 2;
                    result.searched_up_to = 2;
                    return result;
                }
            }
        }
    }
    result.searched_up_to = 2;
    if (max_order < 3) {
        return result;
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            BitRow target = recs[i].det ^ recs[j].det;
            auto it = by_det.find(target);
            if (it == by_det.end()) {
                continue;
            }
            uint64_t obs_ij = recs[i].obs ^ recs[j].obs;
            for (uint32_t k : it->second) {
                if (k != i && k != j && (obs_ij ^ recs[k].obs)) {
                    result.distance = 3;
                    result.searched_up_to = 3;
                    return result;
                }
            }
        }
    }
    result.searched_up_to = 3;
    return result;
}

}  // namespace lcsft
