#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/circuit.hpp"
#include "lcsft/pauli.hpp"
#include "lcsft/rng.hpp"

namespace lcsft {

// Aaronson-Gottesman style stabilizer simulator. Gate action is conjugation
// of the tableau rows through the shared gate tables, so every Clifford kind
// in the IR is supported uniformly.
class TableauSim {
  public:
    explicit TableauSim(uint32_t n) : n_(n) {
        stab_.reserve(n);
        destab_.reserve(n);
        for (uint32_t i = 0; i < n; i++) {
            stab_.push_back(PauliOperator::from_sites(n, kZ, {i}));
            destab_.push_back(PauliOperator::from_sites(n, kX, {i}));
        }
    }

    uint32_t n() const { return n_; }

    void apply_gate(Op op, const uint32_t *targets) {
        if (!op_is_clifford(op)) {
            throw std::invalid_argument(std::string("tableau: non-Clifford gate ") + op_name(op));
        }
        for (auto &row : stab_) {
            conjugate_via_table(row, op, targets);
        }
        for (auto &row : destab_) {
            conjugate_via_table(row, op, targets);
        }
    }

    struct MeasureResult {
        bool deterministic;
        bool value;
    };

    // Projective measurement of a signed Pauli; outcome 0 means the +1 result
    // for the operator as given (its phase must be real).
    MeasureResult measure_pauli(const PauliOperator &m, Rng &rng) {
        if (m.phase & 1) {
            throw std::invalid_argument("measure_pauli: operator must be Hermitian");
        }
        int pivot = -1;
        for (uint32_t i = 0; i < n_; i++) {
            if (PauliOperator::anticommutes(stab_[i], m)) {
                pivot = static_cast<int>(i);
                break;
            }
        }
        if (pivot < 0) {
            // Deterministic: m = +-(product of stabilizers selected by
            // anticommuting destabilizers).
            PauliOperator prod = PauliOperator::identity(n_);
            for (uint32_t i = 0; i < n_; i++) {
                if (PauliOperator::anticommutes(destab_[i], m)) {
                    prod *= stab_[i];
                }
            }
            if (!prod.same_letters(m)) {
                throw std::logic_error("measure_pauli: inconsistent tableau");
            }
            bool value = ((prod.phase - m.phase) & 3) != 0;
            return {true, value};
        }
        uint32_t p = static_cast<uint32_t>(pivot);
        for (uint32_t i = 0; i < n_; i++) {
            if (i != p && PauliOperator::anticommutes(stab_[i], m)) {
                stab_[i] *= stab_[p];
            }
            if (PauliOperator::anticommutes(destab_[i], m)) {
                destab_[i] *= stab_[p];
            }
        }
        bool value = rng.next() & 1;
        destab_[p] = stab_[p];
        stab_[p] = m;
        stab_[p].phase = static_cast<uint8_t>((m.phase + (value ? 2 : 0)) & 3);
        return {false, value};
    }

    MeasureResult measure_qubit(uint32_t q, bool x_basis, Rng &rng) {
        return measure_pauli(PauliOperator::from_sites(n_, x_basis ? kX : kZ, {q}), rng);
    }

    void reset_qubit(uint32_t q, bool x_basis, Rng &rng) {
        auto r = measure_qubit(q, x_basis, rng);
        if (r.value) {
            // Flip back into the +1 eigenstate.
            uint32_t t[1] = {q};
            apply_gate(x_basis ? Op::Z : Op::X, t);
        }
    }

    // True iff the state is a +1 eigenstate of m.
    bool is_stabilized_by(const PauliOperator &m) {
        Rng dummy(0);
        TableauSim copy = *this;
        auto r = copy.measure_pauli(m, dummy);
        return r.deterministic && !r.value;
    }

    // Canonical signed generator list; equal lists mean equal states.
    std::vector<std::string> canonical_stabilizers() const {
        std::vector<PauliOperator> rows = stab_;
        canonicalize(rows, 0);
        std::vector<std::string> out;
        out.reserve(rows.size());
        for (const auto &row : rows) {
            out.push_back(row.str());
        }
        return out;
    }

    // Canonical generators of the state restricted to qubits [0, first_n).
    // Valid when the remaining qubits are disentangled from them (e.g. after
    // mid-circuit measurements), which holds iff exactly first_n rows end up
    // free of ancilla support.
    std::vector<std::string> canonical_stabilizers_on(uint32_t first_n) const {
        std::vector<PauliOperator> rows = stab_;
        // Eliminate ancilla support first, then canonicalize the data block.
        size_t r = 0;
        for (uint32_t col = 2 * first_n; col < 2 * n_ && r < rows.size(); col++) {
            uint32_t q = col / 2;
            bool want_x = (col % 2) == 0;
            auto has = [&](const PauliOperator &p) {
                uint8_t l = p.letter(q);
                return want_x ? (l & 1) != 0 : (l & 2) != 0;
            };
            size_t pivot = r;
            while (pivot < rows.size() && !has(rows[pivot])) {
                pivot++;
            }
            if (pivot == rows.size()) {
                continue;
            }
            std::swap(rows[r], rows[pivot]);
            for (size_t i = 0; i < rows.size(); i++) {
                if (i != r && has(rows[i])) {
                    rows[i] *= rows[r];
                }
            }
            r++;
        }
        std::vector<PauliOperator> data_rows;
        for (size_t i = r; i < rows.size(); i++) {
            data_rows.push_back(rows[i].truncated(first_n));
            data_rows.back().phase = rows[i].phase;
        }
        if (data_rows.size() != first_n) {
            throw std::logic_error("canonical_stabilizers_on: qubits still entangled");
        }
        canonicalize(data_rows, 0);
        std::vector<std::string> out;
        for (const auto &row : data_rows) {
            out.push_back(row.str());
        }
        return out;
    }

  private:
    static void canonicalize(std::vector<PauliOperator> &rows, uint32_t first_col) {
        if (rows.empty()) {
            return;
        }
        uint32_t n = rows[0].n;
        size_t r = 0;
        for (uint32_t col = first_col; col < 2 * n && r < rows.size(); col++) {
            uint32_t q = col / 2;
            bool want_x = (col % 2) == 0;
            auto has = [&](const PauliOperator &p) {
                uint8_t l = p.letter(q);
                return want_x ? (l & 1) != 0 : (l & 2) != 0;
            };
            size_t pivot = r;
            while (pivot < rows.size() && !has(rows[pivot])) {
                pivot++;
            }
            if (pivot == rows.size()) {
                continue;
            }
            std::swap(rows[r], rows[pivot]);
            for (size_t i = 0; i < rows.size(); i++) {
                if (i != r && has(rows[i])) {
                    rows[i] *= rows[r];
                }
            }
            r++;
        }
    }

    uint32_t n_;
    std::vector<PauliOperator> stab_;
    std::vector<PauliOperator> destab_;
};

// Noise-free circuit execution on a tableau; returns the measurement record.
inline std::vector<bool> run_on_tableau(TableauSim &sim, const Circuit &circuit, Rng &rng) {
    std::vector<bool> values;
    for (const auto &ins : circuit.instructions) {
        uint32_t arity = op_arity(ins.op);
        if (op_is_measurement(ins.op)) {
            for (uint32_t q : ins.targets) {
                values.push_back(sim.measure_qubit(q, ins.op == Op::MeasureX, rng).value);
            }
        } else if (op_is_init(ins.op)) {
            for (uint32_t q : ins.targets) {
                sim.reset_qubit(q, ins.op == Op::InitX, rng);
            }
        } else if (op_is_unitary(ins.op)) {
            for (size_t g = 0; g + arity <= ins.targets.size(); g += arity) {
                sim.apply_gate(ins.op, ins.targets.data() + g);
            }
        }
    }
    return values;
}

struct DetectorReport {
    bool ok = true;
    // Reference parity of each detector / observable in the noise-free run.
    std::vector<bool> detector_reference;
    std::vector<bool> observable_reference;
    std::vector<std::string> violations;
};

// Noise-free stabilizer run checking that every measurement feeding a
// detector or observable is deterministic. Random bits that feed nothing are
// allowed (their collapse is simulated).
inline DetectorReport validate_detectors(const Circuit &circuit, uint64_t seed = 0) {
    if (circuit.has_non_clifford()) {
        throw std::invalid_argument("validate_detectors: circuit has non-Clifford gates");
    }
    TableauSim sim(circuit.n_qubits);
    Rng rng(seed);
    std::vector<bool> values;
    std::vector<bool> deterministic;
    for (const auto &ins : circuit.instructions) {
        uint32_t arity = op_arity(ins.op);
        if (op_is_measurement(ins.op)) {
            for (uint32_t q : ins.targets) {
                auto r = sim.measure_qubit(q, ins.op == Op::MeasureX, rng);
                values.push_back(r.value);
                deterministic.push_back(r.deterministic);
            }
        } else if (op_is_init(ins.op)) {
            for (uint32_t q : ins.targets) {
                sim.reset_qubit(q, ins.op == Op::InitX, rng);
            }
        } else if (op_is_unitary(ins.op)) {
            for (size_t g = 0; g + arity <= ins.targets.size(); g += arity) {
                sim.apply_gate(ins.op, ins.targets.data() + g);
            }
        }
        // Noise channels and markers are skipped in the noise-free run.
    }
    DetectorReport report;
    size_t det_index = 0;
    for (const auto &ins : circuit.instructions) {
        if (ins.op != Op::Detector && ins.op != Op::Observable) {
            continue;
        }
        bool parity = false;
        bool all_det = true;
        for (uint32_t r : ins.records) {
            parity ^= values[r];
            all_det = all_det && deterministic[r];
        }
        if (!all_det) {
            report.ok = false;
            report.violations.push_back(
                (ins.op == Op::Detector ? "DETECTOR " + std::to_string(det_index)
                                        : "OBSERVABLE " + std::to_string(uint32_t(ins.arg))) +
                " references a nondeterministic measurement");
        }
        if (ins.op == Op::Detector) {
            report.detector_reference.push_back(parity);
            det_index++;
        } else {
            size_t k = static_cast<size_t>(ins.arg);
            if (report.observable_reference.size() <= k) {
                report.observable_reference.resize(k + 1, false);
            }
            report.observable_reference[k] = report.observable_reference[k] ^ parity;
        }
    }
    return report;
}

}  // namespace lcsft
