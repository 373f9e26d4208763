// Scratch driver for inspecting exhaustive fault counts during development.
#include <cstdio>
#include <string>

#include "lcsft/fault_analysis.hpp"
#include "lcsft/synth.hpp"

using namespace lcsft;

static std::string describe_fault(const CompiledCircuit &cc, const Fault &f) {
    std::string s;
    if (f.measurement_flip) {
        s = "flip@";
    } else {
        s = f.term.truncated(cc.n_qubits).str() + "@";
    }
    size_t idx = f.index < cc.ops.size() ? f.index : cc.ops.size() - 1;
    const auto &op = cc.ops[f.index == 0 ? 0 : f.index - (f.measurement_flip ? 0 : 1)];
    (void)idx;
    s += std::string(op_name(op.op));
    for (uint32_t q = 0; q < op_arity(op.op); q++) {
        s += " " + std::to_string(op.targets[q]);
    }
    if (f.index == 0 && !f.measurement_flip) {
        s += " (input)";
    }
    return s;
}

static void report(const char *label, const StabilizerCode &code, const SynthesizedGate &gate,
                   const CountingPolicy &policy, size_t max_witness = 100) {
    CompiledCircuit cc = CompiledCircuit::compile(gate.circuit);
    auto faults = policy_faults(cc, code.n, policy);
    auto recs = build_fault_records(cc, code, faults);
    size_t uncorrectable = 0;
    std::vector<std::pair<size_t, size_t>> wit;
    for (size_t i = 0; i < recs.size(); i++) {
        for (size_t j = i + 1; j < recs.size(); j++) {
            if (recs[i].det == recs[j].det && recs[i].syndrome == recs[j].syndrome &&
                recs[i].coords != recs[j].coords) {
                uncorrectable++;
                if (wit.size() < max_witness) {
                    wit.emplace_back(i, j);
                }
            }
        }
    }
    std::printf("%-22s elem=%zu uncorrectable=%zu entangling=%u ft_ref=%u\n", label,
                faults.size(), uncorrectable, gate.entangling_count,
                gate.ft_reference_entangling);
    for (auto [i, j] : wit) {
        std::printf("    [%s  ~  %s]  residuals %s vs %s\n",
                    describe_fault(cc, faults[i]).c_str(), describe_fault(cc, faults[j]).c_str(),
                    recs[i].residual.str().c_str(), recs[j].residual.str().c_str());
    }
}

int main(int argc, char **argv) {
    StabilizerCode code = lcs_15_3_3();
    auto pol1 = CountingPolicy::single_qubit_gate();
    bool witnesses = argc > 1 && std::string(argv[1]) == "-w";
    if (witnesses) {
        report("H0 flagged", code,
               synth_logical(code, {LogicalGate::H, {0}, GateFlavor::Flagged}), pol1, 100);
        return 0;
    }
    auto pol2 = CountingPolicy::two_qubit_gate();
    for (uint32_t i = 0; i < 3; i++) {
        report(("H flagged " + std::to_string(i)).c_str(), code,
               synth_logical(code, {LogicalGate::H, {i}, GateFlavor::Flagged}), pol1, 0);
        report(("H +stabs  " + std::to_string(i)).c_str(), code,
               synth_logical(code, {LogicalGate::H, {i}, GateFlavor::FlaggedWithStabs}), pol1, 0);
        report(("S flagged " + std::to_string(i)).c_str(), code,
               synth_logical(code, {LogicalGate::S, {i}, GateFlavor::Flagged}), pol1, 0);
        report(("S +stabs  " + std::to_string(i)).c_str(), code,
               synth_logical(code, {LogicalGate::S, {i}, GateFlavor::FlaggedWithStabs}), pol1, 0);
    }
    for (uint32_t i = 0; i < 3; i++) {
        for (uint32_t j = 0; j < 3; j++) {
            if (i == j) continue;
            std::string lbl = "CX " + std::to_string(i) + std::to_string(j);
            report((lbl + " flagged").c_str(), code,
                   synth_logical(code, {LogicalGate::CX, {i, j}, GateFlavor::Flagged}), pol2, 0);
            report((lbl + " +stabs").c_str(), code,
                   synth_logical(code, {LogicalGate::CX, {i, j}, GateFlavor::FlaggedWithStabs}),
                   pol2, 0);
        }
    }
    return 0;
}
