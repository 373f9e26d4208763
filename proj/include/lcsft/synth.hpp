#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/circuit.hpp"
#include "lcsft/code.hpp"

namespace lcsft {

enum class LogicalGate { H, S, CX, T };
enum class GateFlavor { Bare, Flagged, FlaggedWithStabs };

inline const char *logical_gate_name(LogicalGate g) {
    switch (g) {
        case LogicalGate::H: return "H";
        case LogicalGate::S: return "S";
        case LogicalGate::CX: return "CX";
        default: return "T";
    }
}

struct GateSpec {
    LogicalGate kind;
    std::vector<uint32_t> logicals;  // one index, or control+target
    GateFlavor flavor = GateFlavor::Bare;
};

// Gate-level ordering of the two flag windows around one round-robin PCP.
// The published fault counts pin these choices; see the fault-analysis tests.
struct FlagLayout {
    bool match_flag_on_first_leg = true;  // matching flag on the lower qubit
    bool open_match_first = true;
    bool close_match_first = false;       // matching flag closes last, wrapping the other
    bool commuted_part_first = true;      // commuted closing gate precedes the plain one
    // CP order inside inserted stabilizer measurements.
    enum class InsertionOrder { Ascending, TypeRoundRobin };
    InsertionOrder insertion_order = InsertionOrder::TypeRoundRobin;
};

namespace detail {
// TypeRoundRobin cycles Y, Z, X sites so that ancilla-hook suffixes always
// mix letter types; single-type stabilizers degrade to ascending order.
inline std::vector<uint32_t> ordered_sites(const PauliOperator &op,
                                           FlagLayout::InsertionOrder order) {
    std::vector<uint32_t> sites = op.support();
    if (order == FlagLayout::InsertionOrder::Ascending) {
        return sites;
    }
    std::vector<uint32_t> groups[3];  // Y, Z, X
    for (uint32_t q : sites) {
        switch (op.letter(q)) {
            case kY: groups[0].push_back(q); break;
            case kZ: groups[1].push_back(q); break;
            default: groups[2].push_back(q); break;
        }
    }
    std::vector<uint32_t> out;
    for (size_t i = 0; out.size() < sites.size(); i++) {
        auto &g = groups[i % 3];
        size_t pos = i / 3;
        if (pos < g.size()) {
            out.push_back(g[pos]);
        }
    }
    return out;
}
}  // namespace detail

// One intermediate stabilizer measurement: the operator, the generator
// indices whose product it is, and which factor the follow-up round omits.
struct InsertedStabilizer {
    PauliOperator op;             // width n, sign-exact group element
    std::vector<size_t> factors;  // indices into code.generators
    size_t omitted_factor;        // generator dropped from the next round
};

struct SynthesizedGate {
    GateSpec spec;
    Circuit circuit;  // noise-free; flags and inserted measurements included
    uint32_t n_data = 0;
    std::vector<uint32_t> flag_qubits;
    std::vector<uint32_t> stab_ancillas;
    std::vector<InsertedStabilizer> inserted;
    // Generators already covered during the gate; the completing round
    // measures the rest.
    std::vector<size_t> omitted_generators;
    uint32_t entangling_count = 0;
    uint32_t ft_reference_entangling = 0;  // + unflagged completing round
};

inline uint32_t count_entangling(const Circuit &c) {
    uint32_t count = 0;
    for (const auto &ins : c.instructions) {
        if (op_is_unitary(ins.op) && op_arity(ins.op) >= 2) {
            count += ins.group_count();
        }
    }
    return count;
}

namespace detail {

inline std::vector<std::pair<uint32_t, uint32_t>> round_robin_pairs(
    const std::vector<uint32_t> &support) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (size_t i = 0; i < support.size(); i++) {
        for (size_t j = i + 1; j < support.size(); j++) {
            pairs.emplace_back(support[i], support[j]);
        }
    }
    return pairs;
}

// Ancilla-assisted measurement of a Pauli product: |+> ancilla controls the
// letter on each site, X-measurement reads the eigenvalue. Site order is
// caller-controlled; ancilla-hook residuals are suffix products of it.
inline uint32_t emit_pauli_measurement(Circuit &c, const PauliOperator &op, uint32_t ancilla,
                                       bool as_detector,
                                       const std::vector<uint32_t> *site_order = nullptr) {
    c.add(Op::InitX, {ancilla});
    std::vector<uint32_t> sites = site_order ? *site_order : op.support();
    for (uint32_t q : sites) {
        uint8_t l = op.letter(q);
        if (l != kI) {
            c.add(pcp_op(kZ, l), {ancilla, q});
        }
    }
    uint32_t m = c.measure(Op::MeasureX, ancilla);
    if (as_detector) {
        c.add_detector({m});
    }
    return m;
}


// Table of intermediate stabilizer measurements for the [[15,3,3]] code,
// matching the published gate protocols. Entries are generator index lists
// (X-type 0..5, Z-type 6..11); their product is the measured operator.
struct StabChoice {
    std::vector<size_t> factors;
    size_t omitted;
};

inline std::vector<StabChoice> lcs_insertion_table(LogicalGate kind,
                                                   const std::vector<uint32_t> &logicals) {
    auto all_six = std::vector<size_t>{0, 1, 2, 6, 7, 8};  // prod S_X^(0..2) S_Z^(0..2)
    if (kind == LogicalGate::H) {
        switch (logicals[0]) {
            case 0: return {{all_six, 6}, {{3, 9}, 9}};
            case 1: return {{{1, 7}, 7}, {{4, 10}, 10}};
            default: return {{all_six, 6}, {{5, 11}, 11}};
        }
    }
    if (kind == LogicalGate::S) {
        switch (logicals[0]) {
            case 0: return {{{6}, 6}, {{9}, 9}};
            case 1: return {{{7}, 7}, {{10}, 10}};
            default: return {{{8}, 8}, {{11}, 11}};
        }
    }
    // CX: two Z-type picks on the control block, two X-type on the target.
    uint32_t i = logicals[0], j = logicals[1];
    auto zs = [&](size_t a, size_t b) { return std::vector<StabChoice>{{{a}, a}, {{b}, b}}; };
    std::vector<StabChoice> z_side, x_side;
    if (i == 0) z_side = zs(6, 9);
    if (i == 1) z_side = zs(7, 11);
    if (i == 2) z_side = j == 0 ? zs(8, 9) : zs(8, 11);
    if (j == 0) x_side = i == 1 ? std::vector<StabChoice>{{{0}, 0}, {{3}, 3}}
                                : std::vector<StabChoice>{{{0}, 0}, {{4}, 4}};
    if (j == 1) x_side = i == 0 ? std::vector<StabChoice>{{{1}, 1}, {{5}, 5}}
                                : std::vector<StabChoice>{{{1}, 1}, {{4}, 4}};
    if (j == 2) x_side = i == 0 ? std::vector<StabChoice>{{{2}, 2}, {{5}, 5}}
                                : std::vector<StabChoice>{{{2}, 2}, {{3}, 3}};
    std::vector<StabChoice> out = z_side;
    out.insert(out.end(), x_side.begin(), x_side.end());
    return out;
}

// Generic fallback: greedily cover the anchor qubits with generators of the
// wanted type that carry the anchor site.
inline std::vector<StabChoice> generic_insertion_table(const StabilizerCode &code,
                                                       const std::vector<uint32_t> &anchors,
                                                       uint8_t wanted_letter) {
    std::vector<StabChoice> out;
    for (uint32_t anchor : anchors) {
        bool found = false;
        for (size_t g = 0; g < code.generators.size() && !found; g++) {
            uint8_t l = code.generators[g].letter(anchor);
            if (l == wanted_letter || (wanted_letter == kY && l != kI)) {
                out.push_back({{g}, g});
                found = true;
            }
        }
        if (!found) {
            throw std::invalid_argument("no generator covers the flag anchor qubit");
        }
    }
    return out;
}

inline InsertedStabilizer resolve_choice(const StabilizerCode &code, const StabChoice &choice) {
    PauliOperator op = PauliOperator::identity(code.n);
    for (size_t g : choice.factors) {
        op *= code.generators[g];
    }
    return {op, choice.factors, choice.omitted};
}

}  // namespace detail

// Unflagged or flagged measurement round of the listed generators. Qubit
// layout: one fresh ancilla per generator starting at `base`, flags after
// them. All measurement bits become detectors.
inline Circuit synth_syndrome_round(const StabilizerCode &code, bool flagged,
                                    const std::vector<size_t> &subset, uint32_t base) {
    Circuit c;
    c.require_qubits(code.n);
    uint32_t anc = base;
    uint32_t flag = base + static_cast<uint32_t>(subset.size());
    for (size_t idx : subset) {
        const PauliOperator &g = code.generators[idx];
        std::vector<uint32_t> sites = g.support();
        c.add(Op::InitX, {anc});
        if (!flagged) {
            for (uint32_t q : sites) {
                c.add(pcp_op(kZ, g.letter(q)), {anc, q});
            }
        } else {
            c.add(Op::InitZ, {flag});
            for (size_t s = 0; s < sites.size(); s++) {
                if (s == 1) {
                    c.add(Op::ZCX, {anc, flag});  // open the flag window
                }
                c.add(pcp_op(kZ, g.letter(sites[s])), {anc, sites[s]});
                if (s + 2 == sites.size()) {
                    c.add(Op::ZCX, {anc, flag});  // close before the last gate
                }
            }
            uint32_t mf = c.measure(Op::MeasureZ, flag);
            c.add_detector({mf});
            flag++;
        }
        uint32_t m = c.measure(Op::MeasureX, anc);
        c.add_detector({m});
        anc++;
    }
    return c;
}

inline Circuit synth_syndrome_extraction(const StabilizerCode &code, bool flagged) {
    std::vector<size_t> all(code.generators.size());
    for (size_t i = 0; i < all.size(); i++) {
        all[i] = i;
    }
    return synth_syndrome_round(code, flagged, all, code.n);
}

// Emits the targeted logical Clifford gate circuits: all-to-all
// Pauli-controlled-Pauli over the logical support plus transversal fix-up
// layers, with optional flags and intermediate stabilizer measurements.
inline SynthesizedGate synth_logical(const StabilizerCode &code, const GateSpec &spec,
                                     const FlagLayout &layout = FlagLayout{}) {
    SynthesizedGate out;
    out.spec = spec;
    out.n_data = code.n;
    Circuit &c = out.circuit;
    c.require_qubits(code.n);

    auto support_of = [&](uint32_t logical) {
        if (logical >= code.k) {
            throw std::invalid_argument("synth: logical index out of range");
        }
        std::vector<uint32_t> sx = code.logical_x[logical].support();
        std::vector<uint32_t> sz = code.logical_z[logical].support();
        if (sx != sz) {
            throw std::invalid_argument(
                "synth: logical X and Z supports differ; round-robin synthesis needs matching "
                "supports");
        }
        if (sx.size() % 2 == 0) {
            throw std::invalid_argument("synth: logical support must have odd weight");
        }
        return sx;
    };

    bool with_stabs = spec.flavor == GateFlavor::FlaggedWithStabs;
    bool flagged = spec.flavor != GateFlavor::Bare;

    std::vector<detail::StabChoice> choices;
    if (with_stabs) {
        choices = code.name == "lcs_15_3_3"
                      ? detail::lcs_insertion_table(spec.kind, spec.logicals)
                      : std::vector<detail::StabChoice>{};
    }

    if (spec.kind == LogicalGate::H || spec.kind == LogicalGate::S) {
        if (spec.logicals.size() != 1) {
            throw std::invalid_argument("synth: single-qubit gate takes one logical index");
        }
        std::vector<uint32_t> support = support_of(spec.logicals[0]);
        if (support.size() != 3 && flagged) {
            throw std::invalid_argument("synth: flag construction covers distance 3 only");
        }
        uint8_t gate_pauli = spec.kind == LogicalGate::H ? kY : kZ;
        uint8_t comp_pauli = spec.kind == LogicalGate::H ? kZ : kX;
        Op pcp = pcp_op(gate_pauli, gate_pauli);
        auto pairs = detail::round_robin_pairs(support);

        if (with_stabs && choices.empty()) {
            choices = detail::generic_insertion_table(code, {support[0], support[1]},
                                                      gate_pauli);
        }
        // The commuted closing gate of the complement flag: the complement
        // Pauli pulled through the PCP gains a letter on the other leg.
        uint8_t commuted_letter = 0;
        {
            const ConjEntry &e = gate_tables().entry(pcp, static_cast<uint32_t>(comp_pauli) << 2);
            if (!e.pauli || e.phase != 0 || e.letters[1] != comp_pauli) {
                throw std::logic_error("synth: unexpected flag commutation");
            }
            commuted_letter = e.letters[0];
        }

        uint32_t flag_base = code.n;
        uint32_t stab_base = code.n + (flagged ? 2 * static_cast<uint32_t>(pairs.size()) : 0);
        size_t stab_next = 0;
        for (size_t k = 0; k < pairs.size(); k++) {
            auto [a, b] = pairs[k];
            if (!flagged) {
                c.add(pcp, {a, b});
                continue;
            }
            uint32_t match_leg = layout.match_flag_on_first_leg ? a : b;
            uint32_t comp_leg = layout.match_flag_on_first_leg ? b : a;
            uint32_t f_match = flag_base + static_cast<uint32_t>(2 * k);
            uint32_t f_comp = f_match + 1;
            out.flag_qubits.push_back(f_match);
            out.flag_qubits.push_back(f_comp);
            auto open_match = [&] {
                c.add(Op::InitZ, {f_match});
                c.add(pcp_op(kX, gate_pauli), {f_match, match_leg});
                // Intermediate stabilizer measurement inside the freshly
                // opened matching-flag window (first and last pair).
                bool designated = with_stabs && (k == 0 || k == 2) && stab_next < choices.size();
                if (designated) {
                    InsertedStabilizer ins = detail::resolve_choice(code, choices[stab_next]);
                    uint32_t anc = stab_base + static_cast<uint32_t>(stab_next);
                    auto sites = detail::ordered_sites(ins.op, layout.insertion_order);
                    detail::emit_pauli_measurement(c, ins.op, anc, true, &sites);
                    out.stab_ancillas.push_back(anc);
                    out.inserted.push_back(std::move(ins));
                    stab_next++;
                }
            };
            auto open_comp = [&] {
                c.add(Op::InitZ, {f_comp});
                c.add(pcp_op(kX, comp_pauli), {f_comp, comp_leg});
            };
            auto close_match = [&] { c.add(pcp_op(kX, gate_pauli), {f_match, match_leg}); };
            auto close_comp = [&] {
                if (layout.commuted_part_first) {
                    c.add(pcp_op(kX, commuted_letter), {f_comp, match_leg});
                    c.add(pcp_op(kX, comp_pauli), {f_comp, comp_leg});
                } else {
                    c.add(pcp_op(kX, comp_pauli), {f_comp, comp_leg});
                    c.add(pcp_op(kX, commuted_letter), {f_comp, match_leg});
                }
            };
            if (layout.open_match_first) {
                open_match();
                open_comp();
            } else {
                open_comp();
                open_match();
            }
            c.add(pcp, {a, b});
            if (layout.close_match_first) {
                close_match();
                close_comp();
            } else {
                close_comp();
                close_match();
            }
            c.add_detector({c.measure(Op::MeasureZ, f_match)});
            c.add_detector({c.measure(Op::MeasureZ, f_comp)});
        }
        // Transversal layer(s).
        if (spec.kind == LogicalGate::H) {
            for (uint32_t q : support) {
                c.add(Op::H, {q});
            }
            if (((support.size() - 1) / 2) % 2 == 1) {
                for (uint32_t q : support) {
                    c.add(Op::Y, {q});
                }
            }
        } else {
            for (uint32_t q : support) {
                c.add(Op::S, {q});
            }
        }
    } else if (spec.kind == LogicalGate::CX) {
        if (spec.logicals.size() != 2 || spec.logicals[0] == spec.logicals[1]) {
            throw std::invalid_argument("synth: CX takes two distinct logical indices");
        }
        std::vector<uint32_t> controls = support_of(spec.logicals[0]);
        std::vector<uint32_t> targets = support_of(spec.logicals[1]);
        size_t nc = controls.size(), nt = targets.size();
        if (flagged && (nc != 3 || nt != 3)) {
            throw std::invalid_argument("synth: flag construction covers distance 3 only");
        }
        if (with_stabs && choices.empty()) {
            auto z_side = detail::generic_insertion_table(code, {controls[0], controls[1]}, kZ);
            auto x_side = detail::generic_insertion_table(code, {targets[0], targets[1]}, kX);
            choices = z_side;
            choices.insert(choices.end(), x_side.begin(), x_side.end());
        }
        uint32_t flag_base = code.n;
        uint32_t stab_base = flag_base + (flagged ? static_cast<uint32_t>(nc + nt) : 0);
        auto open_control_flag = [&](size_t a) {
            uint32_t fc = flag_base + static_cast<uint32_t>(a);
            out.flag_qubits.push_back(fc);
            c.add(Op::InitZ, {fc});
            c.add(pcp_op(kX, kZ), {fc, controls[a]});
        };
        auto open_target_flag = [&](size_t b) {
            uint32_t ft = flag_base + static_cast<uint32_t>(nc + b);
            out.flag_qubits.push_back(ft);
            c.add(Op::InitZ, {ft});
            c.add(pcp_op(kX, kX), {ft, targets[b]});
        };
        auto insert_stab = [&](size_t which) {
            InsertedStabilizer ins = detail::resolve_choice(code, choices[which]);
            uint32_t anc = stab_base + static_cast<uint32_t>(which);
            auto sites = detail::ordered_sites(ins.op, layout.insertion_order);
            detail::emit_pauli_measurement(c, ins.op, anc, true, &sites);
            out.stab_ancillas.push_back(anc);
            out.inserted.push_back(std::move(ins));
        };
        if (with_stabs) {
            // All windows open up front; the control-side stabilizers are
            // measured before the target windows so that even-overlap picks
            // stay deterministic, and every insertion's CP self-noise on a
            // support qubit sits inside that qubit's still-open window.
            for (size_t a = 0; a < nc; a++) {
                open_control_flag(a);
            }
            insert_stab(0);
            insert_stab(1);
            for (size_t b = 0; b < nt; b++) {
                open_target_flag(b);
            }
            insert_stab(2);
            insert_stab(3);
        }
        for (size_t g = 0; g < nc * nt; g++) {
            size_t a = g / nt, b = g % nt;
            if (flagged && !with_stabs) {
                if (b == 0) {
                    open_control_flag(a);
                }
                if (a == 0) {
                    open_target_flag(b);
                }
            }
            c.add(Op::ZCX, {controls[a], targets[b]});
            if (flagged) {
                if (b == 1) {  // control a's window closes after its second gate
                    uint32_t fc = flag_base + static_cast<uint32_t>(a);
                    c.add(pcp_op(kX, kZ), {fc, controls[a]});
                    c.add_detector({c.measure(Op::MeasureZ, fc)});
                }
                if (a == 1) {  // target b's window closes after its second gate
                    uint32_t ft = flag_base + static_cast<uint32_t>(nc + b);
                    c.add(pcp_op(kX, kX), {ft, targets[b]});
                    c.add_detector({c.measure(Op::MeasureZ, ft)});
                }
            }
        }
    } else {
        throw std::invalid_argument("synth_logical: T has no flagged construction; use "
                                    "synth_general_d for the bare circuit");
    }

    for (const auto &ins : out.inserted) {
        out.omitted_generators.push_back(ins.omitted_factor);
    }
    out.entangling_count = count_entangling(c);
    uint32_t completing = 0;
    for (size_t g = 0; g < code.generators.size(); g++) {
        bool omitted = std::find(out.omitted_generators.begin(), out.omitted_generators.end(),
                                 g) != out.omitted_generators.end();
        if (!omitted) {
            completing += code.generators[g].weight();
        }
    }
    out.ft_reference_entangling = out.entangling_count + completing;
    return out;
}

// Bare distance-d constructions on explicit supports (and the non-FT T).
inline Circuit synth_general_d(const std::vector<std::vector<uint32_t>> &supports,
                               LogicalGate kind) {
    Circuit c;
    if (kind == LogicalGate::H || kind == LogicalGate::S || kind == LogicalGate::T) {
        if (supports.size() != 1) {
            throw std::invalid_argument("single-qubit gate takes one support");
        }
        const auto &s = supports[0];
        if (s.size() % 2 == 0) {
            throw std::invalid_argument("support must have odd weight");
        }
        if (kind == LogicalGate::T) {
            uint32_t pivot = s[0];
            for (size_t i = 1; i < s.size(); i++) {
                c.add(Op::ZCX, {pivot, s[i]});
            }
            for (size_t i = 1; i < s.size(); i++) {
                c.add(Op::ZCX, {s[i], pivot});
            }
            c.add(Op::T, {pivot});
            for (size_t i = s.size(); i-- > 1;) {
                c.add(Op::ZCX, {s[i], pivot});
            }
            for (size_t i = s.size(); i-- > 1;) {
                c.add(Op::ZCX, {pivot, s[i]});
            }
            return c;
        }
        uint8_t p = kind == LogicalGate::H ? kY : kZ;
        for (auto [a, b] : detail::round_robin_pairs(s)) {
            c.add(pcp_op(p, p), {a, b});
        }
        for (uint32_t q : s) {
            c.add(kind == LogicalGate::H ? Op::H : Op::S, {q});
        }
        if (kind == LogicalGate::H && ((s.size() - 1) / 2) % 2 == 1) {
            for (uint32_t q : s) {
                c.add(Op::Y, {q});
            }
        }
        return c;
    }
    if (supports.size() != 2) {
        throw std::invalid_argument("CX takes control and target supports");
    }
    for (uint32_t a : supports[0]) {
        for (uint32_t b : supports[1]) {
            c.add(Op::ZCX, {a, b});
        }
    }
    return c;
}

// Measurement circuit for the targeted logical Hadamard operator: one
// measurement qubit controls every physical gate of the bare logical H; the
// flagged variant adds a single flag catching measurement-qubit bit flips.
inline SynthesizedGate synth_magic_measure(const StabilizerCode &code, uint32_t logical,
                                           bool flagged) {
    std::vector<uint32_t> support = code.logical_x[logical].support();
    if (support.size() != 3 || code.logical_z[logical].support() != support) {
        throw std::invalid_argument("magic measurement needs a weight-3 shared logical support");
    }
    SynthesizedGate out;
    out.spec = GateSpec{LogicalGate::H, {logical},
                        flagged ? GateFlavor::Flagged : GateFlavor::Bare};
    out.n_data = code.n;
    Circuit &c = out.circuit;
    uint32_t m = code.n;      // measurement qubit
    uint32_t f = code.n + 1;  // flag qubit
    c.require_qubits(code.n);
    c.add(Op::InitX, {m});
    if (flagged) {
        out.flag_qubits.push_back(f);
        c.add(Op::InitX, {f});
        c.add(Op::ZCZ, {m, f});
    }
    for (auto [a, b] : detail::round_robin_pairs(support)) {
        c.add(Op::C_YCY, {m, a, b});
    }
    for (uint32_t q : support) {
        c.add(Op::CH, {m, q});
    }
    for (uint32_t q : support) {
        c.add(Op::ZCY, {m, q});
    }
    if (flagged) {
        c.add(Op::ZCZ, {m, f});
        c.add_detector({c.measure(Op::MeasureX, f)});
    }
    c.measure(Op::MeasureX, m);  // the logical Hadamard eigenvalue; not a detector
    out.entangling_count = count_entangling(c);
    out.ft_reference_entangling = out.entangling_count;
    return out;
}

// Threads a Pauli through a purely unitary circuit (exact conjugation).
inline PauliOperator circuit_conjugate(const Circuit &c, PauliOperator p) {
    for (const auto &ins : c.instructions) {
        if (op_is_measurement(ins.op) || op_is_init(ins.op)) {
            throw std::invalid_argument("circuit_conjugate: circuit must be unitary");
        }
        if (!op_is_unitary(ins.op)) {
            continue;
        }
        uint32_t arity = op_arity(ins.op);
        for (size_t g = 0; g + arity <= ins.targets.size(); g += arity) {
            conjugate_via_table(p, ins.op, ins.targets.data() + g);
        }
    }
    return p;
}

}  // namespace lcsft
