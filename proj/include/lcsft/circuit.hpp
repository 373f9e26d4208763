#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/gates.hpp"

namespace lcsft {

// One circuit line. Unitary/measure/init ops may broadcast over several
// target groups (stim style): targets.size() must be a multiple of the op
// arity and each group is one application, in order.
struct Instruction {
    Op op;
    std::vector<uint32_t> targets;
    double arg = 0.0;                  // noise probability / observable index
    std::vector<uint32_t> records;     // absolute measurement indices (Detector/Observable)

    uint32_t group_count() const {
        uint32_t a = op_arity(op);
        return a == 0 ? 0 : static_cast<uint32_t>(targets.size()) / a;
    }
};

struct Circuit {
    uint32_t n_qubits = 0;
    std::vector<Instruction> instructions;

    // --- construction helpers ---

    void require_qubits(uint32_t n) { n_qubits = std::max(n_qubits, n); }

    Instruction &add(Op op, std::vector<uint32_t> targets, double arg = 0.0) {
        uint32_t a = op_arity(op);
        if (a == 0 && !targets.empty()) {
            throw std::invalid_argument("instruction takes no targets");
        }
        if (a > 0 && (targets.empty() || targets.size() % a != 0)) {
            throw std::invalid_argument(std::string("bad target count for ") + op_name(op));
        }
        for (uint32_t t : targets) {
            require_qubits(t + 1);
        }
        if (a >= 2) {
            for (size_t g = 0; g + a <= targets.size(); g += a) {
                for (size_t i = 0; i < a; i++) {
                    for (size_t j = i + 1; j < a; j++) {
                        if (targets[g + i] == targets[g + j]) {
                            throw std::invalid_argument(
                                std::string(op_name(op)) + ": duplicate target");
                        }
                    }
                }
            }
        }
        instructions.push_back(Instruction{op, std::move(targets), arg, {}});
        return instructions.back();
    }

    // Appends a measurement and returns its record index.
    uint32_t measure(Op op, uint32_t q) {
        if (!op_is_measurement(op)) {
            throw std::invalid_argument("measure: not a measurement op");
        }
        uint32_t idx = static_cast<uint32_t>(num_measurements());
        add(op, {q});
        return idx;
    }

    void add_detector(std::vector<uint32_t> absolute_records) {
        check_records(absolute_records);
        instructions.push_back(Instruction{Op::Detector, {}, 0.0, std::move(absolute_records)});
    }

    void add_observable(uint32_t index, std::vector<uint32_t> absolute_records) {
        check_records(absolute_records);
        instructions.push_back(
            Instruction{Op::Observable, {}, static_cast<double>(index), std::move(absolute_records)});
    }

    void append(const Circuit &other) {
        uint32_t offset = static_cast<uint32_t>(num_measurements());
        require_qubits(other.n_qubits);
        for (Instruction ins : other.instructions) {
            for (uint32_t &r : ins.records) {
                r += offset;
            }
            instructions.push_back(std::move(ins));
        }
    }

    // --- queries ---

    size_t num_measurements() const {
        size_t c = 0;
        for (const auto &ins : instructions) {
            if (op_is_measurement(ins.op)) {
                c += ins.targets.size();
            }
        }
        return c;
    }

    std::vector<std::vector<uint32_t>> detectors() const {
        std::vector<std::vector<uint32_t>> out;
        for (const auto &ins : instructions) {
            if (ins.op == Op::Detector) {
                out.push_back(ins.records);
            }
        }
        return out;
    }

    // Observables keyed by index; repeated declarations accumulate.
    std::vector<std::vector<uint32_t>> observables() const {
        std::vector<std::vector<uint32_t>> out;
        for (const auto &ins : instructions) {
            if (ins.op != Op::Observable) {
                continue;
            }
            size_t k = static_cast<size_t>(ins.arg);
            if (out.size() <= k) {
                out.resize(k + 1);
            }
            out[k].insert(out[k].end(), ins.records.begin(), ins.records.end());
        }
        return out;
    }

    bool has_non_clifford() const {
        for (const auto &ins : instructions) {
            if (op_is_unitary(ins.op) && !op_is_clifford(ins.op)) {
                return true;
            }
        }
        return false;
    }

    // --- text format ---

    std::string serialize() const {
        std::ostringstream out;
        out << "QUBITS " << n_qubits << "\n";
        size_t measured = 0;
        for (const auto &ins : instructions) {
            out << op_name(ins.op);
            if (op_is_noise(ins.op)) {
                std::ostringstream num;
                num.precision(17);
                num << ins.arg;
                out << "(" << num.str() << ")";
            } else if (ins.op == Op::Observable) {
                out << "(" << static_cast<uint32_t>(ins.arg) << ")";
            }
            for (uint32_t t : ins.targets) {
                out << " " << t;
            }
            for (uint32_t r : ins.records) {
                out << " rec[" << (static_cast<int64_t>(r) - static_cast<int64_t>(measured))
                    << "]";
            }
            out << "\n";
            if (op_is_measurement(ins.op)) {
                measured += ins.targets.size();
            }
        }
        return out.str();
    }

    static Circuit parse(const std::string &text) {
        Circuit c;
        std::istringstream in(text);
        std::string line;
        size_t measured = 0;
        while (std::getline(in, line)) {
            size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#') {
                continue;
            }
            std::istringstream ls(line);
            std::string head;
            ls >> head;
            double arg = 0.0;
            size_t paren = head.find('(');
            if (paren != std::string::npos) {
                size_t close = head.find(')', paren);
                if (close == std::string::npos) {
                    throw std::invalid_argument("circuit parse: unbalanced '(' in " + line);
                }
                arg = std::stod(head.substr(paren + 1, close - paren - 1));
                head = head.substr(0, paren);
            }
            if (head == "QUBITS") {
                uint32_t n;
                ls >> n;
                c.require_qubits(n);
                continue;
            }
            Op op = op_from_name(head, line);
            std::vector<uint32_t> targets;
            std::vector<uint32_t> records;
            std::string tok;
            while (ls >> tok) {
                if (tok.rfind("rec[", 0) == 0) {
                    int64_t rel = std::stoll(tok.substr(4, tok.size() - 5));
                    int64_t abs = static_cast<int64_t>(measured) + rel;
                    if (abs < 0 || abs >= static_cast<int64_t>(measured)) {
                        throw std::invalid_argument("circuit parse: record out of range: " + tok);
                    }
                    records.push_back(static_cast<uint32_t>(abs));
                } else {
                    targets.push_back(static_cast<uint32_t>(std::stoul(tok)));
                }
            }
            if (op == Op::Detector) {
                c.add_detector(std::move(records));
            } else if (op == Op::Observable) {
                c.add_observable(static_cast<uint32_t>(arg), std::move(records));
            } else {
                c.add(op, std::move(targets), arg);
                if (op_is_measurement(op)) {
                    measured += c.instructions.back().targets.size();
                }
            }
        }
        return c;
    }

    uint64_t hash64() const {
        std::string s = serialize();
        uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

  private:
    void check_records(const std::vector<uint32_t> &records) const {
        size_t m = num_measurements();
        for (uint32_t r : records) {
            if (r >= m) {
                throw std::invalid_argument("record index out of range");
            }
        }
    }

    static Op op_from_name(const std::string &name, const std::string &line) {
        for (size_t i = 0; i < kNumOps; i++) {
            if (name == op_name(static_cast<Op>(i))) {
                return static_cast<Op>(i);
            }
        }
        // Aliases: a bare CP means Z-controlled P.
        if (name == "CX") return Op::ZCX;
        if (name == "CY") return Op::ZCY;
        if (name == "CZ") return Op::ZCZ;
        if (name == "MZ") return Op::MeasureZ;
        if (name == "RZ") return Op::InitZ;
        throw std::invalid_argument("circuit parse: unknown instruction in: " + line);
    }
};

}  // namespace lcsft
