#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/gf2.hpp"

namespace lcsft {

// Single-qubit letter codes: bit 0 = X component, bit 1 = Z component.
enum : uint8_t { kI = 0, kX = 1, kZ = 2, kY = 3 };

inline char letter_char(uint8_t code) { return "IXZY"[code & 3]; }

inline uint8_t letter_code(char c) {
    switch (c) {
        case 'I': return kI;
        case 'X': return kX;
        case 'Z': return kZ;
        case 'Y': return kY;
        default: throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
    }
}

// An n-qubit Pauli operator i^phase * L_0 L_1 ... L_{n-1}, bit-packed, with
// the phase tracked exactly mod 4. Immutable use is intended; operations
// return fresh values.
struct PauliOperator {
    static constexpr uint32_t kMaxQubits = 128;

    uint32_t n = 0;
    std::array<uint64_t, 2> x{};
    std::array<uint64_t, 2> z{};
    uint8_t phase = 0;  // i^phase

    PauliOperator() = default;
    explicit PauliOperator(uint32_t num_qubits) : n(num_qubits) {
        if (num_qubits > kMaxQubits) {
            throw std::invalid_argument("PauliOperator: more than 128 qubits");
        }
    }

    static PauliOperator identity(uint32_t num_qubits) { return PauliOperator(num_qubits); }

    // Build from letter placements, e.g. single("X", {0}) or from pairs.
    static PauliOperator from_sites(uint32_t num_qubits, uint8_t code,
                                    const std::vector<uint32_t> &qubits) {
        PauliOperator p(num_qubits);
        for (uint32_t q : qubits) {
            p.set_letter(q, code);
        }
        return p;
    }

    uint8_t letter(uint32_t q) const {
        uint64_t xb = (x[q >> 6] >> (q & 63)) & 1;
        uint64_t zb = (z[q >> 6] >> (q & 63)) & 1;
        return static_cast<uint8_t>(xb | (zb << 1));
    }

    void set_letter(uint32_t q, uint8_t code) {
        if (q >= n) {
            throw std::out_of_range("PauliOperator: qubit index out of range");
        }
        uint64_t mask = 1ULL << (q & 63);
        x[q >> 6] = (x[q >> 6] & ~mask) | ((code & 1) ? mask : 0);
        z[q >> 6] = (z[q >> 6] & ~mask) | ((code & 2) ? mask : 0);
    }

    bool is_identity_letters() const { return !(x[0] | x[1] | z[0] | z[1]); }
    bool is_identity() const { return is_identity_letters() && phase == 0; }

    uint32_t weight() const {
        return static_cast<uint32_t>(std::popcount(x[0] | z[0]) + std::popcount(x[1] | z[1]));
    }

    std::vector<uint32_t> support() const {
        std::vector<uint32_t> s;
        for (uint32_t q = 0; q < n; q++) {
            if (letter(q) != kI) {
                s.push_back(q);
            }
        }
        return s;
    }

    // Restriction to the first new_n qubits (letters only, phase dropped).
    PauliOperator truncated(uint32_t new_n) const {
        PauliOperator p(new_n);
        for (uint32_t q = 0; q < std::min(n, new_n); q++) {
            uint8_t l = letter(q);
            if (l) {
                p.set_letter(q, l);
            }
        }
        return p;
    }

    // Exact group product; phases included.
    PauliOperator &operator*=(const PauliOperator &o) {
        if (o.n != n) {
            throw std::invalid_argument("PauliOperator: length mismatch");
        }
        int f = 0;
        int b = 0;
        for (size_t k = 0; k < 2; k++) {
            uint64_t x1 = x[k], z1 = z[k], x2 = o.x[k], z2 = o.z[k];
            // Forward cycles X->Y, Y->Z, Z->X contribute +i; reversed, -i.
            uint64_t fwd = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
            uint64_t bwd = (x2 & ~z2 & x1 & z1) | (x2 & z2 & ~x1 & z1) | (~x2 & z2 & x1 & ~z1);
            f += std::popcount(fwd);
            b += std::popcount(bwd);
            x[k] ^= x2;
            z[k] ^= z2;
        }
        phase = static_cast<uint8_t>((phase + o.phase + f + 3 * b) & 3);
        return *this;
    }
    friend PauliOperator operator*(PauliOperator a, const PauliOperator &b) { return a *= b; }

    // Letters are involutions and same-site products carry no phase, so the
    // inverse just negates the i-exponent.
    PauliOperator inverse() const {
        PauliOperator p = *this;
        p.phase = static_cast<uint8_t>((4 - p.phase) & 3);
        return p;
    }

    friend bool operator==(const PauliOperator &a, const PauliOperator &b) {
        return a.n == b.n && a.x == b.x && a.z == b.z && a.phase == b.phase;
    }

    bool same_letters(const PauliOperator &o) const {
        return n == o.n && x == o.x && z == o.z;
    }

    // Symplectic product: 1 iff the operators anticommute.
    static bool anticommutes(const PauliOperator &a, const PauliOperator &b) {
        if (a.n != b.n) {
            throw std::invalid_argument("PauliOperator: length mismatch");
        }
        uint64_t acc = (a.x[0] & b.z[0]) ^ (a.z[0] & b.x[0]);
        int par = std::popcount(acc);
        acc = (a.x[1] & b.z[1]) ^ (a.z[1] & b.x[1]);
        par += std::popcount(acc);
        return par & 1;
    }

    // Symplectic vector (x-part in columns [0,n), z-part in [n,2n)).
    BitRow symplectic_row() const {
        BitRow r;
        for (uint32_t q = 0; q < n; q++) {
            uint8_t l = letter(q);
            if (l & 1) {
                r.set(q, true);
            }
            if (l & 2) {
                r.set(n + q, true);
            }
        }
        return r;
    }

    static PauliOperator from_symplectic_row(uint32_t n, const BitRow &r) {
        PauliOperator p(n);
        for (uint32_t q = 0; q < n; q++) {
            uint8_t code = static_cast<uint8_t>(r.get(q) | (r.get(n + q) << 1));
            if (code) {
                p.set_letter(q, code);
            }
        }
        return p;
    }

    // Text form, e.g. "+X0*Y10*Z12"; identity renders as "+I".
    std::string str() const {
        static const char *kPrefix[4] = {"+", "+i", "-", "-i"};
        std::string s = kPrefix[phase & 3];
        bool first = true;
        for (uint32_t q = 0; q < n; q++) {
            uint8_t l = letter(q);
            if (l == kI) {
                continue;
            }
            if (!first) {
                s += '*';
            }
            s += letter_char(l);
            s += std::to_string(q);
            first = false;
        }
        if (first) {
            s += 'I';
        }
        return s;
    }

    static PauliOperator parse(const std::string &text, uint32_t num_qubits) {
        PauliOperator p(num_qubits);
        size_t i = 0;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            bool neg = text[i] == '-';
            i++;
            bool imag = i < text.size() && text[i] == 'i';
            if (imag) {
                i++;
            }
            p.phase = static_cast<uint8_t>((neg ? 2 : 0) + (imag ? 1 : 0));
        }
        if (i < text.size() && text[i] == 'I' && i + 1 == text.size()) {
            return p;
        }
        while (i < text.size()) {
            uint8_t code = letter_code(text[i++]);
            size_t start = i;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
                i++;
            }
            if (start == i) {
                throw std::invalid_argument("Pauli parse: missing qubit index in " + text);
            }
            uint32_t q = static_cast<uint32_t>(std::stoul(text.substr(start, i - start)));
            if (q >= num_qubits) {
                throw std::invalid_argument("Pauli parse: qubit index out of range in " + text);
            }
            p.set_letter(q, code);
            if (i < text.size()) {
                if (text[i] != '*') {
                    throw std::invalid_argument("Pauli parse: expected '*' in " + text);
                }
                i++;
            }
        }
        return p;
    }
};

inline bool commutes(const PauliOperator &a, const PauliOperator &b) {
    return !PauliOperator::anticommutes(a, b);
}

}  // namespace lcsft
