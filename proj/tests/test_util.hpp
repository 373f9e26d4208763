#pragma once

// Independent dense-matrix oracle used across the test suite. Deliberately
// separate from the library's own matrix helpers: unitaries here come from
// explicit literals and textbook formulas so that sign conventions are pinned
// from the outside.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lcsft/pauli.hpp"

namespace oracle {

using C = std::complex<double>;

struct Mat {
    size_t d = 0;
    std::vector<C> v;

    Mat() = default;
    explicit Mat(size_t dim) : d(dim), v(dim * dim) {}
    Mat(size_t dim, std::initializer_list<C> vals) : d(dim), v(vals) {
        if (v.size() != d * d) {
            throw std::invalid_argument("oracle::Mat literal size");
        }
    }

    C &operator()(size_t r, size_t c) { return v[r * d + c]; }
    const C &operator()(size_t r, size_t c) const { return v[r * d + c]; }

    static Mat eye(size_t dim) {
        Mat m(dim);
        for (size_t i = 0; i < dim; i++) {
            m(i, i) = 1;
        }
        return m;
    }
};

inline Mat mul(const Mat &a, const Mat &b) {
    Mat r(a.d);
    for (size_t i = 0; i < a.d; i++) {
        for (size_t k = 0; k < a.d; k++) {
            C x = a(i, k);
            if (x == C{}) {
                continue;
            }
            for (size_t j = 0; j < a.d; j++) {
                r(i, j) += x * b(k, j);
            }
        }
    }
    return r;
}

inline Mat add(const Mat &a, const Mat &b) {
    Mat r = a;
    for (size_t i = 0; i < r.v.size(); i++) {
        r.v[i] += b.v[i];
    }
    return r;
}

inline Mat scale(const Mat &a, C s) {
    Mat r = a;
    for (auto &x : r.v) {
        x *= s;
    }
    return r;
}

inline Mat dagger(const Mat &a) {
    Mat r(a.d);
    for (size_t i = 0; i < a.d; i++) {
        for (size_t j = 0; j < a.d; j++) {
            r(i, j) = std::conj(a(j, i));
        }
    }
    return r;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat r(a.d * b.d);
    for (size_t i = 0; i < a.d; i++) {
        for (size_t j = 0; j < a.d; j++) {
            for (size_t k = 0; k < b.d; k++) {
                for (size_t l = 0; l < b.d; l++) {
                    r(i * b.d + k, j * b.d + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return r;
}

inline bool close(const Mat &a, const Mat &b, double tol = 1e-9) {
    if (a.d != b.d) {
        return false;
    }
    for (size_t i = 0; i < a.v.size(); i++) {
        if (std::abs(a.v[i] - b.v[i]) > tol) {
            return false;
        }
    }
    return true;
}

const C kImag(0, 1);

// Pauli letter matrices as literals (letter codes 0=I, 1=X, 2=Z, 3=Y).
inline Mat letter_mat(uint8_t code) {
    switch (code & 3) {
        case 0: return Mat(2, {1, 0, 0, 1});
        case 1: return Mat(2, {0, 1, 1, 0});
        case 2: return Mat(2, {1, 0, 0, -1});
        default: return Mat(2, {0, -kImag, kImag, 0});
    }
}

// Full matrix of an n-qubit Pauli operator, qubit 0 as the most significant
// factor, including the i^phase prefactor.
inline Mat pauli_mat(const lcsft::PauliOperator &p) {
    Mat m = letter_mat(p.letter(0));
    for (uint32_t q = 1; q < p.n; q++) {
        m = kron(m, letter_mat(p.letter(q)));
    }
    C ph = 1;
    for (int i = 0; i < (p.phase & 3); i++) {
        ph *= kImag;
    }
    return scale(m, ph);
}

// Decompose m as i^t * Pauli if possible; returns false otherwise.
inline bool match_pauli(const Mat &m, uint32_t n, lcsft::PauliOperator *out) {
    for (uint32_t letters = 0; letters < (1u << (2 * n)); letters++) {
        lcsft::PauliOperator cand(n);
        for (uint32_t q = 0; q < n; q++) {
            cand.set_letter(q, (letters >> (2 * q)) & 3);
        }
        for (uint8_t t = 0; t < 4; t++) {
            cand.phase = t;
            if (close(pauli_mat(cand), m)) {
                *out = cand;
                return true;
            }
        }
    }
    return false;
}

}  // namespace oracle
