#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lcsft {

using cplx = std::complex<double>;

// Tiny dense complex matrix, row-major. Only used for small unitaries
// (2x2 .. 8x8) and for generating conjugation tables.
struct CMat {
    size_t dim = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(size_t d) : dim(d), a(d * d) {}

    static CMat identity(size_t d) {
        CMat m(d);
        for (size_t i = 0; i < d; i++) {
            m.at(i, i) = 1.0;
        }
        return m;
    }

    cplx &at(size_t r, size_t c) { return a[r * dim + c]; }
    const cplx &at(size_t r, size_t c) const { return a[r * dim + c]; }

    CMat operator*(const CMat &o) const {
        if (o.dim != dim) {
            throw std::invalid_argument("CMat: dimension mismatch");
        }
        CMat r(dim);
        for (size_t i = 0; i < dim; i++) {
            for (size_t k = 0; k < dim; k++) {
                cplx v = at(i, k);
                if (v == cplx{}) {
                    continue;
                }
                for (size_t j = 0; j < dim; j++) {
                    r.at(i, j) += v * o.at(k, j);
                }
            }
        }
        return r;
    }

    CMat operator+(const CMat &o) const {
        CMat r = *this;
        for (size_t i = 0; i < a.size(); i++) {
            r.a[i] += o.a[i];
        }
        return r;
    }

    CMat scaled(cplx s) const {
        CMat r = *this;
        for (auto &v : r.a) {
            v *= s;
        }
        return r;
    }

    CMat adjoint() const {
        CMat r(dim);
        for (size_t i = 0; i < dim; i++) {
            for (size_t j = 0; j < dim; j++) {
                r.at(i, j) = std::conj(at(j, i));
            }
        }
        return r;
    }

    bool approx_equal(const CMat &o, double tol = 1e-9) const {
        if (o.dim != dim) {
            return false;
        }
        for (size_t i = 0; i < a.size(); i++) {
            if (std::abs(a[i] - o.a[i]) > tol) {
                return false;
            }
        }
        return true;
    }
};

inline CMat kron(const CMat &a, const CMat &b) {
    CMat r(a.dim * b.dim);
    for (size_t i = 0; i < a.dim; i++) {
        for (size_t j = 0; j < a.dim; j++) {
            cplx v = a.at(i, j);
            if (v == cplx{}) {
                continue;
            }
            for (size_t k = 0; k < b.dim; k++) {
                for (size_t l = 0; l < b.dim; l++) {
                    r.at(i * b.dim + k, j * b.dim + l) = v * b.at(k, l);
                }
            }
        }
    }
    return r;
}

// 2x2 Pauli matrix for a letter code (0=I, 1=X, 2=Z, 3=Y).
inline CMat pauli_matrix(uint8_t code) {
    CMat m(2);
    switch (code & 3) {
        case 0: m.at(0, 0) = 1; m.at(1, 1) = 1; break;
        case 1: m.at(0, 1) = 1; m.at(1, 0) = 1; break;
        case 2: m.at(0, 0) = 1; m.at(1, 1) = -1; break;
        case 3: m.at(0, 1) = cplx(0, -1); m.at(1, 0) = cplx(0, 1); break;
    }
    return m;
}

// Tensor product of letter codes, first code = most significant qubit.
inline CMat pauli_matrix(const uint8_t *codes, size_t count) {
    CMat m = pauli_matrix(codes[0]);
    for (size_t i = 1; i < count; i++) {
        m = kron(m, pauli_matrix(codes[i]));
    }
    return m;
}

}  // namespace lcsft
