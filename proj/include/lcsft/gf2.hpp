#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lcsft {

// Dense bit-vector with a fixed 256-bit capacity. Rows of GF(2) systems are
// symplectic vectors of length 2n, so n <= 128 qubits fit.
struct BitRow {
    static constexpr size_t kWords = 4;
    static constexpr size_t kMaxBits = 64 * kWords;
    std::array<uint64_t, kWords> w{};

    bool get(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t mask = 1ULL << (i & 63);
        if (v) {
            w[i >> 6] |= mask;
        } else {
            w[i >> 6] &= ~mask;
        }
    }
    void flip(size_t i) { w[i >> 6] ^= 1ULL << (i & 63); }

    BitRow &operator^=(const BitRow &o) {
        for (size_t k = 0; k < kWords; k++) {
            w[k] ^= o.w[k];
        }
        return *this;
    }
    friend BitRow operator^(BitRow a, const BitRow &b) { return a ^= b; }
    friend bool operator==(const BitRow &a, const BitRow &b) { return a.w == b.w; }

    bool any() const {
        for (uint64_t v : w) {
            if (v) {
                return true;
            }
        }
        return false;
    }
    size_t popcount() const {
        size_t c = 0;
        for (uint64_t v : w) {
            c += std::popcount(v);
        }
        return c;
    }
    // Parity of the AND with another row (the GF(2) inner product).
    bool dot(const BitRow &o) const {
        uint64_t acc = 0;
        for (size_t k = 0; k < kWords; k++) {
            acc ^= w[k] & o.w[k];
        }
        return std::popcount(acc) & 1;
    }
    int lowest_set(size_t num_bits) const {
        for (size_t k = 0; k < kWords; k++) {
            if (w[k]) {
                size_t i = 64 * k + std::countr_zero(w[k]);
                return i < num_bits ? static_cast<int>(i) : -1;
            }
        }
        return -1;
    }
};

// Row-space tools over GF(2). Columns are indexed 0..num_cols-1.
class Gf2Matrix {
  public:
    Gf2Matrix() = default;
    explicit Gf2Matrix(size_t num_cols) : num_cols_(num_cols) {
        if (num_cols > BitRow::kMaxBits) {
            throw std::invalid_argument("gf2: too many columns");
        }
    }

    size_t num_cols() const { return num_cols_; }
    size_t num_rows() const { return rows_.size(); }
    const BitRow &row(size_t i) const { return rows_[i]; }

    void add_row(const BitRow &r) { rows_.push_back(r); }

    size_t rank() const {
        Gf2Matrix copy = *this;
        return copy.reduce();
    }

    // In-place Gauss-Jordan; returns the rank. Pivot columns ascend.
    size_t reduce() {
        size_t r = 0;
        for (size_t c = 0; c < num_cols_ && r < rows_.size(); c++) {
            size_t pivot = r;
            while (pivot < rows_.size() && !rows_[pivot].get(c)) {
                pivot++;
            }
            if (pivot == rows_.size()) {
                continue;
            }
            std::swap(rows_[r], rows_[pivot]);
            for (size_t i = 0; i < rows_.size(); i++) {
                if (i != r && rows_[i].get(c)) {
                    rows_[i] ^= rows_[r];
                }
            }
            r++;
        }
        rows_.resize(r);
        return r;
    }

    // True iff v lies in the row space. Requires reduce() to have run.
    bool reduced_contains(const BitRow &v) const {
        BitRow rem = v;
        for (const BitRow &r : rows_) {
            int p = r.lowest_set(num_cols_);
            if (p >= 0 && rem.get(static_cast<size_t>(p))) {
                rem ^= r;
            }
        }
        return !rem.any();
    }

  private:
    size_t num_cols_ = 0;
    std::vector<BitRow> rows_;
};

// Basis of {v : M v = 0} over GF(2).
inline std::vector<BitRow> gf2_nullspace(const Gf2Matrix &m) {
    Gf2Matrix red = m;
    red.reduce();
    size_t n = m.num_cols();
    std::vector<int> pivot_of_col(n, -1);
    for (size_t r = 0; r < red.num_rows(); r++) {
        int p = red.row(r).lowest_set(n);
        if (p >= 0) {
            pivot_of_col[static_cast<size_t>(p)] = static_cast<int>(r);
        }
    }
    std::vector<BitRow> basis;
    for (size_t c = 0; c < n; c++) {
        if (pivot_of_col[c] >= 0) {
            continue;
        }
        BitRow v;
        v.set(c, true);
        for (size_t r = 0; r < red.num_rows(); r++) {
            if (red.row(r).get(c)) {
                int p = red.row(r).lowest_set(n);
                v.set(static_cast<size_t>(p), true);
            }
        }
        basis.push_back(v);
    }
    return basis;
}

}  // namespace lcsft
