#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsft/gf2.hpp"
#include "lcsft/pauli.hpp"

namespace lcsft {

enum class PauliClass { Identity, Stabilizer, Logical, Detectable };

// A CSS stabilizer code block: generator list (X-type first, order fixed),
// canonical logical operator basis, and syndrome / classification queries.
// Immutable after construction.
struct StabilizerCode {
    uint32_t n = 0;
    uint32_t k = 0;
    std::string name;
    std::vector<PauliOperator> generators;
    std::vector<PauliOperator> logical_x;
    std::vector<PauliOperator> logical_z;

    static StabilizerCode from_parts(uint32_t n, std::string name,
                                     std::vector<PauliOperator> gens,
                                     std::vector<PauliOperator> lx,
                                     std::vector<PauliOperator> lz) {
        StabilizerCode c;
        c.n = n;
        c.name = std::move(name);
        c.generators = std::move(gens);
        c.logical_x = std::move(lx);
        c.logical_z = std::move(lz);
        c.finish();
        return c;
    }

    void finish() {
        Gf2Matrix m(2 * n);
        for (const auto &g : generators) {
            m.add_row(g.symplectic_row());
        }
        size_t rank = m.reduce();
        if (rank != generators.size()) {
            throw std::invalid_argument("code: dependent generators");
        }
        if (static_cast<uint32_t>(rank) >= n) {
            throw std::invalid_argument("code: no logical qubits");
        }
        k = n - static_cast<uint32_t>(rank);
        span_ = std::move(m);
        for (size_t i = 0; i < generators.size(); i++) {
            for (size_t j = i + 1; j < generators.size(); j++) {
                if (PauliOperator::anticommutes(generators[i], generators[j])) {
                    throw std::invalid_argument("code: generators do not commute");
                }
            }
        }
        if (logical_x.size() != k || logical_z.size() != k) {
            throw std::invalid_argument("code: logical operator count != k");
        }
        for (uint32_t i = 0; i < k; i++) {
            for (const auto &g : generators) {
                if (PauliOperator::anticommutes(g, logical_x[i]) ||
                    PauliOperator::anticommutes(g, logical_z[i])) {
                    throw std::invalid_argument("code: logicals fail to commute with generators");
                }
            }
            for (uint32_t j = 0; j < k; j++) {
                bool want = i == j;
                if (PauliOperator::anticommutes(logical_x[i], logical_z[j]) != want ||
                    PauliOperator::anticommutes(logical_x[i], logical_x[j]) ||
                    PauliOperator::anticommutes(logical_z[i], logical_z[j])) {
                    throw std::invalid_argument("code: logical commutation structure wrong");
                }
            }
        }
    }

    uint32_t num_generators() const { return static_cast<uint32_t>(generators.size()); }

    // Syndrome as a packed bit vector, bit i = anticommutation with
    // generators[i]. Requires n - k <= 64.
    uint64_t syndrome_bits(const PauliOperator &error) const {
        if (error.n != n) {
            throw std::invalid_argument("syndrome: operator length mismatch");
        }
        uint64_t s = 0;
        for (size_t i = 0; i < generators.size(); i++) {
            s |= static_cast<uint64_t>(PauliOperator::anticommutes(generators[i], error)) << i;
        }
        return s;
    }

    std::vector<bool> syndrome(const PauliOperator &error) const {
        uint64_t s = syndrome_bits(error);
        std::vector<bool> out(generators.size());
        for (size_t i = 0; i < generators.size(); i++) {
            out[i] = (s >> i) & 1;
        }
        return out;
    }

    // Anticommutation pattern with the logical basis; zero together with a
    // trivial syndrome means the operator lies in the stabilizer span.
    uint32_t logical_coords(const PauliOperator &p) const {
        uint32_t c = 0;
        for (uint32_t i = 0; i < k; i++) {
            c |= static_cast<uint32_t>(PauliOperator::anticommutes(p, logical_z[i])) << (2 * i);
            c |= static_cast<uint32_t>(PauliOperator::anticommutes(p, logical_x[i])) << (2 * i + 1);
        }
        return c;
    }

    bool in_stabilizer_span(const PauliOperator &p) const {
        return span_.reduced_contains(p.symplectic_row());
    }

    // The exact signed group element with the same letters as p, if those
    // letters lie in the generator span.
    std::optional<PauliOperator> group_element_with_letters(const PauliOperator &p) const {
        BitRow want = p.symplectic_row();
        // Gaussian elimination with tracked generator combinations.
        std::vector<BitRow> rows;
        std::vector<PauliOperator> elems;
        for (const auto &g : generators) {
            rows.push_back(g.symplectic_row());
            elems.push_back(g);
        }
        PauliOperator acc = PauliOperator::identity(n);
        BitRow rem = want;
        for (size_t c = 0; c < 2 * n; c++) {
            size_t pivot = SIZE_MAX;
            for (size_t r = 0; r < rows.size(); r++) {
                if (rows[r].get(c)) {
                    pivot = r;
                    break;
                }
            }
            if (pivot == SIZE_MAX) {
                continue;
            }
            BitRow prow = rows[pivot];
            PauliOperator pelem = elems[pivot];
            rows.erase(rows.begin() + pivot);
            elems.erase(elems.begin() + pivot);
            for (size_t r = 0; r < rows.size(); r++) {
                if (rows[r].get(c)) {
                    rows[r] ^= prow;
                    elems[r] = elems[r] * pelem;
                }
            }
            if (rem.get(c)) {
                rem ^= prow;
                acc *= pelem;
            }
        }
        if (rem.any()) {
            return std::nullopt;
        }
        return acc;
    }

    // True iff p equals a stabilizer-group element exactly, including phase.
    bool is_exact_stabilizer_element(const PauliOperator &p) const {
        auto elem = group_element_with_letters(p);
        return elem && *elem == p;
    }

    PauliClass classify(const PauliOperator &p) const {
        if (p.n != n) {
            throw std::invalid_argument("classify: operator length mismatch");
        }
        if (p.is_identity_letters()) {
            return PauliClass::Identity;
        }
        if (syndrome_bits(p) != 0) {
            return PauliClass::Detectable;
        }
        return in_stabilizer_span(p) ? PauliClass::Stabilizer : PauliClass::Logical;
    }

    // Exhaustive search for the lightest logical operator with weight <= max_w.
    std::optional<uint32_t> brute_force_distance(uint32_t max_w) const {
        PauliOperator p(n);
        return distance_search(p, 0, 0, max_w);
    }

  private:
    std::optional<uint32_t> distance_search(PauliOperator &p, uint32_t first_q, uint32_t used,
                                            uint32_t max_w) const {
        if (used > 0 && syndrome_bits(p) == 0 && logical_coords(p) != 0) {
            return used;
        }
        if (used == max_w) {
            return std::nullopt;
        }
        std::optional<uint32_t> best;
        for (uint32_t q = first_q; q < n; q++) {
            for (uint8_t code = 1; code <= 3; code++) {
                p.set_letter(q, code);
                auto r = distance_search(p, q + 1, used + 1, max_w);
                if (r && (!best || *r < *best)) {
                    best = r;
                }
                p.set_letter(q, kI);
            }
        }
        return best;
    }

    Gf2Matrix span_;
};

// The [[15,3,3]] lift-connected surface code instance, generators and
// logicals exactly as tabulated (X-type S_X^(0..5), then Z-type S_Z^(0..5)).
inline StabilizerCode lcs_15_3_3() {
    auto xop = [](std::vector<uint32_t> qs) { return PauliOperator::from_sites(15, kX, qs); };
    auto zop = [](std::vector<uint32_t> qs) { return PauliOperator::from_sites(15, kZ, qs); };
    std::vector<PauliOperator> gens = {
        xop({0, 6, 7, 12}),      xop({1, 7, 8, 13}),      xop({2, 6, 8, 14}),
        xop({3, 9, 10, 12, 14}), xop({4, 10, 11, 12, 13}), xop({5, 9, 11, 13, 14}),
        zop({0, 3, 4, 12}),      zop({1, 4, 5, 13}),      zop({2, 3, 5, 14}),
        zop({6, 9, 10, 12, 14}), zop({7, 10, 11, 12, 13}), zop({8, 9, 11, 13, 14}),
    };
    std::vector<PauliOperator> lx = {xop({0, 10, 12}), xop({1, 11, 13}), xop({2, 9, 14})};
    std::vector<PauliOperator> lz = {zop({0, 10, 12}), zop({1, 11, 13}), zop({2, 9, 14})};
    return StabilizerCode::from_parts(15, "lcs_15_3_3", std::move(gens), std::move(lx),
                                      std::move(lz));
}

namespace detail {

// Pick k coset representatives of `candidates` that are independent of
// `span_rows` (all as symplectic rows of width 2n).
inline std::vector<BitRow> independent_cosets(const std::vector<BitRow> &candidates,
                                              const std::vector<BitRow> &span_rows,
                                              size_t num_cols, size_t want) {
    Gf2Matrix acc(num_cols);
    for (const auto &r : span_rows) {
        acc.add_row(r);
    }
    size_t base_rank = acc.reduce();
    std::vector<BitRow> picked;
    for (const auto &c : candidates) {
        Gf2Matrix trial = acc;
        trial.add_row(c);
        if (trial.reduce() > base_rank) {
            acc.add_row(c);
            acc.reduce();
            base_rank++;
            picked.push_back(c);
            if (picked.size() == want) {
                break;
            }
        }
    }
    return picked;
}

}  // namespace detail

// Generic CSS loader. Hx rows become X-type generators, Hz rows Z-type; a
// canonical logical basis is derived by GF(2) elimination when not supplied.
inline StabilizerCode from_check_matrices(const std::vector<std::vector<uint8_t>> &hx,
                                          const std::vector<std::vector<uint8_t>> &hz,
                                          std::string name = "css",
                                          std::vector<PauliOperator> lx_in = {},
                                          std::vector<PauliOperator> lz_in = {}) {
    if (hx.empty() && hz.empty()) {
        throw std::invalid_argument("css: empty check matrices");
    }
    size_t n = hx.empty() ? hz[0].size() : hx[0].size();
    auto to_row = [&](const std::vector<uint8_t> &bits) {
        if (bits.size() != n) {
            throw std::invalid_argument("css: ragged check matrix");
        }
        BitRow r;
        for (size_t i = 0; i < n; i++) {
            if (bits[i]) {
                r.set(i, true);
            }
        }
        return r;
    };
    // CSS condition: every X row commutes with every Z row.
    std::vector<BitRow> xrows, zrows;
    for (const auto &row : hx) {
        xrows.push_back(to_row(row));
    }
    for (const auto &row : hz) {
        zrows.push_back(to_row(row));
    }
    for (const auto &xr : xrows) {
        for (const auto &zr : zrows) {
            if (xr.dot(zr)) {
                throw std::invalid_argument("css: Hx and Hz rows anticommute (Hx*Hz^T != 0)");
            }
        }
    }
    std::vector<PauliOperator> gens;
    auto row_to_pauli = [&](const BitRow &r, uint8_t code) {
        PauliOperator p(static_cast<uint32_t>(n));
        for (size_t q = 0; q < n; q++) {
            if (r.get(q)) {
                p.set_letter(static_cast<uint32_t>(q), code);
            }
        }
        return p;
    };
    // Drop dependent rows so the generator list stays independent.
    {
        Gf2Matrix seen(2 * n);
        for (const auto &r : xrows) {
            PauliOperator p = row_to_pauli(r, kX);
            Gf2Matrix trial = seen;
            trial.add_row(p.symplectic_row());
            if (trial.rank() > seen.num_rows()) {
                seen.add_row(p.symplectic_row());
                seen.reduce();
                gens.push_back(p);
            }
        }
        for (const auto &r : zrows) {
            PauliOperator p = row_to_pauli(r, kZ);
            Gf2Matrix trial = seen;
            trial.add_row(p.symplectic_row());
            if (trial.rank() > seen.num_rows()) {
                seen.add_row(p.symplectic_row());
                seen.reduce();
                gens.push_back(p);
            }
        }
    }
    if (gens.size() >= n) {
        throw std::invalid_argument("css: rank leaves no logical qubits");
    }
    size_t k = n - gens.size();
    if (lx_in.empty()) {
        // X logicals: ker Hz modulo rowspace Hx; Z logicals symmetrically.
        Gf2Matrix mz(n), mx(n);
        for (const auto &r : zrows) {
            mz.add_row(r);
        }
        for (const auto &r : xrows) {
            mx.add_row(r);
        }
        auto xlog_rows = detail::independent_cosets(gf2_nullspace(mz), xrows, n, k);
        auto zlog_rows = detail::independent_cosets(gf2_nullspace(mx), zrows, n, k);
        if (xlog_rows.size() != k || zlog_rows.size() != k) {
            throw std::invalid_argument("css: failed to derive logical operators");
        }
        // Canonical pairing: make the anticommutation matrix the identity.
        std::vector<BitRow> zfixed;
        std::vector<BitRow> zpool = zlog_rows;
        for (size_t i = 0; i < k; i++) {
            // Find a Z candidate anticommuting with X_i.
            size_t j = 0;
            while (j < zpool.size() && !xlog_rows[i].dot(zpool[j])) {
                j++;
            }
            if (j == zpool.size()) {
                throw std::invalid_argument("css: degenerate logical pairing");
            }
            BitRow zi = zpool[j];
            zpool.erase(zpool.begin() + j);
            for (auto &other : zpool) {
                if (xlog_rows[i].dot(other)) {
                    other ^= zi;
                }
            }
            zfixed.push_back(zi);
        }
        // Clean X side: X_i must commute with Z_j for j != i.
        for (size_t i = 0; i < k; i++) {
            for (size_t j = 0; j < k; j++) {
                if (j != i && zfixed[j].dot(xlog_rows[i])) {
                    xlog_rows[i] ^= xlog_rows[j];
                }
            }
        }
        for (size_t i = 0; i < k; i++) {
            lx_in.push_back(row_to_pauli(xlog_rows[i], kX));
            lz_in.push_back(row_to_pauli(zfixed[i], kZ));
        }
    }
    return StabilizerCode::from_parts(static_cast<uint32_t>(n), std::move(name), std::move(gens),
                                      std::move(lx_in), std::move(lz_in));
}

// Plain-text check matrix file: sections "HX" and "HZ" with 0/1 rows,
// optional "LX"/"LZ" sections with Pauli strings.
inline StabilizerCode parse_check_matrix_file(const std::string &text, std::string name = "css") {
    std::istringstream in(text);
    std::string line, section;
    std::vector<std::vector<uint8_t>> hx, hz;
    std::vector<std::string> lx_text, lz_text;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') {
            continue;
        }
        size_t b = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(a, b - a + 1);
        if (tok == "HX" || tok == "HZ" || tok == "LX" || tok == "LZ") {
            section = tok;
            continue;
        }
        if (section == "HX" || section == "HZ") {
            std::vector<uint8_t> row;
            for (char c : tok) {
                if (c == '0' || c == '1') {
                    row.push_back(c == '1');
                } else if (c != ' ') {
                    throw std::invalid_argument("check matrix: bad character in row: " + tok);
                }
            }
            (section == "HX" ? hx : hz).push_back(std::move(row));
        } else if (section == "LX") {
            lx_text.push_back(tok);
        } else if (section == "LZ") {
            lz_text.push_back(tok);
        } else {
            throw std::invalid_argument("check matrix: content before section header");
        }
    }
    size_t n = hx.empty() ? (hz.empty() ? 0 : hz[0].size()) : hx[0].size();
    std::vector<PauliOperator> lx, lz;
    for (const auto &s : lx_text) {
        lx.push_back(PauliOperator::parse(s, static_cast<uint32_t>(n)));
    }
    for (const auto &s : lz_text) {
        lz.push_back(PauliOperator::parse(s, static_cast<uint32_t>(n)));
    }
    return from_check_matrices(hx, hz, std::move(name), std::move(lx), std::move(lz));
}

}  // namespace lcsft
