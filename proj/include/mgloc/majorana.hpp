// Copyright 2026 The mgloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MGLOC_MAJORANA_HPP
#define MGLOC_MAJORANA_HPP

/// Majorana mode bookkeeping and the Jordan-Wigner dictionary.
///
/// Modes are numbered 1..2n as in the usual Jordan-Wigner convention
///     c_{2k-1} = Z_1 ... Z_{k-1} X_k,    c_{2k} = Z_1 ... Z_{k-1} Y_k.
/// A `MajoranaTuple` is a strictly ascending list of modes; `C_alpha` is the
/// ordered product of those modes. Phases are kept as integer powers of i so
/// that every sign is exact.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mgloc/errors.hpp"
#include "mgloc/linalg.hpp"

namespace mgloc {

class MajoranaTuple {
   public:
    MajoranaTuple() = default;

    /// `modes` must be strictly ascending and within 1..2n.
    MajoranaTuple(std::vector<int> modes, int n) : modes_(std::move(modes)), n_(n) {
        if (n < 0) {
            throw ArgumentError("MajoranaTuple: negative qubit count");
        }
        for (std::size_t j = 0; j < modes_.size(); ++j) {
            if (modes_[j] < 1 || modes_[j] > 2 * n) {
                throw BoundsError("MajoranaTuple: mode " + std::to_string(modes_[j]) + " outside 1.." +
                                  std::to_string(2 * n));
            }
            if (j > 0 && modes_[j] <= modes_[j - 1]) {
                throw ArgumentError("MajoranaTuple: modes must be strictly ascending");
            }
        }
    }
    MajoranaTuple(std::initializer_list<int> modes, int n) : MajoranaTuple(std::vector<int>(modes), n) {
    }

    /// (1, 2, ..., k).
    static MajoranaTuple prefix(int k, int n) {
        std::vector<int> m(static_cast<std::size_t>(std::max(k, 0)));
        for (int j = 0; j < k; ++j) {
            m[static_cast<std::size_t>(j)] = j + 1;
        }
        return {std::move(m), n};
    }
    /// All 2n modes.
    static MajoranaTuple full(int n) {
        return prefix(2 * n, n);
    }
    /// Builds a tuple from arbitrary distinct modes, sorting them.
    static MajoranaTuple from_unsorted(std::vector<int> modes, int n) {
        std::sort(modes.begin(), modes.end());
        return {std::move(modes), n};
    }

    std::size_t degree() const noexcept {
        return modes_.size();
    }
    std::size_t size() const noexcept {
        return modes_.size();
    }
    bool empty() const noexcept {
        return modes_.empty();
    }
    int n() const noexcept {
        return n_;
    }
    int operator[](std::size_t j) const noexcept {
        return modes_[j];
    }
    auto begin() const noexcept {
        return modes_.begin();
    }
    auto end() const noexcept {
        return modes_.end();
    }
    const std::vector<int> &modes() const noexcept {
        return modes_;
    }

    bool contains(int mode) const noexcept {
        return std::binary_search(modes_.begin(), modes_.end(), mode);
    }

    std::vector<std::size_t> zero_based() const {
        std::vector<std::size_t> out(modes_.size());
        for (std::size_t j = 0; j < modes_.size(); ++j) {
            out[j] = static_cast<std::size_t>(modes_[j] - 1);
        }
        return out;
    }

    MajoranaTuple complement() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(2 * n_) - modes_.size());
        for (int m = 1; m <= 2 * n_; ++m) {
            if (!contains(m)) {
                out.push_back(m);
            }
        }
        return {std::move(out), n_};
    }

    MajoranaTuple union_with(const MajoranaTuple &o) const {
        std::vector<int> out;
        std::set_union(modes_.begin(), modes_.end(), o.modes_.begin(), o.modes_.end(), std::back_inserter(out));
        return {std::move(out), std::max(n_, o.n_)};
    }
    MajoranaTuple intersection(const MajoranaTuple &o) const {
        std::vector<int> out;
        std::set_intersection(modes_.begin(), modes_.end(), o.modes_.begin(), o.modes_.end(),
                              std::back_inserter(out));
        return {std::move(out), std::max(n_, o.n_)};
    }
    bool disjoint(const MajoranaTuple &o) const {
        return intersection(o).empty();
    }

    friend bool operator==(const MajoranaTuple &, const MajoranaTuple &) = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t j = 0; j < modes_.size(); ++j) {
            if (j) {
                s += ",";
            }
            s += std::to_string(modes_[j]);
        }
        return s + ")";
    }

   private:
    std::vector<int> modes_;
    int n_ = 0;
};

inline MajoranaTuple tuple_complement(const MajoranaTuple &t) {
    return t.complement();
}

/// u_{alpha beta} with one-based Majorana indices.
inline Matrix submatrix(const Matrix &m, const MajoranaTuple &rows, const MajoranaTuple &cols) {
    const auto r = rows.zero_based();
    const auto c = cols.zero_based();
    return submatrix(m, std::span<const std::size_t>(r), std::span<const std::size_t>(c));
}

/// i^phase_power * C_tuple.
struct PauliString {
    int phase_power = 0;  // mod 4
    MajoranaTuple tuple;

    PauliString() = default;
    PauliString(int phase, MajoranaTuple t) : phase_power(((phase % 4) + 4) % 4), tuple(std::move(t)) {
    }

    int n() const noexcept {
        return tuple.n();
    }
    std::size_t degree() const noexcept {
        return tuple.degree();
    }

    /// i^{2a} == (-1)^{|alpha|(|alpha|-1)/2}.
    bool hermitian() const noexcept {
        const std::size_t k = tuple.degree();
        const int lhs = (2 * phase_power) % 4 == 0 ? 1 : -1;
        const int rhs = ((k * (k - (k > 0 ? 1 : 0)) / 2) % 2 == 0) ? 1 : -1;
        return lhs == rhs;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;
};

/// Product of two Majorana monomials, with the reordering sign folded into the phase.
inline PauliString multiply(const PauliString &a, const PauliString &b) {
    if (a.n() != b.n()) {
        throw ArgumentError("multiply: qubit counts differ");
    }
    int swaps = 0;
    for (int mb : b.tuple) {
        for (int ma : a.tuple) {
            if (ma > mb) {
                ++swaps;
            }
        }
    }
    std::vector<int> out;
    std::set_symmetric_difference(a.tuple.begin(), a.tuple.end(), b.tuple.begin(), b.tuple.end(),
                                  std::back_inserter(out));
    return {a.phase_power + b.phase_power + 2 * (swaps % 2), MajoranaTuple(std::move(out), a.n())};
}

inline void require_site(int k, int n, const char *what) {
    if (n < 1 || k < 1 || k > n) {
        throw ArgumentError(std::string(what) + ": site " + std::to_string(k) + " outside 1.." + std::to_string(n));
    }
}

/// Z_k = -i C_{(2k-1, 2k)}.
inline PauliString pauli_z(int k, int n) {
    require_site(k, n, "pauli_z");
    return {3, MajoranaTuple({2 * k - 1, 2 * k}, n)};
}

/// X_k = (-i)^{k-1} C_{(1, ..., 2k-1)}.
inline PauliString pauli_x(int k, int n) {
    require_site(k, n, "pauli_x");
    return {-(k - 1), MajoranaTuple::prefix(2 * k - 1, n)};
}

/// Y_k = i X_k Z_k.
inline PauliString pauli_y(int k, int n) {
    require_site(k, n, "pauli_y");
    auto y = multiply(pauli_x(k, n), pauli_z(k, n));
    y.phase_power = (y.phase_power + 1) % 4;
    return y;
}

inline PauliString identity_pauli(int n) {
    return {0, MajoranaTuple({}, n)};
}

/// Parses a letter string such as "IXYZ" (site 1 first) into its Majorana form.
/// An optional leading '+' or '-' sets the overall sign.
inline PauliString pauli_from_letters(std::string_view letters) {
    int sign_phase = 0;
    if (!letters.empty() && (letters.front() == '+' || letters.front() == '-')) {
        sign_phase = letters.front() == '-' ? 2 : 0;
        letters.remove_prefix(1);
    }
    const int n = static_cast<int>(letters.size());
    if (n == 0) {
        throw ArgumentError("pauli_from_letters: empty Pauli string");
    }
    PauliString acc = identity_pauli(n);
    for (int k = 1; k <= n; ++k) {
        switch (letters[static_cast<std::size_t>(k - 1)]) {
            case 'I':
                break;
            case 'X':
                acc = multiply(acc, pauli_x(k, n));
                break;
            case 'Y':
                acc = multiply(acc, pauli_y(k, n));
                break;
            case 'Z':
                acc = multiply(acc, pauli_z(k, n));
                break;
            default:
                throw ArgumentError("pauli_from_letters: unexpected character '" +
                                    std::string(1, letters[static_cast<std::size_t>(k - 1)]) + "'");
        }
    }
    acc.phase_power = (acc.phase_power + sign_phase) % 4;
    return acc;
}

/// Renders i^a C_alpha as qubit Pauli letters, e.g. "IXYZ" or "-ZZX". Non-Hermitian
/// strings carry an "i" or "-i" prefix.
inline std::string to_string(const PauliString &p) {
    const int n = p.n();
    // Accumulate i^phase * prod_k X^x_k Z^z_k.
    std::vector<std::uint8_t> xs(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> zs(static_cast<std::size_t>(n), 0);
    int phase = p.phase_power;
    auto times = [&](const std::vector<std::uint8_t> &bx, const std::vector<std::uint8_t> &bz) {
        // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{z1 x2} X^{x1+x2} Z^{z1+z2}
        int flips = 0;
        for (std::size_t q = 0; q < xs.size(); ++q) {
            flips += zs[q] & bx[q];
            xs[q] ^= bx[q];
            zs[q] ^= bz[q];
        }
        phase = (phase + 2 * (flips % 2)) % 4;
    };
    for (int mode : p.tuple) {
        const int site = (mode + 1) / 2;
        std::vector<std::uint8_t> bx(static_cast<std::size_t>(n), 0);
        std::vector<std::uint8_t> bz(static_cast<std::size_t>(n), 0);
        for (int q = 1; q < site; ++q) {
            bz[static_cast<std::size_t>(q - 1)] = 1;
        }
        bx[static_cast<std::size_t>(site - 1)] = 1;
        if (mode % 2 == 0) {
            // Y = i X Z
            bz[static_cast<std::size_t>(site - 1)] = 1;
            phase = (phase + 1) % 4;
        }
        times(bx, bz);
    }
    std::string letters;
    letters.reserve(static_cast<std::size_t>(n));
    for (std::size_t q = 0; q < xs.size(); ++q) {
        if (xs[q] && zs[q]) {
            letters += 'Y';  // X Z = -i Y
            phase = (phase + 3) % 4;
        } else if (xs[q]) {
            letters += 'X';
        } else if (zs[q]) {
            letters += 'Z';
        } else {
            letters += 'I';
        }
    }
    static constexpr const char *kPrefix[] = {"", "i", "-", "-i"};
    return kPrefix[phase] + letters;
}

/// Short label: "X30" for a single-site operator, the full letter string otherwise.
inline std::string pauli_label(const PauliString &p) {
    const std::string full = to_string(p);
    const std::size_t start = full.find_first_of("IXYZ");
    if (start == std::string::npos) {
        return full;
    }
    std::size_t site = 0;
    for (std::size_t q = start; q < full.size(); ++q) {
        if (full[q] != 'I') {
            if (site != 0) {
                return full;
            }
            site = q - start + 1;
        }
    }
    if (site == 0) {
        return full;
    }
    return full.substr(0, start) + full[start + site - 1] + std::to_string(site);
}

/// Diagonal 0/1 projector onto a set of modes.
struct ModeProjector {
    MajoranaTuple modes;

    /// Diagonal of (I - 2 P): -1 on the projected modes, +1 elsewhere.
    std::vector<double> reflection_diagonal() const {
        std::vector<double> d(static_cast<std::size_t>(2 * modes.n()), 1.0);
        for (int m : modes) {
            d[static_cast<std::size_t>(m - 1)] = -1.0;
        }
        return d;
    }

    Matrix dense() const {
        Matrix p(static_cast<std::size_t>(2 * modes.n()), static_cast<std::size_t>(2 * modes.n()));
        for (int m : modes) {
            p(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(m - 1)) = 1.0;
        }
        return p;
    }
};

/// Mode sets entering the single-site OTO quadratic form at site s.
struct SiteModes {
    MajoranaTuple eta_x;         // (1, ..., 2s-1): modes of X_s
    MajoranaTuple eta_y;         // (1, ..., 2s-2, 2s): modes of Y_s
    MajoranaTuple eta_z;         // (2s-1, 2s): modes of Z_s
    MajoranaTuple outside_pair;  // complement of (2s-1, 2s)
    MajoranaTuple right_of_site; // complement of (1, ..., 2s)
};

inline SiteModes single_site_tuples(int s, int n) {
    require_site(s, n, "single_site_tuples");
    SiteModes out;
    out.eta_x = MajoranaTuple::prefix(2 * s - 1, n);
    std::vector<int> y(static_cast<std::size_t>(2 * s - 2));
    for (int j = 0; j < 2 * s - 2; ++j) {
        y[static_cast<std::size_t>(j)] = j + 1;
    }
    y.push_back(2 * s);
    out.eta_y = MajoranaTuple(std::move(y), n);
    out.eta_z = MajoranaTuple({2 * s - 1, 2 * s}, n);
    out.outside_pair = out.eta_z.complement();
    out.right_of_site = MajoranaTuple::prefix(2 * s, n).complement();
    return out;
}

}  // namespace mgloc

#endif  // MGLOC_MAJORANA_HPP
