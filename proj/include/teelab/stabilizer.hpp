// Copyright 2026 The teelab Authors
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

// Qudit stabilizer states over F_p.
//
// A generalized Pauli is X^x Z^z with X|j> = |j+1>, Z|j> = w^j |j>,
// w = exp(2 pi i / p). A phased Pauli (P, phi) says P|psi> = w^phi |psi>.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teelab/dense.hpp"
#include "teelab/error.hpp"
#include "teelab/finite_field.hpp"

namespace teelab::stab {

struct Pauli {
    std::vector<std::uint8_t> x, z;

    static Pauli identity(std::size_t n) {
        return {std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0)};
    }
    std::size_t size() const noexcept {
        return x.size();
    }
    bool is_identity() const {
        return std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; }) &&
               std::all_of(z.begin(), z.end(), [](auto v) { return v == 0; });
    }
    bool operator==(const Pauli &o) const = default;
};

struct PhasedPauli {
    Pauli op;
    int phase = 0;
    bool operator==(const PhasedPauli &o) const = default;
};

/// x1.z2 - z1.x2 mod p; zero iff the two operators commute.
inline int symplectic(const Pauli &a, const Pauli &b, const ff::PrimeField &f) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += long{a.x[i]} * b.z[i] - long{a.z[i]} * b.x[i];
    return f.reduce(s);
}

/// Sum_i z_i x_i of two operators, reduced.
inline int zx_dot(const Pauli &a, const Pauli &b, const ff::PrimeField &f) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += long{a.z[i]} * b.x[i];
    return f.reduce(s);
}

/// Product of two commuting stabilizer elements.
inline PhasedPauli multiply(const PhasedPauli &a, const PhasedPauli &b, const ff::PrimeField &f) {
    PhasedPauli r;
    r.op.x.resize(a.op.size());
    r.op.z.resize(a.op.size());
    for (std::size_t i = 0; i < a.op.size(); ++i) {
        r.op.x[i] = f.add(a.op.x[i], b.op.x[i]);
        r.op.z[i] = f.add(a.op.z[i], b.op.z[i]);
    }
    r.phase = f.reduce(long{a.phase} + b.phase - zx_dot(a.op, b.op, f));
    return r;
}

/// c-th power, 0 <= c < p.
inline PhasedPauli power(const PhasedPauli &a, int c, const ff::PrimeField &f) {
    c = f.reduce(c);
    PhasedPauli r;
    r.op.x.resize(a.op.size());
    r.op.z.resize(a.op.size());
    for (std::size_t i = 0; i < a.op.size(); ++i) {
        r.op.x[i] = f.mul(a.op.x[i], c);
        r.op.z[i] = f.mul(a.op.z[i], c);
    }
    const long binom = long{c} * (c - 1) / 2;
    r.phase = f.reduce(long{c} * a.phase - binom * zx_dot(a.op, a.op, f));
    return r;
}

inline std::string describe(const Pauli &op, const std::vector<std::string> &names = {}) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < op.size(); ++i) {
        if (op.x[i] == 0 && op.z[i] == 0) continue;
        if (!first) os << ' ';
        first = false;
        if (op.x[i]) os << "X^" << int{op.x[i]};
        if (op.z[i]) os << "Z^" << int{op.z[i]};
        os << '@' << (i < names.size() ? names[i] : std::to_string(i));
    }
    return first ? std::string("I") : os.str();
}

/// Entropy of a region as an integer certificate: S = units * ln p.
struct RegionEntropy {
    int p = 2;
    std::size_t region_size = 0;
    std::size_t rank_total = 0;       // rank of the generator matrix
    std::size_t rank_complement = 0;  // rank restricted to the complement columns
    std::size_t stabilizer_dim = 0;   // g_R
    long units = 0;                   // |R| - g_R

    double nats() const {
        return static_cast<double>(units) * std::log(static_cast<double>(p));
    }
};

/// Phased generators of a pure stabilizer state on n qudits.
class StabilizerState {
   public:
    StabilizerState(int p, std::size_t qudits, std::vector<PhasedPauli> generators,
                    std::vector<std::string> qudit_names = {})
        : field_(p), n_(qudits), gens_(std::move(generators)), names_(std::move(qudit_names)) {
        for (auto &g : gens_) {
            if (g.op.x.size() != n_ || g.op.z.size() != n_) throw InvalidState("generator length does not match");
            g.phase = field_.reduce(g.phase);
            for (auto &v : g.op.x)
                if (v >= p) throw InvalidState("generator entry outside the field");
            for (auto &v : g.op.z)
                if (v >= p) throw InvalidState("generator entry outside the field");
        }
        if (!names_.empty() && names_.size() != n_) throw InvalidState("one name per qudit required");
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                if (symplectic(gens_[i].op, gens_[j].op, field_) != 0) {
                    throw InvalidState("generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
                }
        css_ = std::all_of(gens_.begin(), gens_.end(), [](const PhasedPauli &g) {
            const bool has_x = std::any_of(g.op.x.begin(), g.op.x.end(), [](auto v) { return v != 0; });
            const bool has_z = std::any_of(g.op.z.begin(), g.op.z.end(), [](auto v) { return v != 0; });
            return !(has_x && has_z);
        });
        const std::size_t r = rank_on(std::vector<bool>(n_, true));
        if (r != n_) {
            throw RankDeficiency("generator rank " + std::to_string(r) + " differs from the qudit count " +
                                 std::to_string(n_));
        }
    }

    int p() const noexcept {
        return field_.p();
    }
    const ff::PrimeField &field() const noexcept {
        return field_;
    }
    std::size_t qudits() const noexcept {
        return n_;
    }
    const std::vector<PhasedPauli> &generators() const noexcept {
        return gens_;
    }
    const std::vector<std::string> &names() const noexcept {
        return names_;
    }
    bool is_css() const noexcept {
        return css_;
    }

    /// W |psi> for a Pauli W: every phase shifts by z.wx - x.wz.
    StabilizerState conjugated(const Pauli &w) const {
        if (w.size() != n_) throw InvalidState("operator length does not match the state");
        StabilizerState out = *this;
        for (auto &g : out.gens_) {
            long s = 0;
            for (std::size_t i = 0; i < n_; ++i) s += long{g.op.z[i]} * w.x[i] - long{g.op.x[i]} * w.z[i];
            g.phase = field_.reduce(long{g.phase} + s);
        }
        return out;
    }

    /// Rank of the generator matrix restricted to the columns of `cols`.
    std::size_t rank_on(const std::vector<bool> &cols) const {
        if (cols.size() != n_) throw InvalidState("column mask has the wrong length");
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n_; ++i)
            if (cols[i]) idx.push_back(i);
        if (idx.empty() || gens_.empty()) return 0;
        if (css_) {
            std::vector<const PhasedPauli *> xs, zs;
            for (const auto &g : gens_) {
                const bool has_x = std::any_of(g.op.x.begin(), g.op.x.end(), [](auto v) { return v != 0; });
                (has_x ? xs : zs).push_back(&g);
            }
            return block_rank(xs, idx, true) + block_rank(zs, idx, false);
        }
        if (p() == 2) {
            ff::BitMatrix m(gens_.size(), 2 * idx.size());
            for (std::size_t r = 0; r < gens_.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c) {
                    m.set(r, c, gens_[r].op.x[idx[c]] != 0);
                    m.set(r, idx.size() + c, gens_[r].op.z[idx[c]] != 0);
                }
            return std::move(m).rank();
        }
        ff::FpMatrix m(gens_.size(), 2 * idx.size(), p());
        for (std::size_t r = 0; r < gens_.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) {
                m.set(r, c, gens_[r].op.x[idx[c]]);
                m.set(r, idx.size() + c, gens_[r].op.z[idx[c]]);
            }
        return std::move(m).rank();
    }

   private:
    std::size_t block_rank(const std::vector<const PhasedPauli *> &rows, const std::vector<std::size_t> &idx,
                           bool x_part) const {
        if (rows.empty()) return 0;
        if (p() == 2) {
            ff::BitMatrix m(rows.size(), idx.size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const auto &v = x_part ? rows[r]->op.x : rows[r]->op.z;
                for (std::size_t c = 0; c < idx.size(); ++c)
                    if (v[idx[c]]) m.set(r, c, true);
            }
            return std::move(m).rank();
        }
        ff::FpMatrix m(rows.size(), idx.size(), p());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto &v = x_part ? rows[r]->op.x : rows[r]->op.z;
            for (std::size_t c = 0; c < idx.size(); ++c) m.set(r, c, v[idx[c]]);
        }
        return std::move(m).rank();
    }

    ff::PrimeField field_;
    std::size_t n_;
    std::vector<PhasedPauli> gens_;
    std::vector<std::string> names_;
    bool css_ = false;
};

inline std::vector<bool> mask_of(std::size_t n, const std::vector<std::size_t> &qudits) {
    std::vector<bool> m(n, false);
    for (std::size_t q : qudits) {
        if (q >= n) throw InvalidState("qudit " + std::to_string(q) + " out of range");
        m[q] = true;
    }
    return m;
}

/// S(R) = (|R| - g_R) ln p with g_R = rank G - rank(G restricted to the
/// complement of R).
inline RegionEntropy region_entropy(const StabilizerState &state, const std::vector<bool> &region) {
    if (region.size() != state.qudits()) throw InvalidState("region mask has the wrong length");
    RegionEntropy r;
    r.p = state.p();
    r.region_size = static_cast<std::size_t>(std::count(region.begin(), region.end(), true));
    std::vector<bool> complement(region.size());
    for (std::size_t i = 0; i < region.size(); ++i) complement[i] = !region[i];
    r.rank_total = state.qudits();
    r.rank_complement = state.rank_on(complement);
    r.stabilizer_dim = r.rank_total - r.rank_complement;
    r.units = static_cast<long>(r.region_size) - static_cast<long>(r.stabilizer_dim);
    return r;
}

inline RegionEntropy region_entropy(const StabilizerState &state, const std::vector<std::size_t> &region) {
    return region_entropy(state, mask_of(state.qudits(), region));
}

// ---------------------------------------------------------------------------
// Restricted groups

/// Reduced row echelon basis of the subgroup G_R of stabilizers supported on
/// R, with phases. Unique for a given state and region, so two reductions are
/// equal iff their canonical forms are.
struct CanonicalForm {
    std::vector<std::size_t> region;  // ascending qudit indices
    std::vector<PhasedPauli> rows;    // operators restricted to `region`

    bool operator==(const CanonicalForm &o) const = default;
};

namespace detail {

struct Column {
    std::size_t qudit;
    bool x;
};

inline int entry(const PhasedPauli &g, const Column &c) {
    return c.x ? g.op.x[c.qudit] : g.op.z[c.qudit];
}

/// Elimination with phase tracking over the given column order. Returns the
/// pivot columns; rows [0, pivots) are the reduced basis, the rest are zero.
inline std::vector<std::size_t> phased_echelon(std::vector<PhasedPauli> &rows, const std::vector<Column> &cols,
                                               std::size_t first_row, const ff::PrimeField &f, bool full) {
    std::vector<std::size_t> pivots;
    std::size_t rank = first_row;
    for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && entry(rows[piv], cols[c]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        rows[rank] = power(rows[rank], f.inv(entry(rows[rank], cols[c])), f);
        const std::size_t start = full ? 0 : rank + 1;
        for (std::size_t r = start; r < rows.size(); ++r) {
            if (r == rank) continue;
            const int v = entry(rows[r], cols[c]);
            if (v == 0) continue;
            rows[r] = multiply(rows[r], power(rows[rank], f.neg(v), f), f);
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

}  // namespace detail

inline CanonicalForm canonical_form(const StabilizerState &state, const std::vector<bool> &region) {
    const std::size_t n = state.qudits();
    if (region.size() != n) throw InvalidState("region mask has the wrong length");
    const auto &f = state.field();
    std::vector<detail::Column> outside, inside;
    CanonicalForm cf;
    for (std::size_t q = 0; q < n; ++q) {
        auto &dst = region[q] ? inside : outside;
        dst.push_back({q, true});
        dst.push_back({q, false});
        if (region[q]) cf.region.push_back(q);
    }
    std::vector<PhasedPauli> rows = state.generators();
    const std::size_t killed = detail::phased_echelon(rows, outside, 0, f, false).size();
    std::vector<PhasedPauli> inner(rows.begin() + static_cast<std::ptrdiff_t>(killed), rows.end());
    const std::size_t rank = detail::phased_echelon(inner, inside, 0, f, true).size();
    inner.resize(rank);
    for (auto &g : inner) {
        PhasedPauli r;
        r.phase = g.phase;
        for (std::size_t q : cf.region) {
            r.op.x.push_back(g.op.x[q]);
            r.op.z.push_back(g.op.z[q]);
        }
        cf.rows.push_back(std::move(r));
    }
    return cf;
}

inline CanonicalForm canonical_form(const StabilizerState &state, const std::vector<std::size_t> &region) {
    return canonical_form(state, mask_of(state.qudits(), region));
}

struct ReductionComparison {
    bool same_group = false;  // unsigned restricted groups coincide
    bool equal = false;       // reductions are identical
    bool orthogonal = false;  // Tr(rho_R sigma_R) = 0
    std::optional<std::size_t> witness_row;
    std::optional<PhasedPauli> witness_a, witness_b;
};

/// Compares two reductions on the same region. Orthogonality is only decided
/// when the unsigned groups coincide; otherwise InvalidState is raised.
inline ReductionComparison compare_reductions(const CanonicalForm &a, const CanonicalForm &b) {
    if (a.region != b.region) throw InvalidState("canonical forms on different regions");
    ReductionComparison r;
    r.same_group = a.rows.size() == b.rows.size() &&
                   std::equal(a.rows.begin(), a.rows.end(), b.rows.begin(),
                              [](const PhasedPauli &u, const PhasedPauli &v) { return u.op == v.op; });
    if (!r.same_group) {
        for (std::size_t i = 0; i < std::max(a.rows.size(), b.rows.size()); ++i) {
            if (i >= a.rows.size() || i >= b.rows.size() || !(a.rows[i].op == b.rows[i].op)) {
                r.witness_row = i;
                if (i < a.rows.size()) r.witness_a = a.rows[i];
                if (i < b.rows.size()) r.witness_b = b.rows[i];
                break;
            }
        }
        return r;
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i].phase != b.rows[i].phase) {
            r.witness_row = i;
            r.witness_a = a.rows[i];
            r.witness_b = b.rows[i];
            break;
        }
    r.equal = !r.witness_row.has_value();
    r.orthogonal = !r.equal;
    return r;
}

/// Lifts an operator restricted to `region` back to all n qudits.
inline Pauli lift(const Pauli &restricted, const std::vector<std::size_t> &region, std::size_t n) {
    Pauli out = Pauli::identity(n);
    for (std::size_t i = 0; i < region.size(); ++i) {
        out.x[region[i]] = restricted.x[i];
        out.z[region[i]] = restricted.z[i];
    }
    return out;
}

/// Eigenphase of `op` on the state if op (up to phase) lies in the
/// stabilizer group.
inline std::optional<int> stabilizer_phase(const StabilizerState &state, const Pauli &op) {
    const std::size_t n = state.qudits();
    if (op.size() != n) throw InvalidState("operator length does not match the state");
    const auto &f = state.field();
    std::vector<detail::Column> cols;
    for (std::size_t q = 0; q < n; ++q) {
        cols.push_back({q, true});
        cols.push_back({q, false});
    }
    std::vector<PhasedPauli> rows = state.generators();
    const auto pivots = detail::phased_echelon(rows, cols, 0, f, true);
    PhasedPauli acc{Pauli::identity(n), 0};
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const int c = detail::entry(PhasedPauli{op, 0}, cols[pivots[i]]);
        if (c != 0) acc = multiply(acc, power(rows[i], c, f), f);
    }
    if (!(acc.op == op)) return std::nullopt;
    return acc.phase;
}

// ---------------------------------------------------------------------------
// Dense import

/// rho_R = p^{-|R|} sum_{h in G_R} conj(lambda_h) h as a dense operator whose
/// factor ids are the qudit indices.
inline dense::DensityOperator reduced_density(const StabilizerState &state, const std::vector<std::size_t> &region_in) {
    std::vector<std::size_t> region = region_in;
    std::sort(region.begin(), region.end());
    const int p = state.p();
    std::vector<dense::Factor> factors;
    for (std::size_t q : region) factors.push_back({static_cast<dense::FactorId>(q), static_cast<std::size_t>(p)});
    dense::FactorSpace space(factors);
    const auto dim = static_cast<Eigen::Index>(space.dim());
    const CanonicalForm cf = canonical_form(state, region);
    const auto &f = state.field();
    const std::size_t k = region.size();

    std::vector<PhasedPauli> group{PhasedPauli{Pauli::identity(k), 0}};
    for (const auto &row : cf.rows) {
        std::vector<PhasedPauli> next;
        next.reserve(group.size() * static_cast<std::size_t>(p));
        for (const auto &g : group)
            for (int c = 0; c < p; ++c) next.push_back(multiply(g, power(row, c, f), f));
        group.swap(next);
    }

    const double two_pi = 2.0 * std::acos(-1.0);
    auto omega = [&](long e) { return std::polar(1.0, two_pi * static_cast<double>(f.reduce(e)) / p); };
    dense::Matrix m = dense::Matrix::Zero(dim, dim);
    std::vector<int> digits(k);
    for (const auto &h : group) {
        const dense::Complex coef = std::conj(omega(h.phase));
        for (Eigen::Index j = 0; j < dim; ++j) {
            auto rest = static_cast<std::size_t>(j);
            for (std::size_t i = k; i-- > 0;) {
                digits[i] = static_cast<int>(rest % static_cast<std::size_t>(p));
                rest /= static_cast<std::size_t>(p);
            }
            long zdot = 0;
            std::size_t target = 0;
            for (std::size_t i = 0; i < k; ++i) {
                zdot += long{h.op.z[i]} * digits[i];
                target = target * static_cast<std::size_t>(p) + static_cast<std::size_t>((digits[i] + h.op.x[i]) % p);
            }
            m(static_cast<Eigen::Index>(target), j) += coef * omega(zdot);
        }
    }
    m /= static_cast<double>(dim);
    m = 0.5 * (m + m.adjoint()).eval();
    return dense::DensityOperator(space, std::move(m));
}

}  // namespace teelab::stab
