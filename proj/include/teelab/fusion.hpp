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

// Anyon fusion algebra: fusion rings, quantum dimensions, fusion
// probabilities, the fusion convolution of label distributions and the
// fixed-point distribution it admits.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teelab/error.hpp"

namespace teelab::fusion {

using Label = std::size_t;

/// Tolerance for exact structural identities (row sums, associativity).
inline constexpr double kStructuralTol = 1e-12;
/// Tolerance for spectral quantities (dimensions, fixed points).
inline constexpr double kSpectralTol = 1e-10;

/// A finite fusion ring: labels with a unit, a duality involution and
/// non-negative multiplicities N^{ab}_c. Instances only exist in validated
/// form; use `FusionCategory::create`.
class FusionCategory {
   public:
    /// `multiplicities` is indexed as (a * n + b) * n + c. When `dual` is
    /// empty it is inferred from N^{ab}_unit = 1.
    static FusionCategory create(std::string name, std::vector<std::string> labels, Label unit,
                                 std::vector<int> multiplicities, std::optional<std::vector<Label>> dual = {});

    const std::string &name() const noexcept {
        return name_;
    }
    std::size_t size() const noexcept {
        return labels_.size();
    }
    const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }
    const std::string &label(Label a) const {
        return labels_.at(a);
    }
    Label unit() const noexcept {
        return unit_;
    }
    Label dual(Label a) const {
        return dual_.at(a);
    }
    int N(Label a, Label b, Label c) const {
        const std::size_t n = size();
        return multiplicities_[(a * n + b) * n + c];
    }
    std::optional<Label> find(const std::string &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<Label>(it - labels_.begin());
    }
    const std::vector<int> &multiplicities() const noexcept {
        return multiplicities_;
    }
    bool is_abelian() const;

   private:
    FusionCategory() = default;

    std::string name_;
    std::vector<std::string> labels_;
    Label unit_ = 0;
    std::vector<Label> dual_;
    std::vector<int> multiplicities_;
};

/// Quantum dimensions d_a and the total dimension D = sqrt(sum d_a^2).
struct QuantumDims {
    std::vector<double> d;
    double total = 0.0;
    int iterations = 0;

    double operator[](Label a) const {
        return d.at(a);
    }
};

/// A probability distribution over anyon labels. Construction checks
/// non-negativity and normalization to 1e-12.
class AnyonDistribution {
   public:
    AnyonDistribution() = default;
    explicit AnyonDistribution(std::vector<double> probs, double tol = kStructuralTol) : probs_(std::move(probs)) {
        if (probs_.empty()) throw MalformedInput("empty distribution");
        double sum = 0.0;
        for (double x : probs_) {
            if (!(x >= -tol)) throw MalformedInput("distribution has a negative entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > tol) {
            std::ostringstream os;
            os << "distribution sums to " << sum << ", not 1";
            throw MalformedInput(os.str());
        }
        for (double &x : probs_) x = std::max(x, 0.0);
    }

    static AnyonDistribution uniform(std::size_t n) {
        return AnyonDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }
    static AnyonDistribution point_mass(std::size_t n, Label a) {
        std::vector<double> v(n, 0.0);
        v.at(a) = 1.0;
        return AnyonDistribution(std::move(v));
    }

    std::size_t size() const noexcept {
        return probs_.size();
    }
    double operator[](Label a) const {
        return probs_[a];
    }
    const std::vector<double> &values() const noexcept {
        return probs_;
    }
    double min() const {
        return *std::min_element(probs_.begin(), probs_.end());
    }

   private:
    std::vector<double> probs_;
};

/// Shannon entropy in nats; 0 log 0 = 0.
inline double shannon_entropy(const std::vector<double> &p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * std::log(x);
    }
    return h;
}
inline double shannon_entropy(const AnyonDistribution &p) {
    return shannon_entropy(p.values());
}

/// Table of fusion probabilities p_{s x a -> b}.
class FusionProbabilities {
   public:
    FusionProbabilities() = default;
    /// `table` indexed as (s * n + a) * n + b.
    FusionProbabilities(std::size_t n, std::vector<double> table) : n_(n), table_(std::move(table)) {
        if (table_.size() != n * n * n) throw MalformedInput("fusion probability table has the wrong size");
        for (double x : table_) {
            if (!(x >= 0.0 && x <= 1.0 + kStructuralTol)) throw MalformedInput("fusion probability outside [0,1]");
        }
    }

    std::size_t size() const noexcept {
        return n_;
    }
    double operator()(Label s, Label a, Label b) const {
        return table_[(s * n_ + a) * n_ + b];
    }
    const std::vector<double> &table() const noexcept {
        return table_;
    }

    /// max over (s,a) of |sum_b p_{s x a -> b} - 1|.
    double row_sum_defect() const {
        double worst = 0.0;
        for (Label s = 0; s < n_; ++s) {
            for (Label a = 0; a < n_; ++a) {
                double sum = 0.0;
                for (Label b = 0; b < n_; ++b) sum += (*this)(s, a, b);
                worst = std::max(worst, std::abs(sum - 1.0));
            }
        }
        return worst;
    }

    /// max over (s,t,a,c) of |sum_u p_{s t u} p_{u a c} - sum_b p_{t a b} p_{s b c}|.
    double associativity_defect() const {
        double worst = 0.0;
        for (Label s = 0; s < n_; ++s)
            for (Label t = 0; t < n_; ++t)
                for (Label a = 0; a < n_; ++a)
                    for (Label c = 0; c < n_; ++c) {
                        double lhs = 0.0, rhs = 0.0;
                        for (Label u = 0; u < n_; ++u) lhs += (*this)(s, t, u) * (*this)(u, a, c);
                        for (Label b = 0; b < n_; ++b) rhs += (*this)(t, a, b) * (*this)(s, b, c);
                        worst = std::max(worst, std::abs(lhs - rhs));
                    }
        return worst;
    }

   private:
    std::size_t n_ = 0;
    std::vector<double> table_;
};

struct FixedPoint {
    AnyonDistribution p_star;
    double p_min = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

struct ResidualReport {
    double max = 0.0;
    Label a = 0;
    Label b = 0;
};

struct IterationOptions {
    double tolerance = 1e-14;
    int max_iterations = 100000;
};

// ---------------------------------------------------------------------------
// FusionCategory

inline FusionCategory FusionCategory::create(std::string name, std::vector<std::string> labels, Label unit,
                                             std::vector<int> multiplicities, std::optional<std::vector<Label>> dual) {
    const std::size_t n = labels.size();
    if (n == 0) throw MalformedInput("category has no labels");
    if (unit >= n) throw MalformedInput("unit label out of range");
    if (multiplicities.size() != n * n * n) throw MalformedInput("multiplicity table has the wrong size");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (labels[i] == labels[j]) throw MalformedInput("duplicate label '" + labels[i] + "'");

    FusionCategory cat;
    cat.name_ = std::move(name);
    cat.labels_ = std::move(labels);
    cat.unit_ = unit;
    cat.multiplicities_ = std::move(multiplicities);
    const auto &L = cat.labels_;

    for (int m : cat.multiplicities_)
        if (m < 0) throw InvalidCategory("negative fusion multiplicity");

    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b) {
            const int expect = a == b ? 1 : 0;
            if (cat.N(unit, a, b) != expect || cat.N(a, unit, b) != expect) {
                throw InvalidCategory("unit axiom fails: N^{1" + L[a] + "}_" + L[b] + " or N^{" + L[a] + "1}_" + L[b] +
                                      " != " + std::to_string(expect));
            }
        }

    if (dual) {
        if (dual->size() != n) throw MalformedInput("dual map has the wrong size");
        for (Label a : *dual)
            if (a >= n) throw MalformedInput("dual map refers to an unknown label");
        cat.dual_ = *dual;
    } else {
        cat.dual_.resize(n);
        for (Label a = 0; a < n; ++a) {
            std::optional<Label> found;
            for (Label b = 0; b < n; ++b) {
                if (cat.N(a, b, unit) == 1) {
                    if (found) throw InvalidCategory("dual of '" + L[a] + "' is not unique");
                    found = b;
                }
            }
            if (!found) throw InvalidCategory("label '" + L[a] + "' has no dual");
            cat.dual_[a] = *found;
        }
    }

    if (cat.dual_[unit] != unit) throw InvalidCategory("dual of the unit is not the unit");
    for (Label a = 0; a < n; ++a) {
        if (cat.dual_[cat.dual_[a]] != a) throw InvalidCategory("dual map is not an involution at '" + L[a] + "'");
        for (Label b = 0; b < n; ++b) {
            const int expect = b == cat.dual_[a] ? 1 : 0;
            if (cat.N(a, b, unit) != expect) {
                throw InvalidCategory("dual axiom fails: N^{" + L[a] + L[b] + "}_1 != " + std::to_string(expect));
            }
        }
    }

    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b)
            for (Label c = 0; c < n; ++c)
                for (Label d = 0; d < n; ++d) {
                    long lhs = 0, rhs = 0;
                    for (Label e = 0; e < n; ++e) lhs += static_cast<long>(cat.N(a, b, e)) * cat.N(e, c, d);
                    for (Label f = 0; f < n; ++f) rhs += static_cast<long>(cat.N(b, c, f)) * cat.N(a, f, d);
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "associativity fails at (a,b,c,d) = (" << L[a] << "," << L[b] << "," << L[c] << ","
                           << L[d] << "): sum_e N^{ab}_e N^{ec}_d = " << lhs << " but sum_f N^{bc}_f N^{af}_d = " << rhs;
                        throw InvalidCategory(os.str());
                    }
                }
    return cat;
}

inline bool FusionCategory::is_abelian() const {
    const std::size_t n = size();
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b) {
            int total = 0;
            for (Label c = 0; c < n; ++c) total += N(a, b, c);
            if (total != 1) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Quantum dimensions

/// d is the common Perron eigenvector of the fusion matrices (N_a)_{bc} =
/// N^{ab}_c, normalized so that d_unit = 1. It is obtained by power iteration
/// on I + sum_a N_a, which is entrywise positive for any valid fusion ring.
inline QuantumDims quantum_dimensions(const FusionCategory &cat, IterationOptions opts = {}) {
    const std::size_t n = cat.size();
    std::vector<double> shifted(n * n, 0.0);
    for (Label b = 0; b < n; ++b) {
        shifted[b * n + b] += 1.0;
        for (Label a = 0; a < n; ++a)
            for (Label c = 0; c < n; ++c) shifted[b * n + c] += cat.N(a, b, c);
    }

    std::vector<double> v(n, 1.0), next(n);
    int it = 0;
    bool converged = false;
    for (; it < opts.max_iterations; ++it) {
        for (Label b = 0; b < n; ++b) {
            double acc = 0.0;
            for (Label c = 0; c < n; ++c) acc += shifted[b * n + c] * v[c];
            next[b] = acc;
        }
        const double scale = next[cat.unit()];
        double change = 0.0;
        for (Label b = 0; b < n; ++b) {
            next[b] /= scale;
            change = std::max(change, std::abs(next[b] - v[b]));
        }
        v.swap(next);
        if (change < opts.tolerance * std::max(1.0, *std::max_element(v.begin(), v.end()))) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged) throw NonConvergence("quantum dimension power iteration did not converge");

    QuantumDims dims;
    dims.d = v;
    dims.iterations = it;
    double sum_sq = 0.0;
    for (double x : v) sum_sq += x * x;
    dims.total = std::sqrt(sum_sq);

    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b) {
            double acc = 0.0;
            for (Label c = 0; c < n; ++c) acc += cat.N(a, b, c) * v[c];
            if (std::abs(acc - v[a] * v[b]) > kSpectralTol * std::max(1.0, v[a] * v[b])) {
                throw NonConvergence("dimension identity sum_c N^{ab}_c d_c = d_a d_b fails for (" + cat.label(a) +
                                     "," + cat.label(b) + ")");
            }
        }
    return dims;
}

// ---------------------------------------------------------------------------
// Fusion probabilities and the convolution

inline FusionProbabilities fusion_probabilities(const FusionCategory &cat, const QuantumDims &dims) {
    const std::size_t n = cat.size();
    if (dims.d.size() != n) throw MalformedInput("dimensions do not match the category");
    std::vector<double> table(n * n * n, 0.0);
    for (Label s = 0; s < n; ++s)
        for (Label a = 0; a < n; ++a)
            for (Label b = 0; b < n; ++b) {
                const int m = cat.N(s, a, b);
                if (m != 0) table[(s * n + a) * n + b] = dims.d[b] * m / (dims.d[s] * dims.d[a]);
            }
    return FusionProbabilities(n, std::move(table));
}

/// (p * q)_b = sum_{s,a} p_{s x a -> b} p_s q_a.
inline AnyonDistribution star(const AnyonDistribution &p, const AnyonDistribution &q, const FusionProbabilities &fp) {
    const std::size_t n = fp.size();
    if (p.size() != n || q.size() != n) throw MalformedInput("distribution size does not match the fusion table");
    std::vector<double> out(n, 0.0);
    for (Label s = 0; s < n; ++s) {
        if (p[s] == 0.0) continue;
        for (Label a = 0; a < n; ++a) {
            const double w = p[s] * q[a];
            if (w == 0.0) continue;
            for (Label b = 0; b < n; ++b) out[b] += fp(s, a, b) * w;
        }
    }
    double sum = 0.0;
    for (double x : out) sum += x;
    for (double &x : out) x /= sum;
    return AnyonDistribution(std::move(out));
}

/// max over (a,b) of |sum_s p_{s x a -> b} p*_s - p*_b|.
inline ResidualReport verify_fixed_point_identity(const FusionProbabilities &fp, const AnyonDistribution &p_star) {
    const std::size_t n = fp.size();
    if (p_star.size() != n) throw MalformedInput("distribution size does not match the fusion table");
    ResidualReport r;
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b) {
            double acc = 0.0;
            for (Label s = 0; s < n; ++s) acc += fp(s, a, b) * p_star[s];
            const double defect = std::abs(acc - p_star[b]);
            if (defect > r.max) r = {defect, a, b};
        }
    return r;
}

/// Perron-Frobenius fixed point of q -> uniform * q. Requires every entry of
/// M_{ab} = sum_s p_{s x a -> b} / n to be strictly positive.
inline FixedPoint fixed_point_iterative(const FusionProbabilities &fp, IterationOptions opts = {}) {
    const std::size_t n = fp.size();
    std::vector<double> M(n * n, 0.0);
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b) {
            double acc = 0.0;
            for (Label s = 0; s < n; ++s) acc += fp(s, a, b);
            M[a * n + b] = acc / static_cast<double>(n);
            if (!(M[a * n + b] > 0.0)) {
                throw ConditionOneViolated("M_{ab} = 0 at (a,b) = (" + std::to_string(a) + "," + std::to_string(b) +
                                           "): no s fuses a into b");
            }
        }

    std::vector<double> q(n, 1.0 / static_cast<double>(n)), next(n);
    int it = 0;
    bool converged = false;
    for (; it < opts.max_iterations; ++it) {
        double sum = 0.0;
        for (Label b = 0; b < n; ++b) {
            double acc = 0.0;
            for (Label a = 0; a < n; ++a) acc += M[a * n + b] * q[a];
            next[b] = acc;
            sum += acc;
        }
        double change = 0.0;
        for (Label b = 0; b < n; ++b) {
            next[b] /= sum;
            change = std::max(change, std::abs(next[b] - q[b]));
        }
        q.swap(next);
        if (change < opts.tolerance) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged) throw NonConvergence("fixed-point iteration did not converge");

    FixedPoint out;
    out.p_star = AnyonDistribution(q);
    out.p_min = out.p_star.min();
    out.iterations = it;
    out.residual = verify_fixed_point_identity(fp, out.p_star).max;
    if (!(out.p_min > 0.0)) throw DegenerateDistribution("fixed point is not strictly positive");
    return out;
}

/// p*_a = d_a^2 / D^2.
inline AnyonDistribution closed_form_fixed_point(const QuantumDims &dims) {
    std::vector<double> p(dims.d.size());
    double sum = 0.0;
    for (double x : dims.d) sum += x * x;
    for (std::size_t a = 0; a < p.size(); ++a) p[a] = dims.d[a] * dims.d[a] / sum;
    return AnyonDistribution(std::move(p));
}

// ---------------------------------------------------------------------------
// Bound constants

/// K = 1 + (2 / pmin^2) log(set_size / pmin), natural log.
inline double bound_constant_K(const AnyonDistribution &p_star, std::size_t set_size) {
    const double pmin = p_star.min();
    if (!(pmin > 0.0)) throw DegenerateDistribution("K requires a strictly positive fixed point");
    return 1.0 + (2.0 / (pmin * pmin)) * std::log(static_cast<double>(set_size) / pmin);
}
inline double bound_constant_K(const AnyonDistribution &p_star) {
    return bound_constant_K(p_star, p_star.size());
}

/// log(1 / p*_{a0}) - K / sqrt(n).
inline double tee_lower_bound(Label a0, const AnyonDistribution &p_star, double n, double K) {
    if (!(n >= 1.0)) throw MalformedInput("n must be at least 1");
    if (a0 >= p_star.size()) throw MalformedInput("base label out of range");
    if (!(p_star[a0] > 0.0)) throw DegenerateDistribution("p*_{a0} = 0");
    return -std::log(p_star[a0]) - K / std::sqrt(n);
}

// ---------------------------------------------------------------------------
// Defect variant: string labels S distinct from sector labels A.

struct DefectFusionSystem {
    std::vector<std::string> string_labels;
    std::vector<std::string> sector_labels;
    /// p_{s x b -> a}, indexed as (s * k + b) * k + a with k = |A|.
    std::vector<double> p;
    std::optional<AnyonDistribution> q_star;
    std::optional<AnyonDistribution> p_star;
    double residual = 0.0;

    double operator()(std::size_t s, std::size_t b, std::size_t a) const {
        const std::size_t k = sector_labels.size();
        return p[(s * k + b) * k + a];
    }
};

/// Given q* on S (uniform when unset), finds p* on A as the fixed
/// distribution of M_{ba} = sum_s p_{s x b -> a} q*_s and records
/// max_{a,b} |sum_s p_{s x b -> a} q*_s - p*_a|.
inline DefectFusionSystem defect_fixed_point(DefectFusionSystem sys, IterationOptions opts = {}) {
    const std::size_t m = sys.string_labels.size();
    const std::size_t k = sys.sector_labels.size();
    if (m == 0 || k == 0) throw MalformedInput("defect system needs string and sector labels");
    if (sys.p.size() != m * k * k) throw MalformedInput("defect fusion table has the wrong size");
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t b = 0; b < k; ++b) {
            double sum = 0.0;
            for (std::size_t a = 0; a < k; ++a) sum += sys(s, b, a);
            if (std::abs(sum - 1.0) > kStructuralTol) throw MalformedInput("defect fusion row not normalized");
        }
    if (!sys.q_star) sys.q_star = AnyonDistribution::uniform(m);
    if (sys.q_star->size() != m) throw MalformedInput("q* has the wrong size");

    std::vector<double> M(k * k, 0.0);
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t a = 0; a < k; ++a) {
            double acc = 0.0;
            for (std::size_t s = 0; s < m; ++s) acc += sys(s, b, a) * (*sys.q_star)[s];
            M[b * k + a] = acc;
            if (!(acc > 0.0)) {
                throw ConditionOneViolated("induced matrix vanishes at (" + sys.sector_labels[b] + "," +
                                           sys.sector_labels[a] + ")");
            }
        }

    std::vector<double> v(k, 1.0 / static_cast<double>(k)), next(k);
    bool converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
        double sum = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            double acc = 0.0;
            for (std::size_t b = 0; b < k; ++b) acc += M[b * k + a] * v[b];
            next[a] = acc;
            sum += acc;
        }
        double change = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            next[a] /= sum;
            change = std::max(change, std::abs(next[a] - v[a]));
        }
        v.swap(next);
        if (change < opts.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NonConvergence("defect fixed-point iteration did not converge");

    sys.p_star = AnyonDistribution(v);
    double worst = 0.0;
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t a = 0; a < k; ++a) worst = std::max(worst, std::abs(M[b * k + a] - v[a]));
    sys.residual = worst;
    return sys;
}

}  // namespace teelab::fusion
