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

// Dense density operators on a product of finite factors: partial traces,
// von Neumann entropies, conditional mutual information and checkers for
// the sector-family properties (global distinguishability, local
// indistinguishability, fusion).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "teelab/error.hpp"
#include "teelab/fusion.hpp"

namespace teelab::dense {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using FactorId = int;

inline constexpr std::size_t kOperatorDimCap = std::size_t{1} << 14;
inline constexpr std::size_t kVectorDimCap = std::size_t{1} << 20;

inline constexpr double kStateTol = 1e-10;
inline constexpr double kNegativeEigenFloor = -1e-9;
inline constexpr double kEigenClip = 1e-10;

struct Factor {
    FactorId id;
    std::size_t dim;
};

/// Ordered list of tensor factors. The first factor is the most significant
/// digit of the basis index.
class FactorSpace {
   public:
    FactorSpace() = default;
    explicit FactorSpace(std::vector<Factor> factors, std::size_t cap = kOperatorDimCap) : factors_(std::move(factors)) {
        std::set<FactorId> seen;
        total_ = 1;
        for (const auto &f : factors_) {
            if (f.dim < 2) throw InvalidState("factor " + std::to_string(f.id) + " has dimension < 2");
            if (!seen.insert(f.id).second) throw InvalidState("duplicate factor id " + std::to_string(f.id));
            total_ *= f.dim;
            if (total_ > cap) throw DimensionCap("total dimension exceeds the cap of " + std::to_string(cap));
        }
    }
    /// n factors of dimension d with ids 0..n-1.
    static FactorSpace uniform(std::size_t n, std::size_t d, std::size_t cap = kOperatorDimCap) {
        std::vector<Factor> f;
        for (std::size_t i = 0; i < n; ++i) f.push_back({static_cast<FactorId>(i), d});
        return FactorSpace(std::move(f), cap);
    }

    const std::vector<Factor> &factors() const noexcept {
        return factors_;
    }
    std::size_t dim() const noexcept {
        return total_;
    }
    std::size_t position(FactorId id) const {
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (factors_[i].id == id) return i;
        throw UnknownFactor("unknown factor id " + std::to_string(id));
    }
    bool contains(FactorId id) const {
        return std::any_of(factors_.begin(), factors_.end(), [&](const Factor &f) { return f.id == id; });
    }
    std::size_t stride(std::size_t pos) const {
        std::size_t s = 1;
        for (std::size_t i = pos + 1; i < factors_.size(); ++i) s *= factors_[i].dim;
        return s;
    }
    bool operator==(const FactorSpace &o) const {
        if (factors_.size() != o.factors_.size()) return false;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (factors_[i].id != o.factors_[i].id || factors_[i].dim != o.factors_[i].dim) return false;
        return true;
    }

   private:
    std::vector<Factor> factors_;
    std::size_t total_ = 1;
};

namespace detail {

/// Offsets into the full index for every configuration of the factors at
/// `positions` (enumerated with positions[0] most significant).
inline std::vector<std::size_t> offsets(const FactorSpace &space, const std::vector<std::size_t> &positions) {
    std::vector<std::size_t> out{0};
    for (std::size_t pos : positions) {
        const std::size_t d = space.factors()[pos].dim;
        const std::size_t st = space.stride(pos);
        std::vector<std::size_t> next;
        next.reserve(out.size() * d);
        for (std::size_t base : out)
            for (std::size_t k = 0; k < d; ++k) next.push_back(base + k * st);
        out.swap(next);
    }
    return out;
}

}  // namespace detail

/// Hermitian, unit-trace operator on a FactorSpace. Positivity is checked
/// when the spectrum is taken.
class DensityOperator {
   public:
    DensityOperator() = default;
    DensityOperator(FactorSpace space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
        const auto n = static_cast<Eigen::Index>(space_.dim());
        if (matrix_.rows() != n || matrix_.cols() != n) throw InvalidState("matrix size does not match the space");
        if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStateTol) throw InvalidState("matrix is not Hermitian");
        if (std::abs(matrix_.trace() - Complex(1.0)) > kStateTol) throw InvalidState("trace is not 1");
    }

    const FactorSpace &space() const noexcept {
        return space_;
    }
    const Matrix &matrix() const noexcept {
        return matrix_;
    }

   private:
    FactorSpace space_;
    Matrix matrix_;
};

/// Normalized state vector; reductions go through singular values.
class PureState {
   public:
    PureState(FactorSpace space, Vector amplitudes) : space_(std::move(space)), amps_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amps_.size()) != space_.dim()) throw InvalidState("vector size does not match");
        const double norm = amps_.norm();
        if (std::abs(norm - 1.0) > kStateTol) throw InvalidState("state vector is not normalized");
    }
    const FactorSpace &space() const noexcept {
        return space_;
    }
    const Vector &amplitudes() const noexcept {
        return amps_;
    }
    DensityOperator density() const {
        if (space_.dim() > kOperatorDimCap) throw DimensionCap("pure state too large to expand");
        return DensityOperator(space_, amps_ * amps_.adjoint());
    }

   private:
    FactorSpace space_;
    Vector amps_;
};

/// Reduced operator on `keep`, re-indexed in ascending factor-id order.
inline DensityOperator partial_trace(const DensityOperator &rho, const std::set<FactorId> &keep) {
    const FactorSpace &space = rho.space();
    std::vector<std::size_t> kept, traced;
    for (FactorId id : keep) kept.push_back(space.position(id));
    for (std::size_t i = 0; i < space.factors().size(); ++i)
        if (!keep.count(space.factors()[i].id)) traced.push_back(i);

    std::vector<Factor> out_factors;
    for (std::size_t pos : kept) out_factors.push_back(space.factors()[pos]);
    FactorSpace out_space(std::move(out_factors));

    const auto ok = detail::offsets(space, kept);
    const auto ot = detail::offsets(space, traced);
    const auto dk = static_cast<Eigen::Index>(ok.size());
    Matrix out = Matrix::Zero(dk, dk);
    const Matrix &m = rho.matrix();
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dk; ++j) {
            Complex acc = 0.0;
            for (std::size_t t : ot) acc += m(static_cast<Eigen::Index>(ok[i] + t), static_cast<Eigen::Index>(ok[j] + t));
            out(i, j) = acc;
        }
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityOperator(std::move(out_space), std::move(out));
}

/// Eigenvalues with the clipping rule applied: values in [-1e-9, 1e-10) are
/// set to 0, anything below -1e-9 is an invalid state.
inline std::vector<double> clipped_spectrum(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SpectrumFailure("eigensolver did not converge");
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    for (double &x : ev) {
        if (x < kNegativeEigenFloor) throw InvalidState("operator has a negative eigenvalue " + std::to_string(x));
        if (x < kEigenClip) x = 0.0;
    }
    return ev;
}

inline double entropy_of_spectrum(const std::vector<double> &ev) {
    double s = 0.0;
    for (double x : ev)
        if (x > 0.0) s -= x * std::log(x);
    return std::max(s, 0.0);
}

/// S = -Tr rho log rho in nats.
inline double von_neumann_entropy(const DensityOperator &rho) {
    if (rho.space().dim() == 1) return 0.0;
    return entropy_of_spectrum(clipped_spectrum(rho.matrix()));
}

/// Entropy of the reduction of a pure state to `keep`, from the Schmidt
/// coefficients of the reshaped amplitude vector.
inline double region_entropy(const PureState &psi, const std::set<FactorId> &keep) {
    const FactorSpace &space = psi.space();
    std::vector<std::size_t> kept, rest;
    for (FactorId id : keep) kept.push_back(space.position(id));
    for (std::size_t i = 0; i < space.factors().size(); ++i)
        if (!keep.count(space.factors()[i].id)) rest.push_back(i);
    if (kept.empty() || rest.empty()) return 0.0;
    const auto ok = detail::offsets(space, kept);
    const auto orr = detail::offsets(space, rest);
    Matrix m(static_cast<Eigen::Index>(ok.size()), static_cast<Eigen::Index>(orr.size()));
    for (std::size_t i = 0; i < ok.size(); ++i)
        for (std::size_t j = 0; j < orr.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = psi.amplitudes()(static_cast<Eigen::Index>(ok[i] + orr[j]));
    Eigen::BDCSVD<Matrix> svd(m);
    std::vector<double> ev;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double sv = svd.singularValues()(k);
        ev.push_back(sv * sv < kEigenClip ? 0.0 : sv * sv);
    }
    return entropy_of_spectrum(ev);
}

// ---------------------------------------------------------------------------
// Partitions and conditional mutual information

enum class Region { A, B, C, Env };

inline const char *region_name(Region r) {
    switch (r) {
        case Region::A: return "A";
        case Region::B: return "B";
        case Region::C: return "C";
        case Region::Env: return "ENV";
    }
    return "?";
}

/// Assignment of every factor to one of A, B, C, ENV.
class Partition {
   public:
    Partition() = default;
    explicit Partition(std::map<FactorId, Region> assignment) : assignment_(std::move(assignment)) {
    }

    Region operator[](FactorId id) const {
        auto it = assignment_.find(id);
        if (it == assignment_.end()) throw UnknownFactor("factor " + std::to_string(id) + " is not assigned a region");
        return it->second;
    }
    void assign(FactorId id, Region r) {
        assignment_[id] = r;
    }
    std::set<FactorId> factors(std::initializer_list<Region> regions) const {
        std::set<FactorId> out;
        for (const auto &[id, r] : assignment_)
            if (std::find(regions.begin(), regions.end(), r) != regions.end()) out.insert(id);
        return out;
    }
    const std::map<FactorId, Region> &assignment() const noexcept {
        return assignment_;
    }

    /// Throws unless every factor of `space` is assigned and nothing else is.
    void validate(const FactorSpace &space) const {
        for (const auto &f : space.factors()) (void)(*this)[f.id];
        for (const auto &[id, r] : assignment_)
            if (!space.contains(id)) throw UnknownFactor("partition names unknown factor " + std::to_string(id));
    }

   private:
    std::map<FactorId, Region> assignment_;
};

struct CmiTerms {
    double s_ab = 0.0, s_bc = 0.0, s_b = 0.0, s_abc = 0.0;
    double value() const {
        return s_ab + s_bc - s_b - s_abc;
    }
};

inline CmiTerms cmi_terms(const DensityOperator &rho, const Partition &part) {
    part.validate(rho.space());
    const auto abc = part.factors({Region::A, Region::B, Region::C});
    const DensityOperator r_abc = partial_trace(rho, abc);
    CmiTerms t;
    t.s_abc = von_neumann_entropy(r_abc);
    t.s_ab = von_neumann_entropy(partial_trace(r_abc, part.factors({Region::A, Region::B})));
    t.s_bc = von_neumann_entropy(partial_trace(r_abc, part.factors({Region::B, Region::C})));
    t.s_b = von_neumann_entropy(partial_trace(r_abc, part.factors({Region::B})));
    return t;
}

/// I(A:C|B) = S(AB) + S(BC) - S(B) - S(ABC), after tracing out ENV.
inline double conditional_mutual_information(const DensityOperator &rho, const Partition &part) {
    return cmi_terms(rho, part).value();
}

inline double conditional_mutual_information(const PureState &psi, const Partition &part) {
    part.validate(psi.space());
    return region_entropy(psi, part.factors({Region::A, Region::B})) +
           region_entropy(psi, part.factors({Region::B, Region::C})) - region_entropy(psi, part.factors({Region::B})) -
           region_entropy(psi, part.factors({Region::A, Region::B, Region::C}));
}

/// 1/2 sum of absolute eigenvalues of rho - sigma.
inline double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    if (!(rho.space() == sigma.space())) throw InvalidState("trace distance between different spaces");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix() - sigma.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SpectrumFailure("eigensolver did not converge");
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

inline double overlap(const DensityOperator &rho, const DensityOperator &sigma) {
    return (rho.matrix().cwiseProduct(sigma.matrix().transpose())).sum().real();
}

// ---------------------------------------------------------------------------
// Local operators

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Operator acting on the listed factors (first listed = most significant).
struct LocalOperator {
    std::vector<FactorId> factors;
    Matrix op;
};

/// Embeds a local operator into the full space as op (x) identity.
inline Matrix embed(const LocalOperator &w, const FactorSpace &space) {
    std::vector<std::size_t> local, rest;
    std::set<FactorId> ids(w.factors.begin(), w.factors.end());
    for (FactorId id : w.factors) local.push_back(space.position(id));
    for (std::size_t i = 0; i < space.factors().size(); ++i)
        if (!ids.count(space.factors()[i].id)) rest.push_back(i);
    const auto ol = detail::offsets(space, local);
    const auto orr = detail::offsets(space, rest);
    if (static_cast<std::size_t>(w.op.rows()) != ol.size() || w.op.cols() != w.op.rows()) {
        throw InvalidState("local operator size does not match its factors");
    }
    const auto n = static_cast<Eigen::Index>(space.dim());
    Matrix full = Matrix::Zero(n, n);
    for (std::size_t r : orr)
        for (std::size_t i = 0; i < ol.size(); ++i)
            for (std::size_t j = 0; j < ol.size(); ++j) {
                const Complex v = w.op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (v != Complex(0.0)) full(static_cast<Eigen::Index>(ol[i] + r), static_cast<Eigen::Index>(ol[j] + r)) = v;
            }
    return full;
}

/// W rho W^dagger for a unitary W.
inline DensityOperator conjugate(const DensityOperator &rho, const LocalOperator &w) {
    const Eigen::Index k = w.op.rows();
    if ((w.op * w.op.adjoint() - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > kStateTol) {
        throw InvalidState("operator is not unitary");
    }
    const Matrix full = embed(w, rho.space());
    Matrix m = full * rho.matrix() * full.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityOperator(rho.space(), std::move(m));
}

// ---------------------------------------------------------------------------
// Sector families

/// Density operators rho^(a), one per label, on a shared space.
struct SectorFamily {
    std::vector<std::string> labels;
    std::vector<DensityOperator> states;
    std::size_t base = 0;

    void validate() const {
        if (labels.empty() || labels.size() != states.size()) throw InvalidState("family labels and states differ");
        if (base >= labels.size()) throw InvalidState("base label not in the family");
        for (const auto &s : states)
            if (!(s.space() == states.front().space())) throw InvalidState("family states live on different spaces");
    }
    const FactorSpace &space() const {
        return states.front().space();
    }
};

struct CheckReport {
    std::string name;
    bool pass = true;
    double worst = 0.0;
    std::vector<std::string> violations;
};

/// Property 1: Tr(rho^(a)_ABC rho^(b)_ABC) < 1e-10 for a != b.
inline CheckReport check_global_distinguishability(const SectorFamily &fam, const Partition &part,
                                                   double tol = kStateTol) {
    fam.validate();
    part.validate(fam.space());
    const auto abc = part.factors({Region::A, Region::B, Region::C});
    std::vector<DensityOperator> red;
    for (const auto &s : fam.states) red.push_back(partial_trace(s, abc));
    CheckReport r{"global_distinguishability", true, 0.0, {}};
    for (std::size_t a = 0; a < red.size(); ++a)
        for (std::size_t b = a + 1; b < red.size(); ++b) {
            const double ov = overlap(red[a], red[b]);
            r.worst = std::max(r.worst, ov);
            if (!(ov < tol)) {
                r.pass = false;
                std::ostringstream os;
                os << "Tr(rho_" << fam.labels[a] << " rho_" << fam.labels[b] << ") on ABC = " << ov;
                r.violations.push_back(os.str());
            }
        }
    return r;
}

/// Property 2: reductions to AB and to BC agree across labels.
inline CheckReport check_local_indistinguishability(const SectorFamily &fam, const Partition &part,
                                                    double tol = kStateTol) {
    fam.validate();
    part.validate(fam.space());
    CheckReport r{"local_indistinguishability", true, 0.0, {}};
    for (auto [regions, tag] : {std::pair{part.factors({Region::A, Region::B}), "AB"},
                                std::pair{part.factors({Region::B, Region::C}), "BC"}}) {
        std::vector<DensityOperator> red;
        for (const auto &s : fam.states) red.push_back(partial_trace(s, regions));
        for (std::size_t a = 0; a < red.size(); ++a)
            for (std::size_t b = a + 1; b < red.size(); ++b) {
                const double d = trace_distance(red[a], red[b]);
                r.worst = std::max(r.worst, d);
                if (!(d < tol)) {
                    r.pass = false;
                    std::ostringstream os;
                    os << tag << ": trace distance(" << fam.labels[a] << "," << fam.labels[b] << ") = " << d;
                    r.violations.push_back(os.str());
                }
            }
    }
    return r;
}

/// Property 3: (W rho^(a) W^dag)_{A'BC} = sum_b p_{s x a -> b} rho^(b)_{A'BC}.
/// `part_thinned` marks the A factors dropped by the thinning as ENV. The
/// fusion table is indexed by family label positions.
inline CheckReport check_fusion_property(const SectorFamily &fam, const Partition &part_full,
                                         const Partition &part_thinned, const LocalOperator &w, fusion::Label s,
                                         const fusion::FusionProbabilities &fp, double tol = 1e-9) {
    fam.validate();
    part_full.validate(fam.space());
    part_thinned.validate(fam.space());
    for (FactorId id : w.factors)
        if (part_full[id] != Region::A) {
            throw SupportViolation("W acts on factor " + std::to_string(id) + " outside A");
        }
    if (fp.size() != fam.labels.size()) throw InvalidState("fusion table does not match the family labels");
    for (const auto &[id, r] : part_thinned.assignment()) {
        const Region full = part_full[id];
        if (r != full && !(full == Region::A && r == Region::Env)) {
            throw InvalidState("thinned partition may only move A factors to ENV");
        }
    }

    const auto keep = part_thinned.factors({Region::A, Region::B, Region::C});
    std::vector<DensityOperator> red;
    for (const auto &st : fam.states) red.push_back(partial_trace(st, keep));

    CheckReport r{"fusion", true, 0.0, {}};
    for (std::size_t a = 0; a < fam.states.size(); ++a) {
        const DensityOperator lhs = partial_trace(conjugate(fam.states[a], w), keep);
        Matrix mix = Matrix::Zero(lhs.matrix().rows(), lhs.matrix().cols());
        for (std::size_t b = 0; b < red.size(); ++b) mix += fp(s, a, b) * red[b].matrix();
        const double d = trace_distance(lhs, DensityOperator(lhs.space(), mix));
        r.worst = std::max(r.worst, d);
        if (!(d < tol)) {
            r.pass = false;
            std::ostringstream os;
            os << "sector " << fam.labels[a] << ": trace distance on A'BC = " << d;
            r.violations.push_back(os.str());
        }
    }
    return r;
}

struct MixtureReport {
    double cmi_mixture = 0.0;  // I(A:C|B) of lambda = sum_a p_a rho^(a)
    double average_cmi = 0.0;  // sum_a p_a I(A:C|B)_{rho^(a)}
    double shannon = 0.0;      // H({p_a})
    double defect = 0.0;       // |I(lambda) - (average - H)|
    double margin = 0.0;       // average - H
    bool pass = false;
};

/// Evaluates both sides of I(lambda) = sum_a p_a I_a - H(p). Requires the
/// family to pass global distinguishability and local indistinguishability.
inline MixtureReport mixture_cmi_decomposition(const SectorFamily &fam, const Partition &part,
                                               const fusion::AnyonDistribution &p, double tol = 1e-9) {
    if (p.size() != fam.labels.size()) throw InvalidState("distribution does not match the family");
    const auto p1 = check_global_distinguishability(fam, part);
    if (!p1.pass) throw PremiseViolated("global distinguishability fails: " + p1.violations.front());
    const auto p2 = check_local_indistinguishability(fam, part);
    if (!p2.pass) throw PremiseViolated("local indistinguishability fails: " + p2.violations.front());

    MixtureReport r;
    Matrix lambda = Matrix::Zero(static_cast<Eigen::Index>(fam.space().dim()), static_cast<Eigen::Index>(fam.space().dim()));
    for (std::size_t a = 0; a < fam.states.size(); ++a) {
        if (p[a] == 0.0) continue;
        lambda += p[a] * fam.states[a].matrix();
        r.average_cmi += p[a] * conditional_mutual_information(fam.states[a], part);
    }
    r.cmi_mixture = conditional_mutual_information(DensityOperator(fam.space(), lambda), part);
    r.shannon = fusion::shannon_entropy(p);
    r.margin = r.average_cmi - r.shannon;
    r.defect = std::abs(r.cmi_mixture - r.margin);
    r.pass = r.defect < tol && r.margin >= -tol;
    return r;
}

// ---------------------------------------------------------------------------
// Generators

/// G G^dagger / Tr for a seeded complex Gaussian G: full rank almost surely.
inline DensityOperator random_density(const FactorSpace &space, std::uint64_t seed) {
    if (space.dim() > kOperatorDimCap) throw DimensionCap("random density above the operator cap");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(space.dim());
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityOperator(space, std::move(m));
}

/// (|0..0> +- |1..1>) / sqrt(2) on n qubits; + is label "+", - is "-".
inline SectorFamily ghz_phase_family(std::size_t n = 3) {
    const FactorSpace space = FactorSpace::uniform(n, 2);
    SectorFamily fam;
    fam.labels = {"+", "-"};
    for (double sign : {1.0, -1.0}) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
        v(0) = 1.0 / std::sqrt(2.0);
        v(static_cast<Eigen::Index>(space.dim() - 1)) = sign / std::sqrt(2.0);
        fam.states.push_back(PureState(space, v).density());
    }
    return fam;
}

}  // namespace teelab::dense
