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

// The constrained ring: an exactly solvable classical sector family for the
// cyclic group Z_q.
//
// The annulus is a cycle of columns in the order A, B1, C, B2. Column j
// carries a value h_j in Z_q and sector a is the uniform distribution over
// all column values with sum h_j = a (mod q). Columns of A have a radial
// depth: every layer of an A column holds a copy of the column value, so A
// can be thinned (layers removed from the inner and outer side) without
// losing the sector. With depth 1 every column is a single site.
//
// All entropies are counting statements: a region touching the column set J
// has entropy |J| log q, or (#columns - 1) log q when J is every column.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "teelab/dense.hpp"
#include "teelab/error.hpp"
#include "teelab/trace.hpp"

namespace teelab::ring {

using Site = int;
using Config = std::vector<std::uint8_t>;

struct RingSpec {
    int q = 2;
    int sites_A = 1;
    int sites_B1 = 1;
    int sites_C = 1;
    int sites_B2 = 1;
    /// Radial layers per A column.
    int a_depth = 1;

    int columns() const {
        return sites_A + sites_B1 + sites_C + sites_B2;
    }
    int sites() const {
        return sites_A * a_depth + sites_B1 + sites_C + sites_B2;
    }

    void validate() const {
        if (q < 2 || q > 255) throw InvalidGeometry("q must lie in [2, 255]");
        if (sites_A < 1 || sites_B1 < 1 || sites_C < 1 || sites_B2 < 1) throw InvalidGeometry("every arc needs a site");
        if (a_depth < 1) throw InvalidGeometry("a_depth must be positive");
        if (sites() > 64) throw InvalidGeometry("at most 64 sites are supported");
    }

    /// Site id of layer `layer` of A column `col`.
    Site a_site(int col, int layer) const {
        return col * a_depth + layer;
    }
    /// Column of a site.
    int column_of(Site s) const {
        const int na = sites_A * a_depth;
        return s < na ? s / a_depth : sites_A + (s - na);
    }
    /// Layer of a site (0 for non-A sites).
    int layer_of(Site s) const {
        return s < sites_A * a_depth ? s % a_depth : 0;
    }
    dense::Region region_of(Site s) const {
        const int col = column_of(s);
        if (col < sites_A) return dense::Region::A;
        if (col < sites_A + sites_B1) return dense::Region::B;
        if (col < sites_A + sites_B1 + sites_C) return dense::Region::C;
        return dense::Region::B;
    }
};

/// Layers of A retained after `steps` symmetric thinnings: [steps, depth - steps).
inline std::pair<int, int> thinned_layers(const RingSpec &spec, int steps) {
    if (steps < 0 || spec.a_depth - 2 * steps < 1) {
        throw InsufficientWidth("A has depth " + std::to_string(spec.a_depth) + ", too thin for " +
                                std::to_string(steps) + " thinning steps");
    }
    return {steps, spec.a_depth - steps};
}

/// Sites of the annulus A_t B C after `steps` thinnings, and the sites of
/// each region.
struct RingRegions {
    std::set<Site> A, B, C;
    std::set<Site> AB() const {
        std::set<Site> r = A;
        r.insert(B.begin(), B.end());
        return r;
    }
    std::set<Site> BC() const {
        std::set<Site> r = B;
        r.insert(C.begin(), C.end());
        return r;
    }
    std::set<Site> ABC() const {
        std::set<Site> r = AB();
        r.insert(C.begin(), C.end());
        return r;
    }
};

inline RingRegions ring_regions(const RingSpec &spec, int steps = 0) {
    spec.validate();
    const auto [lo, hi] = thinned_layers(spec, steps);
    RingRegions r;
    for (Site s = 0; s < spec.sites(); ++s) {
        switch (spec.region_of(s)) {
            case dense::Region::A:
                if (spec.layer_of(s) >= lo && spec.layer_of(s) < hi) r.A.insert(s);
                break;
            case dense::Region::B: r.B.insert(s); break;
            case dense::Region::C: r.C.insert(s); break;
            default: break;
        }
    }
    return r;
}

inline dense::Partition ring_partition(const RingSpec &spec, int steps = 0) {
    const RingRegions r = ring_regions(spec, steps);
    dense::Partition part;
    for (Site s = 0; s < spec.sites(); ++s) {
        if (r.A.count(s)) part.assign(s, dense::Region::A);
        else if (r.B.count(s)) part.assign(s, dense::Region::B);
        else if (r.C.count(s)) part.assign(s, dense::Region::C);
        else part.assign(s, dense::Region::Env);
    }
    return part;
}

/// Entropy as an exact multiple of log q.
struct CountingEntropy {
    long units = 0;
    int q = 2;
    double nats() const {
        return static_cast<double>(units) * std::log(static_cast<double>(q));
    }
};

/// Entropy of a sector state restricted to `region`, by counting. Sector
/// independent.
inline CountingEntropy region_entropy(const RingSpec &spec, const std::set<Site> &region) {
    spec.validate();
    std::set<int> cols;
    for (Site s : region) {
        if (s < 0 || s >= spec.sites()) throw InvalidGeometry("site out of range");
        cols.insert(spec.column_of(s));
    }
    const long touched = static_cast<long>(cols.size());
    return {touched == spec.columns() ? touched - 1 : touched, spec.q};
}

struct CountingCmi {
    CountingEntropy ab, bc, b, abc;
    long units() const {
        return ab.units + bc.units - b.units - abc.units;
    }
    double nats() const {
        return static_cast<double>(units()) * std::log(static_cast<double>(ab.q));
    }
};

inline CountingCmi counting_cmi(const RingSpec &spec, int steps = 0) {
    const RingRegions r = ring_regions(spec, steps);
    return {region_entropy(spec, r.AB()), region_entropy(spec, r.BC()), region_entropy(spec, r.B),
            region_entropy(spec, r.ABC())};
}

/// I(A:C|B) of every sector, in nats. Equal to log q for any arcs.
inline double exact_cmi(const RingSpec &spec, int steps = 0) {
    return counting_cmi(spec, steps).nats();
}

// ---------------------------------------------------------------------------
// Explicit supports

/// Support of sector a: every site configuration with copies equal inside a
/// column and column values summing to a mod q. Size q^(columns - 1).
inline std::vector<Config> sector_support(const RingSpec &spec, int a) {
    spec.validate();
    const int ncol = spec.columns();
    const double size = std::pow(static_cast<double>(spec.q), ncol - 1);
    if (size > 1e7) throw DimensionCap("support too large to enumerate");
    std::vector<Config> out;
    out.reserve(static_cast<std::size_t>(size));
    std::vector<int> h(static_cast<std::size_t>(ncol), 0);
    while (true) {
        int sum = 0;
        for (int j = 0; j + 1 < ncol; ++j) sum += h[static_cast<std::size_t>(j)];
        h[static_cast<std::size_t>(ncol - 1)] = ((a - sum) % spec.q + spec.q) % spec.q;
        Config c(static_cast<std::size_t>(spec.sites()));
        for (Site s = 0; s < spec.sites(); ++s)
            c[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(h[static_cast<std::size_t>(spec.column_of(s))]);
        out.push_back(std::move(c));
        int j = 0;
        for (; j + 1 < ncol; ++j) {
            if (++h[static_cast<std::size_t>(j)] < spec.q) break;
            h[static_cast<std::size_t>(j)] = 0;
        }
        if (j + 1 >= ncol) break;
    }
    return out;
}

/// Shannon entropy (nats) of the marginal of the uniform distribution on
/// `support` over the sites in `region`.
inline double marginal_entropy(const std::vector<Config> &support, const std::set<Site> &region) {
    std::map<Config, std::size_t> counts;
    for (const Config &c : support) {
        Config key;
        for (Site s : region) key.push_back(c.at(static_cast<std::size_t>(s)));
        ++counts[key];
    }
    const double total = static_cast<double>(support.size());
    std::map<std::size_t, std::size_t> classes;
    for (const auto &[key, n] : counts) ++classes[n];
    double weighted = 0.0;
    for (const auto &[n, k] : classes)
        weighted += static_cast<double>(k) * static_cast<double>(n) * std::log(static_cast<double>(n));
    return std::log(total) - weighted / total;
}

/// I(A:C|B) of sector a by exhaustive enumeration of its support.
inline double enumerated_cmi(const RingSpec &spec, int a, int steps = 0) {
    const auto support = sector_support(spec, a);
    const RingRegions r = ring_regions(spec, steps);
    return marginal_entropy(support, r.AB()) + marginal_entropy(support, r.BC()) - marginal_entropy(support, r.B) -
           marginal_entropy(support, r.ABC());
}

/// Uniform classical state on a support: the diagonal density operator with
/// one factor of dimension q per site.
inline dense::DensityOperator diagonal_state(const RingSpec &spec, const std::vector<Config> &support) {
    const auto space = dense::FactorSpace::uniform(static_cast<std::size_t>(spec.sites()), static_cast<std::size_t>(spec.q));
    const auto n = static_cast<Eigen::Index>(space.dim());
    dense::Matrix m = dense::Matrix::Zero(n, n);
    const double w = 1.0 / static_cast<double>(support.size());
    for (const Config &c : support) {
        std::size_t idx = 0;
        for (auto v : c) idx = idx * static_cast<std::size_t>(spec.q) + v;
        m(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) += w;
    }
    return dense::DensityOperator(space, std::move(m));
}

/// All q sector states as a dense family with labels "0".."q-1".
inline dense::SectorFamily build_family(const RingSpec &spec, int base = 0) {
    spec.validate();
    if (std::pow(static_cast<double>(spec.q), spec.sites()) > static_cast<double>(dense::kOperatorDimCap)) {
        throw DimensionCap("ring family exceeds the dense operator cap");
    }
    dense::SectorFamily fam;
    for (int a = 0; a < spec.q; ++a) {
        fam.labels.push_back(std::to_string(a));
        fam.states.push_back(diagonal_state(spec, sector_support(spec, a)));
    }
    fam.base = static_cast<std::size_t>(base);
    fam.validate();
    return fam;
}

/// Group-law fusion table of Z_q over the family labels.
inline fusion::FusionProbabilities group_fusion(int q) {
    const auto k = static_cast<std::size_t>(q);
    std::vector<double> t(k * k * k, 0.0);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t a = 0; a < k; ++a) t[(s * k + a) * k + (s + a) % k] = 1.0;
    return fusion::FusionProbabilities(k, std::move(t));
}

// ---------------------------------------------------------------------------
// Fusion strings

/// h -> h + shift (mod q) on every listed site.
struct SitePermutation {
    int q = 2;
    int shift = 0;
    std::vector<Site> sites;

    Config apply(Config c) const {
        for (Site s : sites) c[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>((c[static_cast<std::size_t>(s)] + shift) % q);
        return c;
    }
    /// Product with another string on the same sites.
    SitePermutation then(const SitePermutation &o) const {
        if (o.sites != sites || o.q != q) throw InvalidGeometry("strings act on different sites");
        return {q, (shift + o.shift) % q, sites};
    }
    dense::LocalOperator as_operator() const {
        const auto dq = static_cast<Eigen::Index>(q);
        dense::Matrix one = dense::Matrix::Zero(dq, dq);
        for (int h = 0; h < q; ++h) one((h + shift) % q, h) = 1.0;
        dense::Matrix op = dense::Matrix::Identity(1, 1);
        for (std::size_t i = 0; i < sites.size(); ++i) op = dense::kron(op, one);
        return {std::vector<dense::FactorId>(sites.begin(), sites.end()), op};
    }
};

/// Open string on A column `col` over layers [lo, hi] adding s to each
/// covered copy. Its endpoints are layers lo and hi; both must lie in
/// A \ A' for the given thinning, otherwise the created charges sit inside
/// the thinned annulus.
inline SitePermutation string_unitary(const RingSpec &spec, int s, int col, int lo, int hi, int steps) {
    spec.validate();
    if (col < 0 || col >= spec.sites_A) throw InvalidGeometry("string column is not in A");
    if (lo < 0 || hi >= spec.a_depth || lo > hi) throw InvalidGeometry("string layers out of range");
    const auto [keep_lo, keep_hi] = thinned_layers(spec, steps);
    for (int end : {lo, hi}) {
        if (end >= keep_lo && end < keep_hi) {
            throw SiteInThinnedRegion("string endpoint at layer " + std::to_string(end) + " of column " +
                                      std::to_string(col) + " is retained in A'");
        }
    }
    SitePermutation w{spec.q, ((s % spec.q) + spec.q) % spec.q, {}};
    for (int layer = lo; layer <= hi; ++layer) w.sites.push_back(spec.a_site(col, layer));
    return w;
}

/// The fusion string W_s for `steps` thinnings: crosses A column `col` from
/// its innermost to its outermost layer, with both endpoints in A \ A'.
inline SitePermutation fusion_unitary(const RingSpec &spec, int s, int col, int steps) {
    return string_unitary(spec, s, col, 0, spec.a_depth - 1, steps);
}

// ---------------------------------------------------------------------------
// Nested annuli

/// I_i^(a) for i = 0..n+1 where level i has been thinned n+1-i times.
inline AuditTrace nested_annulus_table(const RingSpec &spec, int n, int base = 0) {
    spec.validate();
    if (n < 1) throw InvalidGeometry("n must be at least 1");
    if (spec.a_depth < 2 * (n + 1) + 1) {
        throw InsufficientWidth("A depth " + std::to_string(spec.a_depth) + " cannot absorb " + std::to_string(n + 1) +
                                " thinnings; need " + std::to_string(2 * (n + 1) + 1));
    }
    std::vector<std::string> labels;
    for (int a = 0; a < spec.q; ++a) labels.push_back(std::to_string(a));
    AuditTrace t;
    t.labels = labels;
    t.table.assign(static_cast<std::size_t>(spec.q), std::vector<double>(static_cast<std::size_t>(n + 2), 0.0));
    for (int i = 0; i <= n + 1; ++i) {
        const double value = exact_cmi(spec, n + 1 - i);
        for (int a = 0; a < spec.q; ++a) t.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = value;
    }
    t.fp = group_fusion(spec.q);
    t.p_star = fusion::AnyonDistribution::uniform(static_cast<std::size_t>(spec.q));
    t.a0 = static_cast<fusion::Label>(base);
    t.provenance = "ring_family";
    return t;
}

}  // namespace teelab::ring
