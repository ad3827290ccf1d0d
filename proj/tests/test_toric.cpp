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

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "teelab/toric.hpp"

using namespace teelab;
using namespace teelab::toric;

namespace {

struct Setup {
    Lattice lat;
    AnnulusPartition part;
};

Setup standard(int p, int size = 12, int w = 2) {
    Lattice lat(size, size, p);
    return {lat, AnnulusPartition(lat, AnnulusSpec::centred(size, size, w, w, w))};
}

}  // namespace

TEST(ToricLattice, GroundStateIsComplete) {
    for (int p : {2, 3}) {
        const Lattice lat(4, 4, p);
        EXPECT_EQ(lat.edges(), 40u);
        const auto st = build_ground_state(lat);
        EXPECT_EQ(st.generators().size(), lat.edges());
        EXPECT_TRUE(st.is_css());
        EXPECT_EQ(stab::region_entropy(st, std::vector<bool>(lat.edges(), true)).units, 0);
        EXPECT_EQ(stab::region_entropy(st, std::vector<bool>(lat.edges(), false)).units, 0);
    }
}

TEST(ToricLattice, SingleEdgeAndPlaquetteBoundary) {
    const Lattice lat(4, 4, 2);
    const auto st = build_ground_state(lat);
    const auto edge = stab::region_entropy(st, std::vector<std::size_t>{lat.h_edge(1, 2)});
    EXPECT_EQ(edge.units, 1);
    EXPECT_NEAR(edge.nats(), std::log(2.0), 1e-15);
    std::vector<std::size_t> loop;
    for (auto [e, s] : lat.boundary(1, 1)) loop.push_back(e);
    const auto r = stab::region_entropy(st, loop);
    EXPECT_EQ(r.units, 3);
    EXPECT_EQ(r.stabilizer_dim, 1u);
}

TEST(ToricLattice, PurityDuality) {
    const Lattice lat(5, 4, 3);
    const auto st = build_ground_state(lat);
    std::mt19937 rng(1);
    for (int t = 0; t < 40; ++t) {
        std::vector<bool> m(lat.edges()), c(lat.edges());
        for (std::size_t e = 0; e < lat.edges(); ++e) {
            m[e] = rng() % 2;
            c[e] = !m[e];
        }
        EXPECT_EQ(stab::region_entropy(st, m).units, stab::region_entropy(st, c).units);
    }
}

TEST(ToricLattice, EdgeNamesAndGeometryErrors) {
    const Lattice lat(4, 5, 2);
    EXPECT_EQ(lat.edge_name(lat.h_edge(2, 3)), "h(2,3)");
    EXPECT_EQ(lat.edge_name(lat.v_edge(4, 1)), "v(4,1)");
    EXPECT_THROW(Lattice(3, 8, 2), InvalidGeometry);
    EXPECT_THROW(Lattice(8, 8, 4), InvalidGeometry);
    EXPECT_THROW(lat.h_edge(4, 0), InvalidGeometry);
}

TEST(ToricAnnulus, RegionsAreDisjointAndClassified) {
    const auto s = standard(2);
    std::size_t a = 0, b = 0, c = 0, env = 0;
    for (std::size_t e = 0; e < s.lat.edges(); ++e) {
        switch (s.part.region_of(e)) {
            case Region::A: ++a; break;
            case Region::B: ++b; break;
            case Region::C: ++c; break;
            case Region::Env: ++env; break;
        }
    }
    EXPECT_EQ(a + b + c + env, s.lat.edges());
    EXPECT_EQ(a, c);
    EXPECT_GT(b, a);
    const auto thin = s.part.thinned(1);
    EXPECT_LT(thin.edges_in({Region::A}).size(), a);
    EXPECT_THROW(s.part.thinned(2), InsufficientWidth);
}

TEST(ToricAnnulus, GeometryErrors) {
    const Lattice lat(12, 12, 2);
    auto spec = AnnulusSpec::centred(12, 12, 2, 2, 2);
    spec.width_a = 1;
    EXPECT_THROW(AnnulusPartition(lat, spec), InvalidGeometry);
    spec = AnnulusSpec::centred(12, 12, 2, 2, 2);
    spec.origin = std::pair{spec.x0 + spec.width_b, 6};
    EXPECT_THROW(AnnulusPartition(lat, spec), InvalidGeometry);
    spec = AnnulusSpec::centred(14, 14, 2, 2, 2);
    EXPECT_THROW(AnnulusPartition(lat, spec), InvalidGeometry);
}

TEST(ToricCmi, SaturatesTwoLogPInEverySector) {
    for (int p : {2, 3}) {
        const auto s = standard(p);
        const auto states = all_sector_states(s.lat, s.part);
        EXPECT_EQ(states.size(), static_cast<std::size_t>(p * p));
        for (const auto &[a, st] : states) {
            const auto terms = annulus_cmi_terms(st, s.part);
            EXPECT_EQ(terms.units(), 2) << p << " (" << a.e << "," << a.m << ")";
            EXPECT_EQ(annulus_cmi_terms(st, s.part.thinned(1)).units(), 2);
        }
    }
}

TEST(ToricCmi, TermsObeyPurityDuality) {
    const auto s = standard(3);
    const auto st = build_ground_state(s.lat);
    const auto t = annulus_cmi_terms(st, s.part);
    const auto env = stab::region_entropy(st, s.part.mask({Region::Env}));
    EXPECT_EQ(t.abc.units, env.units);
    EXPECT_EQ(t.ab.units + t.bc.units - t.b.units - t.abc.units, 2);
}

TEST(ToricCmi, WiderAnnuliAndDeeperThinning) {
    const Lattice lat(12, 14, 3);
    const AnnulusPartition part(lat, AnnulusSpec::centred(12, 14, 2, 4, 2));
    const auto st = build_ground_state(lat);
    for (int t = 0; t <= 3; ++t) EXPECT_EQ(annulus_cmi_terms(st, part.thinned(t)).units(), 2) << t;
}

TEST(ToricSectors, LoopsMeasureCharges) {
    for (int p : {2, 3}) {
        const auto s = standard(p);
        const auto states = all_sector_states(s.lat, s.part);
        const auto flux = flux_loop(s.lat, s.part).operator_for(1, s.lat);
        const auto charge = charge_loop(s.lat, s.part).operator_for(1, s.lat);
        for (const auto &[a, st] : states) {
            EXPECT_EQ(stab::stabilizer_phase(st, flux).value_or(-1), (p - a.m) % p);
            EXPECT_EQ(stab::stabilizer_phase(st, charge).value_or(-1), (p - a.e) % p);
        }
    }
}

TEST(ToricSectors, RoutingThroughBIsBlocked) {
    const auto s = standard(2);
    const auto vac = build_ground_state(s.lat);
    Routing r{s.part.origin(), s.part.x1() - 1};
    EXPECT_THROW(create_sector(vac, s.lat, {1, 0}, r, &s.part), PathBlocked);
    EXPECT_NO_THROW(create_sector(vac, s.lat, {1, 0}, r));
    EXPECT_THROW(create_sector(vac, s.lat, {2, 0}, default_routing(s.part)), InvalidGeometry);
}

TEST(ToricAssumptions, AllPropertiesHold) {
    for (int p : {2, 3}) {
        const auto s = standard(p);
        const auto rep = verify_assumptions(all_sector_states(s.lat, s.part), s.lat, s.part);
        EXPECT_TRUE(rep.property1);
        EXPECT_TRUE(rep.property2);
        EXPECT_TRUE(rep.property3);
        EXPECT_TRUE(rep.violations.empty());
    }
}

TEST(ToricAssumptions, StringAnchoredOutsideHoleBreaksLocalIndistinguishability) {
    const auto s = standard(2);
    const auto vac = build_ground_state(s.lat);
    const std::pair<int, int> origin{s.part.x1() - 1, 6};
    std::map<SectorLabel, StabilizerState> states;
    for (const auto &a : all_sectors(2)) states.emplace(a, create_sector(vac, s.lat, a, Routing{origin, std::nullopt}));
    const auto rep = verify_assumptions(states, s.lat, s.part);
    EXPECT_FALSE(rep.property2);
    ASSERT_FALSE(rep.violations.empty());
    const auto &v = rep.violations.front();
    EXPECT_EQ(v.property, "property2 on AB");
    std::set<std::size_t> star;
    for (auto [e, sign] : s.lat.star(origin.first, origin.second)) star.insert(e);
    EXPECT_EQ(std::set<std::size_t>(v.witness_support.begin(), v.witness_support.end()), star);
}

TEST(ToricAssumptions, FusionEndpointInsideThinnedAnnulusFails) {
    const auto s = standard(2);
    FusionRule rule;
    rule.magnetic_end_row = s.part.y2();
    const auto rep = verify_assumptions(all_sector_states(s.lat, s.part), s.lat, s.part, rule);
    EXPECT_TRUE(rep.property1);
    EXPECT_TRUE(rep.property2);
    EXPECT_FALSE(rep.property3);
    ASSERT_FALSE(rep.violations.empty());
    EXPECT_NE(rep.violations.front().witness.find("has phase"), std::string::npos);
    const auto w = fusion_strings(s.lat, s.part, rule);
    EXPECT_THROW(check_fusion_strings(s.lat, s.part, s.part.thinned(1), w), SiteInThinnedRegion);
    EXPECT_NO_THROW(check_fusion_strings(s.lat, s.part, s.part.thinned(1), fusion_strings(s.lat, s.part, {})));
}

TEST(ToricAssumptions, FusionStringLeavingAIsRejected) {
    const auto s = standard(2);
    FusionRule rule;
    rule.electric_end_row = s.part.y3() + 1;
    EXPECT_THROW(check_fusion_strings(s.lat, s.part, s.part.thinned(1), fusion_strings(s.lat, s.part, rule)),
                 SupportViolation);
}

TEST(ToricTrace, ConstantTables) {
    {
        const Lattice lat(12, 15, 2);
        const AnnulusPartition part(lat, AnnulusSpec::centred(12, 15, 2, 5, 2));
        const auto t = nested_annulus_table(all_sector_states(lat, part), lat, part, 3);
        EXPECT_EQ(t.levels(), 5u);
        EXPECT_EQ(t.labels, (std::vector<std::string>{"1", "m", "e", "eps"}));
        for (const auto &row : t.table)
            for (double x : row) EXPECT_NEAR(x, 2.0 * std::log(2.0), 1e-15);
    }
    {
        const Lattice lat(12, 14, 3);
        const AnnulusPartition part(lat, AnnulusSpec::centred(12, 14, 2, 4, 2));
        const auto t = nested_annulus_table(all_sector_states(lat, part), lat, part, 2);
        for (const auto &row : t.table)
            for (double x : row) EXPECT_NEAR(x, 2.0 * std::log(3.0), 1e-15);
        EXPECT_THROW(nested_annulus_table(all_sector_states(lat, part), lat, part, 4), InsufficientWidth);
    }
}

TEST(ToricDense, SmallRegionReductionsAgree) {
    const Lattice lat(4, 4, 3);
    const auto vac = build_ground_state(lat);
    // A Z string on one edge creates a charge pair at its endpoints.
    Pauli w = Pauli::identity(lat.edges());
    w.z[lat.h_edge(1, 2)] = 1;
    const auto charged = vac.conjugated(w);
    std::vector<std::size_t> star;
    for (auto [e, s] : lat.star(1, 2)) star.push_back(e);
    const auto cmp = stab::compare_reductions(stab::canonical_form(vac, star), stab::canonical_form(charged, star));
    EXPECT_TRUE(cmp.orthogonal);
    const auto rv = stab::reduced_density(vac, star), rc = stab::reduced_density(charged, star);
    EXPECT_NEAR(dense::overlap(rv, rc), 0.0, 1e-12);
    EXPECT_NEAR(dense::von_neumann_entropy(rv), 3.0 * std::log(3.0), 1e-9);
    EXPECT_EQ(stab::region_entropy(vac, star).units, 3);
}
