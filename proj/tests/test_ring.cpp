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
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "teelab/ring.hpp"

using namespace teelab;
using namespace teelab::ring;

namespace {

RingSpec spec(int q, int a, int b1, int c, int b2, int depth = 1) {
    RingSpec s;
    s.q = q;
    s.sites_A = a;
    s.sites_B1 = b1;
    s.sites_C = c;
    s.sites_B2 = b2;
    s.a_depth = depth;
    return s;
}

}  // namespace

TEST(RingSupport, SizesAndDisjointness) {
    const auto s = spec(2, 2, 2, 2, 2);
    for (int a = 0; a < 2; ++a) EXPECT_EQ(sector_support(s, a).size(), 128u);
    const auto t = spec(3, 1, 1, 1, 1);
    std::set<Config> seen;
    for (int a = 0; a < 3; ++a) {
        const auto sup = sector_support(t, a);
        EXPECT_EQ(sup.size(), 27u);
        for (const auto &c : sup) EXPECT_TRUE(seen.insert(c).second);
    }
}

TEST(RingCmi, CountingMatchesBruteForce) {
    for (int q = 2; q <= 7; ++q)
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                for (int c = 1; c <= 2; ++c) {
                    if (std::pow(q, a + 2 * b + c) > 2e5) continue;
                    const auto s = spec(q, a, b, c, b);
                    for (int sector : {0, q - 1}) {
                        const double brute = oracle::ring_cmi(q, {a, b, c, b}, sector);
                        EXPECT_NEAR(exact_cmi(s), brute, 1e-12) << q << " " << a << b << c;
                        EXPECT_NEAR(enumerated_cmi(s, sector), brute, 1e-12);
                    }
                }
}

TEST(RingCmi, ReferenceValues) {
    EXPECT_EQ(counting_cmi(spec(2, 2, 2, 2, 2)).units(), 1);
    EXPECT_NEAR(exact_cmi(spec(2, 2, 2, 2, 2)), std::log(2.0), 1e-15);
    EXPECT_NEAR(exact_cmi(spec(5, 1, 1, 1, 1)), std::log(5.0), 1e-15);
    EXPECT_NEAR(oracle::ring_cmi(5, {1, 1, 1, 1}, 3), std::log(5.0), 1e-12);
    // Abelian saturation: margin against log|A| is exactly zero.
    for (int q = 2; q <= 7; ++q) EXPECT_EQ(exact_cmi(spec(q, 1, 2, 1, 3)) - std::log(static_cast<double>(q)), 0.0);
}

TEST(RingCmi, DepthDoesNotChangeValueAndThinningKeepsIt) {
    const auto s = spec(3, 2, 1, 1, 1, 5);
    for (int steps = 0; steps <= 2; ++steps) {
        EXPECT_EQ(counting_cmi(s, steps).units(), 1) << steps;
        EXPECT_NEAR(enumerated_cmi(s, 1, steps), std::log(3.0), 1e-12);
    }
    EXPECT_THROW(counting_cmi(s, 3), InsufficientWidth);
}

TEST(RingDense, ExportReproducesCounting) {
    const auto s = spec(2, 1, 1, 1, 1, 3);
    const auto fam = build_family(s);
    const auto part = ring_partition(s);
    for (const auto &rho : fam.states)
        EXPECT_NEAR(dense::conditional_mutual_information(rho, part), std::log(2.0), 1e-10);
    const auto s3 = spec(3, 1, 1, 1, 1);
    const auto fam3 = build_family(s3);
    for (const auto &rho : fam3.states)
        EXPECT_NEAR(dense::conditional_mutual_information(rho, ring_partition(s3)), std::log(3.0), 1e-10);
}

TEST(RingDense, PropertiesOneAndTwoExact) {
    const auto s = spec(3, 1, 1, 1, 1);
    const auto fam = build_family(s);
    const auto part = ring_partition(s);
    const auto p1 = dense::check_global_distinguishability(fam, part);
    const auto p2 = dense::check_local_indistinguishability(fam, part);
    EXPECT_TRUE(p1.pass);
    EXPECT_EQ(p1.worst, 0.0);
    EXPECT_TRUE(p2.pass);
    EXPECT_NEAR(p2.worst, 0.0, 1e-15);
}

TEST(RingDense, FusionStringOutsideThinnedRegionPasses) {
    const auto s = spec(2, 1, 1, 1, 1, 3);
    const auto fam = build_family(s);
    const auto w = fusion_unitary(s, 1, 0, 1);
    const auto r = dense::check_fusion_property(fam, ring_partition(s), ring_partition(s, 1), w.as_operator(), 1,
                                                group_fusion(2));
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.worst, 0.0, 1e-12);
    // Conjugating sector 0 by W gives sector 1 exactly on A'BC.
    const auto keep = ring_partition(s, 1).factors({dense::Region::A, dense::Region::B, dense::Region::C});
    const auto lhs = dense::partial_trace(dense::conjugate(fam.states[0], w.as_operator()), keep);
    const auto rhs = dense::partial_trace(fam.states[1], keep);
    EXPECT_EQ(dense::trace_distance(lhs, rhs), 0.0);
}

TEST(RingDense, IdentityStringPasses) {
    const auto s = spec(2, 1, 1, 1, 1, 3);
    const auto w = fusion_unitary(s, 0, 0, 1);
    EXPECT_TRUE(dense::check_fusion_property(build_family(s), ring_partition(s), ring_partition(s, 1), w.as_operator(),
                                             0, group_fusion(2))
                    .pass);
}

TEST(RingDense, StringEndingInsideThinnedRegionFails) {
    const auto s = spec(2, 1, 1, 1, 1, 5);
    EXPECT_THROW(string_unitary(s, 1, 0, 0, 2, 1), SiteInThinnedRegion);
    SitePermutation w{2, 1, {s.a_site(0, 0), s.a_site(0, 1), s.a_site(0, 2)}};
    const auto r = dense::check_fusion_property(build_family(s), ring_partition(s), ring_partition(s, 1),
                                                w.as_operator(), 1, group_fusion(2));
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.worst, 0.1);
}

TEST(RingDense, MixtureDecompositionExact) {
    const auto s = spec(2, 1, 1, 1, 1);
    const auto r = dense::mixture_cmi_decomposition(build_family(s), ring_partition(s),
                                                    fusion::AnyonDistribution::uniform(2));
    EXPECT_LT(r.defect, 1e-10);
    EXPECT_NEAR(r.margin, 0.0, 1e-12);
    EXPECT_NEAR(r.cmi_mixture, 0.0, 1e-10);
}

TEST(RingStrings, IdentityAndComposition) {
    const auto s = spec(5, 2, 1, 1, 1, 3);
    const auto id = fusion_unitary(s, 0, 1, 1);
    Config c(static_cast<std::size_t>(s.sites()), 3);
    EXPECT_EQ(id.apply(c), c);
    const auto w2 = fusion_unitary(s, 2, 1, 1), w3 = fusion_unitary(s, 3, 1, 1);
    EXPECT_EQ(w2.then(w3).shift, 0);
}

TEST(RingTrace, ConstantTables) {
    const auto t2 = nested_annulus_table(spec(2, 4, 1, 1, 1, 7), 2);
    EXPECT_EQ(t2.levels(), 4u);
    for (const auto &row : t2.table)
        for (double x : row) EXPECT_NEAR(x, std::log(2.0), 1e-15);
    const auto t3 = nested_annulus_table(spec(3, 1, 1, 1, 1, 7), 2);
    for (const auto &row : t3.table)
        for (double x : row) EXPECT_NEAR(x, std::log(3.0), 1e-15);
    EXPECT_THROW(nested_annulus_table(spec(2, 1, 1, 1, 1, 5), 2), InsufficientWidth);
}

TEST(RingSpecValidation, Errors) {
    EXPECT_THROW(exact_cmi(spec(1, 1, 1, 1, 1)), InvalidGeometry);
    EXPECT_THROW(exact_cmi(spec(2, 0, 1, 1, 1)), InvalidGeometry);
    EXPECT_THROW(exact_cmi(spec(2, 30, 30, 30, 30)), InvalidGeometry);
    EXPECT_THROW(build_family(spec(2, 4, 4, 4, 4)), DimensionCap);
}
