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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "teelab/categories.hpp"
#include "teelab/fusion.hpp"

using namespace teelab;
using namespace teelab::fusion;

namespace {

AnyonDistribution random_distribution(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> v(n);
    double s = 0.0;
    for (double &x : v) s += (x = u(rng));
    for (double &x : v) x /= s;
    return AnyonDistribution(v);
}

std::vector<FusionCategory> physical_categories() {
    std::vector<FusionCategory> out;
    for (const auto &c : bundled_categories())
        if (c.size() > 1) out.push_back(c);
    return out;
}

FusionCategory make(std::vector<std::string> labels, std::vector<std::tuple<int, int, int, int>> entries) {
    const std::size_t n = labels.size();
    std::vector<int> mult(n * n * n, 0);
    for (auto [a, b, c, m] : entries) mult[(a * n + b) * n + c] = m;
    return FusionCategory::create("test", labels, 0, mult);
}

}  // namespace

TEST(Category, ToricCodeIsAbelianWithSelfDualLabels) {
    const auto tc = toric_code_category();
    EXPECT_EQ(tc.size(), 4u);
    EXPECT_TRUE(tc.is_abelian());
    for (Label a = 0; a < 4; ++a) EXPECT_EQ(tc.dual(a), a);
    const Label e = *tc.find("e"), m = *tc.find("m"), eps = *tc.find("eps");
    EXPECT_EQ(tc.N(e, m, eps), 1);
    EXPECT_EQ(tc.N(e, e, tc.unit()), 1);
}

TEST(Category, FibonacciAssociativeByEnumeration) {
    const auto fib = fibonacci_category();
    int checked = 0;
    for (Label a = 0; a < 2; ++a)
        for (Label b = 0; b < 2; ++b)
            for (Label c = 0; c < 2; ++c)
                for (Label d = 0; d < 2; ++d) {
                    int lhs = 0, rhs = 0;
                    for (Label e = 0; e < 2; ++e) lhs += fib.N(a, b, e) * fib.N(e, c, d);
                    for (Label f = 0; f < 2; ++f) rhs += fib.N(b, c, f) * fib.N(a, f, d);
                    EXPECT_EQ(lhs, rhs);
                    ++checked;
                }
    EXPECT_EQ(checked, 16);
    EXPECT_FALSE(fib.is_abelian());
}

TEST(Category, NonAssociativeTableRejected) {
    // a x a = 1, b x b = 1, a x b = b x a = a.
    EXPECT_THROW(make({"1", "a", "b"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1}, {2, 0, 2, 1},
                                        {1, 1, 0, 1}, {2, 2, 0, 1}, {1, 2, 1, 1}, {2, 1, 1, 1}}),
                 InvalidCategory);
}

TEST(Category, OneGeneratorRingWithDoubleChannelIsValid) {
    // tau x tau = 1 + 2 tau is commutative and associative; d = 1 + sqrt(2).
    const auto cat = make({"1", "t"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 2}});
    const auto dims = quantum_dimensions(cat);
    EXPECT_NEAR(dims[1], 1.0 + std::sqrt(2.0), 1e-10);
}

TEST(Category, AxiomViolations) {
    EXPECT_THROW(make({"1", "a"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 1, 0, 1}}), InvalidCategory);
    EXPECT_THROW(make({"1", "a"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}}), InvalidCategory);
    EXPECT_THROW(make({"1", "a"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, -1}}), InvalidCategory);
}

TEST(Category, DualSymmetryOfMultiplicities) {
    for (const auto &cat : bundled_categories()) {
        const std::size_t n = cat.size();
        for (Label s = 0; s < n; ++s)
            for (Label a = 0; a < n; ++a)
                for (Label b = 0; b < n; ++b) EXPECT_EQ(cat.N(s, a, b), cat.N(b, cat.dual(a), s)) << cat.name();
    }
}

TEST(QuantumDimensions, AbelianAllOne) {
    const auto dims = quantum_dimensions(toric_code_category());
    for (double d : dims.d) EXPECT_DOUBLE_EQ(d, 1.0);
    EXPECT_NEAR(dims.total, 2.0, 1e-14);
}

TEST(QuantumDimensions, FibonacciMatchesPolynomialRoot) {
    const double phi = oracle::fibonacci_d();
    const auto dims = quantum_dimensions(fibonacci_category());
    EXPECT_NEAR(dims[1], phi, 1e-12);
    EXPECT_NEAR(dims.total * dims.total, (5.0 + std::sqrt(5.0)) / 2.0, 1e-12);
}

TEST(QuantumDimensions, IsingMatchesCharacteristicPolynomial) {
    const auto dims = quantum_dimensions(ising_category());
    EXPECT_NEAR(dims[1], oracle::ising_sigma_d(), 1e-12);
    EXPECT_NEAR(dims[2], 1.0, 1e-12);
    EXPECT_NEAR(dims.total, 2.0, 1e-12);
}

TEST(FusionProbabilities, AbelianAreZeroOne) {
    for (std::size_t N = 2; N <= 7; ++N) {
        const auto cat = cyclic_category(N);
        const auto fp = fusion_probabilities(cat, quantum_dimensions(cat));
        for (Label s = 0; s < N; ++s)
            for (Label a = 0; a < N; ++a)
                for (Label b = 0; b < N; ++b) EXPECT_EQ(fp(s, a, b), b == (s + a) % N ? 1.0 : 0.0);
    }
}

TEST(FusionProbabilities, IsingAndFibonacciValues) {
    const auto is = ising_category();
    const auto fpi = fusion_probabilities(is, quantum_dimensions(is));
    EXPECT_NEAR(fpi(1, 1, 0), 0.5, 1e-12);
    EXPECT_NEAR(fpi(1, 1, 2), 0.5, 1e-12);
    const auto fib = fibonacci_category();
    const auto fpf = fusion_probabilities(fib, quantum_dimensions(fib));
    EXPECT_NEAR(fpf(1, 1, 1), 1.0 / oracle::fibonacci_d(), 1e-12);
    EXPECT_NEAR(fpf(1, 1, 1), 0.6180339887, 1e-10);
}

TEST(FusionProbabilities, RowsSumToOneAndAssociate) {
    for (const auto &cat : bundled_categories()) {
        const auto fp = fusion_probabilities(cat, quantum_dimensions(cat));
        EXPECT_LT(fp.row_sum_defect(), 1e-12) << cat.name();
        EXPECT_LT(fp.associativity_defect(), 1e-12) << cat.name();
    }
}

TEST(Star, UnitAndGroupMultiplication) {
    const auto tc = toric_code_category();
    const auto fp = fusion_probabilities(tc, quantum_dimensions(tc));
    std::mt19937_64 rng(7);
    const auto q = random_distribution(4, rng);
    const auto r = star(AnyonDistribution::point_mass(4, tc.unit()), q, fp);
    for (Label a = 0; a < 4; ++a) EXPECT_NEAR(r[a], q[a], 1e-15);
    const auto em = star(AnyonDistribution::point_mass(4, *tc.find("e")), AnyonDistribution::point_mass(4, *tc.find("m")), fp);
    EXPECT_DOUBLE_EQ(em[*tc.find("eps")], 1.0);
}

TEST(Star, FibonacciTauTau) {
    const auto fib = fibonacci_category();
    const auto fp = fusion_probabilities(fib, quantum_dimensions(fib));
    const auto r = star(AnyonDistribution::point_mass(2, 1), AnyonDistribution::point_mass(2, 1), fp);
    const double phi = oracle::fibonacci_d();
    EXPECT_NEAR(r[0], 1.0 / (phi * phi), 1e-12);
    EXPECT_NEAR(r[1], 1.0 / phi, 1e-12);
    EXPECT_NEAR(r[0], 0.3819660, 1e-7);
}

TEST(Star, AssociativeOnRandomTriples) {
    std::mt19937_64 rng(2024);
    for (const auto &cat : physical_categories()) {
        const auto fp = fusion_probabilities(cat, quantum_dimensions(cat));
        for (int i = 0; i < 100; ++i) {
            const auto p = random_distribution(cat.size(), rng);
            const auto q = random_distribution(cat.size(), rng);
            const auto r = random_distribution(cat.size(), rng);
            const auto lhs = star(star(p, q, fp), r, fp);
            const auto rhs = star(p, star(q, r, fp), fp);
            for (Label a = 0; a < cat.size(); ++a) ASSERT_NEAR(lhs[a], rhs[a], 1e-12) << cat.name();
        }
    }
}

TEST(FixedPoint, KnownValues) {
    const auto fib = fibonacci_category();
    const auto fpf = fixed_point_iterative(fusion_probabilities(fib, quantum_dimensions(fib)));
    // Perron vector of M = [[1/2, 1/2], [1/(2 phi), 1 - 1/(2 phi)]]: p_1 / p_tau = 1 / phi^2.
    const double phi = oracle::fibonacci_d();
    EXPECT_NEAR(fpf.p_star[0], 1.0 / (1.0 + phi * phi), 1e-10);
    EXPECT_NEAR(fpf.p_star[0], 0.27639320, 1e-8);
    EXPECT_NEAR(fpf.p_star[1], 0.72360680, 1e-8);

    const auto is = ising_category();
    const auto fpi = fixed_point_iterative(fusion_probabilities(is, quantum_dimensions(is)));
    EXPECT_NEAR(fpi.p_star[0], 0.25, 1e-10);
    EXPECT_NEAR(fpi.p_star[1], 0.5, 1e-10);
    EXPECT_NEAR(fpi.p_star[2], 0.25, 1e-10);

    const auto z5 = cyclic_category(5);
    const auto fpz = fixed_point_iterative(fusion_probabilities(z5, quantum_dimensions(z5)));
    for (Label a = 0; a < 5; ++a) EXPECT_NEAR(fpz.p_star[a], 0.2, 1e-14);
}

TEST(FixedPoint, ClosedFormAgreesOnBundledCategories) {
    for (const auto &cat : physical_categories()) {
        const auto dims = quantum_dimensions(cat);
        const auto fp = fusion_probabilities(cat, dims);
        const auto it = fixed_point_iterative(fp);
        const auto closed = closed_form_fixed_point(dims);
        for (Label a = 0; a < cat.size(); ++a) EXPECT_NEAR(it.p_star[a], closed[a], 1e-10) << cat.name();
        EXPECT_LT(verify_fixed_point_identity(fp, it.p_star).max, 1e-12) << cat.name();
        EXPECT_LT(verify_fixed_point_identity(fp, closed).max, 1e-12) << cat.name();
    }
}

TEST(FixedPoint, ToricResidualExactlyZero) {
    const auto tc = toric_code_category();
    const auto fp = fusion_probabilities(tc, quantum_dimensions(tc));
    EXPECT_EQ(verify_fixed_point_identity(fp, AnyonDistribution::uniform(4)).max, 0.0);
}

TEST(FixedPoint, IsingUniformResidualLocated) {
    // At (a, b) = (sigma, sigma): sum_s p_{s x sigma -> sigma} / 3 - 1/3 = 2/3 - 1/3.
    const auto is = ising_category();
    const auto fp = fusion_probabilities(is, quantum_dimensions(is));
    const auto r = verify_fixed_point_identity(fp, AnyonDistribution::uniform(3));
    EXPECT_NEAR(r.max, 1.0 / 3.0, 1e-12);
    EXPECT_EQ(r.a, 1u);
    EXPECT_EQ(r.b, 1u);
}

TEST(FixedPoint, UniqueFromRandomStarts) {
    std::mt19937_64 rng(99);
    for (const auto &cat : physical_categories()) {
        const auto dims = quantum_dimensions(cat);
        const auto fp = fusion_probabilities(cat, dims);
        const auto target = closed_form_fixed_point(dims);
        const auto u = AnyonDistribution::uniform(cat.size());
        for (int i = 0; i < 20; ++i) {
            auto q = random_distribution(cat.size(), rng);
            for (int k = 0; k < 5000; ++k) q = star(u, q, fp);
            for (Label a = 0; a < cat.size(); ++a) ASSERT_NEAR(q[a], target[a], 1e-10) << cat.name();
        }
    }
}

TEST(FixedPoint, ConditionOneViolated) {
    // Both strings act trivially, so nothing ever reaches the second label.
    std::vector<double> t(8, 0.0);
    t[(0 * 2 + 0) * 2 + 0] = 1.0;
    t[(0 * 2 + 1) * 2 + 1] = 1.0;
    t[(1 * 2 + 0) * 2 + 0] = 1.0;
    t[(1 * 2 + 1) * 2 + 1] = 1.0;
    EXPECT_THROW(fixed_point_iterative(FusionProbabilities(2, t)), ConditionOneViolated);
}

TEST(BoundConstant, KnownValues) {
    EXPECT_NEAR(bound_constant_K(AnyonDistribution::uniform(4)), 1.0 + 32.0 * std::log(16.0), 1e-12);
    EXPECT_NEAR(bound_constant_K(AnyonDistribution::uniform(4)), 89.7228391, 1e-7);
    EXPECT_DOUBLE_EQ(bound_constant_K(AnyonDistribution::uniform(1)), 1.0);
    const auto is = ising_category();
    const auto p = closed_form_fixed_point(quantum_dimensions(is));
    // pmin = 1/4, |A| = 3: 1 + 32 ln 12.
    EXPECT_NEAR(bound_constant_K(p), 1.0 + 32.0 * std::log(12.0), 1e-12);
    EXPECT_NEAR(bound_constant_K(p), 80.51701, 1e-5);
}

TEST(LowerBound, ToricValuesAndMonotonicity) {
    const auto p = AnyonDistribution::uniform(4);
    const double K = bound_constant_K(p);
    EXPECT_NEAR(tee_lower_bound(0, p, 1e4, K), std::log(4.0) - K / 100.0, 1e-12);
    EXPECT_NEAR(tee_lower_bound(0, p, 1e4, K), 0.4890660, 1e-7);
    double prev = -1e300;
    for (int n = 1; n <= 200; ++n) {
        const double v = tee_lower_bound(0, p, n, K);
        EXPECT_GT(v, prev);
        EXPECT_NEAR(std::log(4.0) - v, K / std::sqrt(n), 1e-12);
        prev = v;
    }
    EXPECT_NEAR(tee_lower_bound(0, p, 1e10, K), std::log(4.0), 1e-3);
}

TEST(LowerBound, LimitIsTwiceLogDOverDa) {
    const auto fib = fibonacci_category();
    const auto dims = quantum_dimensions(fib);
    const auto p = closed_form_fixed_point(dims);
    const double K = bound_constant_K(p);
    EXPECT_NEAR(tee_lower_bound(1, p, 1e30, K), 2.0 * std::log(dims.total / dims[1]), 1e-12);
    EXPECT_THROW(tee_lower_bound(0, p, 0.5, K), MalformedInput);
}

TEST(DefectVariant, TwoSectorToggle) {
    // S = {1, e, m, eps}; e and m toggle sigma_+ <-> sigma_-.
    DefectFusionSystem sys;
    sys.string_labels = {"1", "e", "m", "eps"};
    sys.sector_labels = {"s+", "s-"};
    sys.p.assign(4 * 2 * 2, 0.0);
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t b = 0; b < 2; ++b) {
            const bool toggles = s == 1 || s == 2;
            const std::size_t a = toggles ? 1 - b : b;
            sys.p[(s * 2 + b) * 2 + a] = 1.0;
        }
    const auto out = defect_fixed_point(sys);
    EXPECT_NEAR((*out.p_star)[0], 0.5, 1e-12);
    EXPECT_NEAR((*out.p_star)[1], 0.5, 1e-12);
    EXPECT_LT(out.residual, 1e-12);
}

TEST(DefectVariant, IsingReducesToFixedPoint) {
    const auto is = ising_category();
    const auto dims = quantum_dimensions(is);
    const auto fp = fusion_probabilities(is, dims);
    DefectFusionSystem sys;
    sys.string_labels = is.labels();
    sys.sector_labels = is.labels();
    for (Label s = 0; s < 3; ++s)
        for (Label b = 0; b < 3; ++b)
            for (Label a = 0; a < 3; ++a) sys.p.push_back(fp(s, b, a));
    sys.q_star = closed_form_fixed_point(dims);
    const auto out = defect_fixed_point(sys);
    const auto closed = closed_form_fixed_point(dims);
    for (Label a = 0; a < 3; ++a) EXPECT_NEAR((*out.p_star)[a], closed[a], 1e-10);
}

TEST(Distribution, Validation) {
    EXPECT_THROW(AnyonDistribution({0.5, 0.6}), MalformedInput);
    EXPECT_THROW(AnyonDistribution({1.2, -0.2}), MalformedInput);
    EXPECT_THROW(AnyonDistribution(std::vector<double>{}), MalformedInput);
}
