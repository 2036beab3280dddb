#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "qdyn/coxeter.hpp"
#include "support/corpus.hpp"

using namespace qdyn;
namespace qt = qdyn::testing;

namespace {

Quiver k(int l) { return Quiver::numbered(2, std::vector<Arrow>(static_cast<std::size_t>(l), Arrow{0, 1})); }

// Plain max |eigenvalue| with no balancing or exact preprocessing.
double eigen_radius(const IntMatrix& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m.cast<double>(), false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST(CoxeterData, K3) {
    const CoxeterData d = coxeter_data(k(3));
    IntMatrix c(2, 2), s(2, 2);
    c << 1, -3, 0, 1;
    s << -8, 3, -3, 1;
    EXPECT_EQ(d.euler.matrix, c);
    EXPECT_EQ(d.serre, s);
    EXPECT_EQ(d.coxeter, -s);
    EXPECT_NEAR(d.spectral_radius, (7.0 + 3.0 * std::sqrt(5.0)) / 2.0, 1e-12);
}

TEST(CoxeterData, K2AndA2) {
    EXPECT_NEAR(coxeter_data(k(2)).spectral_radius, 1.0, 1e-12);
    const CoxeterData a2 = coxeter_data(k(1));
    EXPECT_EQ(matrix_power(a2.coxeter, 3), IntMatrix::Identity(2, 2));
    EXPECT_NEAR(a2.spectral_radius, 1.0, 1e-12);
}

TEST(CoxeterData, Rejections) {
    EXPECT_THROW(coxeter_data(Quiver::numbered(2, {{0, 1}, {1, 0}})), DomainError);
    EXPECT_THROW(coxeter_data(Quiver::numbered(3, {{0, 1}})), DomainError);
}

TEST(CoxeterData, SerreDualityOnRandomQuivers) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Quiver q = qt::random_acyclic(rng, 2 + trial % 5, trial % 4);
        const CoxeterData d = coxeter_data(q);
        const Eigen::Index n = d.serre.rows();
        // ⟨a, b⟩ = ⟨b, S a⟩ for all basis vectors.
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const std::int64_t lhs = d.euler.matrix(i, j);
                const std::int64_t rhs = (d.euler.matrix.row(j) * d.serre.col(i))(0, 0);
                ASSERT_EQ(lhs, rhs);
            }
        EXPECT_EQ(d.coxeter * d.coxeter_inverse, IntMatrix::Identity(n, n));
        EXPECT_EQ(std::llabs(std::llround(d.coxeter.cast<double>().determinant())), 1);
        EXPECT_NEAR(integer_spectral_radius(d.coxeter_inverse), d.spectral_radius, 1e-9 * d.spectral_radius);
        EXPECT_GE(d.spectral_radius, 1.0 - 1e-9);
    }
}

TEST(CoxeterData, RadiusOneExactlyForDynkinAndEuclidean) {
    std::vector<qt::Diagram> all = qt::dynkin_diagrams(8);
    for (auto& d : qt::euclidean_diagrams(8)) all.push_back(d);
    for (const auto& d : all)
        for (const Quiver& q : qt::orientations(d)) ASSERT_NEAR(coxeter_data(q).spectral_radius, 1.0, 1e-9) << d.label;
}

TEST(CoxeterData, WildRadiusAboveOne) {
    for (const Quiver& q : qt::small_quivers(5, 6)) {
        if (!classify_graph(q).is_wild() && !classify_graph(q).is_kronecker()) continue;
        const double rho = coxeter_data(q).spectral_radius;
        ASSERT_GT(rho, 1.0 + 1e-6);
        EXPECT_NEAR(rho, eigen_radius(coxeter_data(q).coxeter), 1e-6 * rho);
    }
}

TEST(CoxeterData, TreeRadiusIsOrientationInvariant) {
    for (std::size_t n = 2; n <= 6; ++n) {
        for (const auto& tree : qt::labelled_trees(n)) {
            const auto qs = qt::orientations(tree);
            const double rho = coxeter_data(qs.front()).spectral_radius;
            for (const Quiver& q : qs) ASSERT_NEAR(coxeter_data(q).spectral_radius, rho, 1e-9 * rho);
        }
    }
}

TEST(CoxeterData, DynkinOrderIsCoxeterNumber) {
    for (const auto& d : qt::dynkin_diagrams(8)) {
        for (const Quiver& q : qt::orientations(d)) {
            const int h = coxeter_number(classify_graph(q));
            const IntMatrix phi = coxeter_data(q).coxeter;
            const auto n = phi.rows();
            ASSERT_EQ(matrix_power(phi, h), IntMatrix::Identity(n, n)) << d.label;
            for (int k = 1; k < h; ++k) ASSERT_NE(matrix_power(phi, k), IntMatrix::Identity(n, n)) << d.label;
        }
    }
}

TEST(SerreEntropy, Examples) {
    const EntropyLine a2 = serre_entropy(k(1));
    EXPECT_EQ(a2.slope, (Fraction{1, 3}));
    EXPECT_EQ(a2.intercept, 0.0);
    const EntropyLine k2 = serre_entropy(k(2));
    EXPECT_EQ(k2.slope, (Fraction{1, 1}));
    EXPECT_NEAR(k2.intercept, 0.0, 1e-12);
    const EntropyLine k3 = serre_entropy(k(3));
    EXPECT_NEAR(k3.intercept, std::log((7.0 + 3.0 * std::sqrt(5.0)) / 2.0), 1e-12);
    EXPECT_NEAR(k3.at(2.0), 2.0 + 1.9248473002, 1e-9);
    EXPECT_EQ(serre_entropy(qt::orient_down(qt::dynkin_e(8))).slope, (Fraction{14, 15}));
    EXPECT_EQ(serre_entropy(qt::orient_down(qt::dynkin_d(4))).slope, (Fraction{2, 3}));
}

TEST(StretchFactor, FormulaAndIdentity) {
    EXPECT_NEAR(stretch_factor_kronecker(3), (7.0 + 3.0 * std::sqrt(5.0)) / 2.0, 1e-12);
    EXPECT_NEAR(stretch_factor_kronecker(4), 7.0 + 4.0 * std::sqrt(3.0), 1e-12);
    for (int m = 3; m <= 10; ++m) {
        const double lambda = stretch_factor_kronecker(m);
        EXPECT_NEAR(lambda, coxeter_data(k(m)).spectral_radius, 1e-9 * lambda);
        // The other eigenvalue of the trace m² − 2 matrix is its inverse.
        EXPECT_NEAR(lambda * ((m * m - 2) - lambda), 1.0, 1e-9);
    }
    EXPECT_THROW(stretch_factor_kronecker(2), DomainError);
}

TEST(GrowthRate, Examples) {
    EXPECT_NEAR(growth_rate_check(k(3), 40), 6.854101966, 1e-3);
    EXPECT_NEAR(growth_rate_check(k(2), 40), 1.0, 0.2);
    const Quiver wild = Quiver::numbered(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}});
    EXPECT_GT(growth_rate_check(wild, 40), 1.0);
    EXPECT_THROW(growth_rate_check(k(1), 40), DomainError);
    EXPECT_THROW(growth_rate_check(k(3), 0), DomainError);
}

TEST(GrowthRate, ConvergesWithMoreSteps) {
    const Quiver wild = Quiver::numbered(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}});
    const double rho = coxeter_data(wild).spectral_radius;
    EXPECT_LT(std::abs(growth_rate_check(wild, 2000) - rho), std::abs(growth_rate_check(wild, 40) - rho));
    EXPECT_NEAR(growth_rate_check(wild, 2000), rho, 1e-3 * rho);
}
