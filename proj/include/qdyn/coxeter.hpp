#pragma once

// K-theory action of the Serre functor and the Coxeter transformation of an
// acyclic quiver, their spectral radius, and the entropy line of the Serre functor.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "qdyn/classify.hpp"
#include "qdyn/linalg.hpp"
#include "qdyn/quiver.hpp"

namespace qdyn {

/// Agreement required between the root-based ρ and power iteration.
inline constexpr double kPowerIterationAgreement = 1e-6;
inline constexpr int kPowerIterationSteps = 200;

/// With C the Euler matrix (⟨a,b⟩ = aᵀCb): [S] = C⁻¹Cᵀ, [Φ] = −C⁻¹Cᵀ and
/// [Φ⁻¹] = −C⁻ᵀC. C is unitriangular up to a vertex permutation, so all three
/// are integer matrices.
struct CoxeterData {
    EulerMatrix euler;
    IntMatrix serre;
    IntMatrix coxeter;
    IntMatrix coxeter_inverse;
    double spectral_radius = 1.0;
};

inline CoxeterData coxeter_data(const Quiver& q) {
    require_connected_acyclic(q, "coxeter_data");
    CoxeterData d;
    d.euler = euler_matrix(q);
    const IntMatrix& c = d.euler.matrix;
    const IntMatrix c_inv = unipotent_inverse(c);
    d.serre = c_inv * c.transpose();
    d.coxeter = -d.serre;
    d.coxeter_inverse = -(c_inv.transpose() * c);
    d.spectral_radius = integer_spectral_radius(d.coxeter);

    if (d.spectral_radius > 1.0 + kPowerIterationAgreement) {
        // Away from ρ = 1 the dominant eigenvalue is simple and power iteration
        // converges geometrically; it must land on the same value.
        const double check = power_iteration_radius(d.coxeter.cast<double>(), kPowerIterationSteps);
        if (std::abs(check - d.spectral_radius) > kPowerIterationAgreement * d.spectral_radius)
            throw NumericalError("coxeter_data: spectral radius " + std::to_string(d.spectral_radius) +
                                 " disagrees with power iteration " + std::to_string(check));
    }
    return d;
}

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Fraction reduced(std::int64_t n, std::int64_t d) {
        const std::int64_t g = std::gcd(n, d);
        return {n / g, d / g};
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// h_t = slope·t + intercept.
struct EntropyLine {
    Fraction slope;
    double intercept = 0.0;

    double at(double t) const { return slope.value() * t + intercept; }
};

/// Entropy of the Serre functor of D^b(kQ). Dynkin quivers are fractional
/// Calabi–Yau with S^h ≅ [h−2]; otherwise h_t(S) = t + log ρ([S]).
inline EntropyLine serre_entropy(const Quiver& q) {
    require_connected_acyclic(q, "serre_entropy");
    const GraphClass c = classify_graph(q);
    if (c.is_dynkin()) {
        const int h = coxeter_number(c);
        return {Fraction::reduced(h - 2, h), 0.0};
    }
    return {Fraction{1, 1}, std::log(coxeter_data(q).spectral_radius)};
}

/// Stretch factor λ = (m² + √(m⁴ − 4m²))/2 − 1 of S∘[−1] on D^b(K(m)).
inline double stretch_factor_kronecker(int m) {
    if (m < 3) throw DomainError("stretch_factor_kronecker: m must be at least 3");
    const double mm = static_cast<double>(m) * m;
    return (mm + std::sqrt(mm * mm - 4.0 * mm)) / 2.0 - 1.0;
}

/// (‖[Φ⁻¹]^steps · 1‖₁)^(1/steps), seeded with the all-ones dimension vector.
inline double growth_rate_check(const Quiver& q, int steps) {
    require_connected_acyclic(q, "growth_rate_check");
    if (steps < 1) throw DomainError("growth_rate_check: steps must be at least 1");
    const GraphClass c = classify_graph(q);
    if (c.is_dynkin())
        throw DomainError("growth_rate_check: Dynkin quiver; its Serre functor is fractional Calabi-Yau");
    const Eigen::MatrixXd phi_inv = coxeter_data(q).coxeter_inverse.cast<double>();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(phi_inv.rows());
    double log_norm = 0.0;
    for (int k = 0; k < steps; ++k) {
        v = phi_inv * v;
        const double norm = v.lpNorm<1>();
        if (norm == 0.0) throw NumericalError("growth_rate_check: iterate vanished");
        log_norm += std::log(norm);
        v /= norm;
    }
    return std::exp(log_norm / steps);
}

namespace detail {

inline nlohmann::ordered_json int_matrix_json(const IntMatrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

}  // namespace qdyn
