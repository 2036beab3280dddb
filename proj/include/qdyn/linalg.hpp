#pragma once

// Exact and floating-point linear algebra used for spectral radii.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "qdyn/error.hpp"
#include "qdyn/quiver.hpp"

namespace qdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Matrix powers by repeated squaring; exact for integer matrices.
template <typename Derived>
auto matrix_power(const Eigen::MatrixBase<Derived>& a, int exponent) {
    using Plain = typename Derived::PlainObject;
    if (a.rows() != a.cols()) throw DomainError("matrix_power of a non-square matrix");
    if (exponent < 0) throw DomainError("matrix_power with a negative exponent");
    Plain result = Plain::Identity(a.rows(), a.cols());
    Plain base = a;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

/// Inverse of I − N for nilpotent N, computed as Σ_k N^k. For an acyclic
/// quiver the Euler matrix is I − (arrow counts) and the sum counts paths.
inline IntMatrix unipotent_inverse(const IntMatrix& m) {
    const Eigen::Index n = m.rows();
    const IntMatrix nil = IntMatrix::Identity(n, n) - m;
    IntMatrix term = IntMatrix::Identity(n, n);
    IntMatrix sum = term;
    for (Eigen::Index k = 1; k <= n; ++k) {
        term = term * nil;
        if (term.isZero()) return sum;
        sum += term;
    }
    throw DomainError("matrix is not unipotent (the quiver has an oriented cycle)");
}

/// Characteristic polynomial det(λI − A) by Berkowitz's division-free
/// algorithm. Works over any commutative ring `T`; coefficients are returned
/// highest degree first (leading coefficient `one`).
template <typename T>
std::vector<T> berkowitz(const std::vector<std::vector<T>>& a, const T& zero, const T& one) {
    const std::size_t n = a.size();
    if (n == 0) return {one};
    std::vector<T> poly{one, zero - a[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        // Leading (r+1)x(r+1) block: [[M, C], [R, a_rr]] with M the previous block.
        std::vector<T> toeplitz;
        toeplitz.reserve(r + 2);
        toeplitz.push_back(one);
        toeplitz.push_back(zero - a[r][r]);
        std::vector<T> col(r);
        for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
        for (std::size_t k = 0; k < r; ++k) {
            T dot = zero;
            for (std::size_t j = 0; j < r; ++j) dot = dot + a[r][j] * col[j];
            toeplitz.push_back(zero - dot);
            std::vector<T> next(r, zero);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a[i][j] * col[j];
            col = std::move(next);
        }
        std::vector<T> updated(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) updated[i] = updated[i] + toeplitz[i - j] * poly[j];
        poly = std::move(updated);
    }
    return poly;
}

inline std::vector<BigInt> characteristic_polynomial(const IntMatrix& m) {
    std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)].emplace_back(m(i, j));
    return berkowitz<BigInt>(rows, BigInt(0), BigInt(1));
}

namespace poly {

// Rational polynomials stored lowest degree first.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

// Returns quotient, replaces `num` by the remainder.
inline QPoly divide(QPoly& num, const QPoly& den) {
    if (den.empty()) throw DomainError("polynomial division by zero");
    trim(num);
    if (num.size() < den.size()) return {};
    QPoly quot(num.size() - den.size() + 1, Rational(0));
    while (!num.empty() && num.size() >= den.size()) {
        const std::size_t shift = num.size() - den.size();
        const Rational c = num.back() / den.back();
        quot[shift] = c;
        for (std::size_t k = 0; k < den.size(); ++k) num[k + shift] -= c * den[k];
        num.pop_back();
        trim(num);
    }
    trim(quot);
    return quot;
}

inline QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = a;
        divide(r, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

}  // namespace poly

/// Squarefree part p / gcd(p, p') of an integer polynomial given highest
/// degree first; returned monic, highest degree first, as doubles.
inline std::vector<double> squarefree_part(const std::vector<BigInt>& highest_first) {
    poly::QPoly p;
    for (auto it = highest_first.rbegin(); it != highest_first.rend(); ++it) p.emplace_back(*it);
    poly::trim(p);
    if (p.empty()) throw DomainError("squarefree part of the zero polynomial");
    poly::QPoly g = poly::gcd(p, poly::derivative(p));
    poly::QPoly rest = p;
    poly::QPoly sf = poly::divide(rest, g);
    const Rational lead = sf.back();
    std::vector<double> out;
    for (auto it = sf.rbegin(); it != sf.rend(); ++it) out.push_back(static_cast<double>(Rational(*it / lead)));
    return out;
}

/// Diagonal similarity scaling so row and column norms are comparable
/// (radix-2, Parlett and Reinsch). Leaves eigenvalues unchanged.
inline void balance(Eigen::MatrixXd& a) {
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

/// Eigenvalues of a real square matrix after balancing.
inline std::vector<std::complex<double>> eigenvalues(Eigen::MatrixXd a) {
    if (a.rows() != a.cols()) throw DomainError("eigenvalues of a non-square matrix");
    if (a.rows() == 0) return {};
    if (!a.allFinite()) throw NumericalError("matrix has non-finite entries");
    balance(a);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
    std::vector<std::complex<double>> out;
    for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(solver.eigenvalues()(i));
    return out;
}

inline double spectral_radius(const Eigen::MatrixXd& a) {
    double rho = 0.0;
    for (const auto& z : eigenvalues(a)) rho = std::max(rho, std::abs(z));
    return rho;
}

/// Roots of a polynomial with real coefficients (highest degree first).
/// Degree ≤ 2 uses the closed form; higher degrees use the balanced
/// companion matrix followed by Newton polishing.
inline std::vector<std::complex<double>> polynomial_roots(std::vector<double> coeffs) {
    while (!coeffs.empty() && coeffs.front() == 0.0) coeffs.erase(coeffs.begin());
    if (coeffs.size() <= 1) return {};
    const std::size_t deg = coeffs.size() - 1;
    using C = std::complex<double>;
    if (deg == 1) return {C(-coeffs[1] / coeffs[0], 0.0)};
    if (deg == 2) {
        const double a = coeffs[0], b = coeffs[1], c = coeffs[2];
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            if (q == 0.0) return {C(0.0, 0.0), C(0.0, 0.0)};
            return {C(q / a, 0.0), C(c / q, 0.0)};
        }
        const double re = -b / (2.0 * a), im = std::sqrt(-disc) / (2.0 * a);
        return {C(re, im), C(re, -im)};
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t j = 0; j < deg; ++j) companion(0, static_cast<Eigen::Index>(j)) = -coeffs[j + 1] / coeffs[0];
    for (std::size_t i = 1; i < deg; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    auto roots = eigenvalues(companion);

    using LC = std::complex<long double>;
    auto eval = [&](LC z, LC& dp) {
        LC p = coeffs[0];
        dp = 0;
        for (std::size_t k = 1; k <= deg; ++k) {
            dp = dp * z + p;
            p = p * z + static_cast<long double>(coeffs[k]);
        }
        return p;
    };
    for (auto& root : roots) {
        LC z(root.real(), root.imag());
        LC dp;
        long double best = std::abs(eval(z, dp));
        for (int it = 0; it < 8 && best > 0; ++it) {
            LC p = eval(z, dp);
            if (dp == LC(0)) break;
            LC next = z - p / dp;
            LC dummy;
            long double val = std::abs(eval(next, dummy));
            if (!(val < best)) break;
            best = val;
            z = next;
        }
        root = C(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return roots;
}

/// Spectral radius of an integer matrix through its exact characteristic
/// polynomial. Repeated roots are removed exactly before root finding, so
/// Jordan blocks (as at ρ = 1 for extended Dynkin types) do not cost accuracy.
inline double integer_spectral_radius(const IntMatrix& m) {
    if (m.rows() == 0) return 0.0;
    const auto roots = polynomial_roots(squarefree_part(characteristic_polynomial(m)));
    double rho = 0.0;
    for (const auto& z : roots) rho = std::max(rho, std::abs(z));
    return rho;
}

/// Dominant eigenvalue modulus by power iteration on A², which tolerates a
/// pair ±ρ. `steps` counts multiplications by A. Meaningful only when the
/// dominant modulus is attained by eigenvalues of a single modulus class.
inline double power_iteration_radius(const Eigen::MatrixXd& a, int steps) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = 1.0 + 0.1 * std::sqrt(static_cast<double>(i + 2));
    x.normalize();
    double ratio = 0.0;
    for (int k = 0; k + 1 < steps || k == 0; k += 2) {
        Eigen::VectorXd y = a * (a * x);
        ratio = y.norm();
        if (ratio == 0.0) return 0.0;
        x = y / ratio;
    }
    return std::sqrt(ratio);
}

}  // namespace qdyn
