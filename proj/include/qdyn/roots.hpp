#pragma once

// Positive root systems of Dynkin, Euclidean and generalized Kronecker
// quivers, all in exact integer arithmetic. Membership follows the
// Euler-form description Δ₊ = {r ≥ 0, r ≠ 0 : ⟨r,r⟩ ≤ 1}, which holds for
// these three families only.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qdyn/classify.hpp"
#include "qdyn/linalg.hpp"
#include "qdyn/quiver.hpp"

namespace qdyn {

enum class RootKind { Real, Imaginary };

inline const char* root_kind_name(RootKind k) { return k == RootKind::Real ? "real" : "imaginary"; }

struct RootClass {
    RootKind kind;
    std::int64_t form_value;  // ⟨r,r⟩_Q
};

struct ClassifiedRoot {
    DimVector dims;
    RootKind kind;
};

struct KroneckerRoot {
    std::int64_t n;  // dimension at the source vertex
    std::int64_t m;  // dimension at the sink vertex
    RootKind kind;

    friend bool operator==(const KroneckerRoot&, const KroneckerRoot&) = default;
};

/// Largest coordinate of any Dynkin highest root (attained by E8).
inline constexpr std::int64_t kDynkinRootBox = 6;

/// Δ₊ = ∪ᵢ (βᵢ + Nδ) with βᵢ the minimal element of its class mod Zδ.
struct AffineRoots {
    DimVector delta;
    std::vector<ClassifiedRoot> coset_reps;  // lexicographic in vertex order
};

struct RootSystem {
    struct Finite {
        std::vector<DimVector> roots;
    };
    struct KroneckerHyperbolic {
        int l;
    };
    Quiver quiver;
    std::variant<Finite, AffineRoots, KroneckerHyperbolic> kind;
};

namespace detail {

inline void require_root_family(const Quiver& q, const GraphClass& c, std::string_view op) {
    require_connected_acyclic(q, op);
    if (c.is_wild())
        throw DomainError(std::string(op) +
                          ": wild quiver; the Euler-form description of the root system holds only for Dynkin, "
                          "Euclidean and Kronecker quivers");
}

}  // namespace detail

/// Classifies r as a positive root, or returns nullopt when ⟨r,r⟩ > 1.
inline std::optional<RootClass> is_positive_root(const Quiver& q, const DimVector& r) {
    detail::require_root_family(q, classify_graph(q), "is_positive_root");
    if (r.size() != q.size()) throw DomainError("is_positive_root: dimension vector does not match the quiver");
    if (!r.is_nonnegative()) throw DomainError("is_positive_root: dimension vector has a negative entry");
    if (r.is_zero()) throw DomainError("is_positive_root: zero vector");
    const std::int64_t value = tits_form(q, r);
    if (value > 1) return std::nullopt;
    return RootClass{value == 1 ? RootKind::Real : RootKind::Imaginary, value};
}

/// All positive roots of a Dynkin quiver, sorted by height then
/// lexicographically. Breadth-first search from the simple roots adding one
/// simple root at a time inside the box 0 ≤ r_v ≤ 6, keeping ⟨r,r⟩ = 1.
inline std::vector<DimVector> enumerate_dynkin(const Quiver& q) {
    const GraphClass c = classify_graph(q);
    require_connected_acyclic(q, "enumerate_dynkin");
    if (!c.is_dynkin()) throw DomainError("enumerate_dynkin: quiver is not Dynkin (" + c.label() + ")");
    const std::size_t n = q.size();
    std::set<DimVector> seen;
    std::deque<DimVector> frontier;
    for (std::size_t i = 0; i < n; ++i) {
        auto e = DimVector::unit(n, i);
        seen.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        DimVector r = frontier.front();
        frontier.pop_front();
        for (std::size_t i = 0; i < n; ++i) {
            if (r[i] >= kDynkinRootBox) continue;
            DimVector next = r;
            next[i] += 1;
            if (tits_form(q, next) != 1 || seen.count(next)) continue;
            seen.insert(next);
            frontier.push_back(next);
        }
    }
    std::vector<DimVector> roots(seen.begin(), seen.end());
    if (c.series != Series::E) {
        // A and D roots have coordinates ≤ 2; nothing should reach the box wall.
        for ([[maybe_unused]] const auto& r : roots) assert(*std::max_element(r.entries().begin(), r.entries().end()) < kDynkinRootBox);
    }
    std::stable_sort(roots.begin(), roots.end(), [](const DimVector& a, const DimVector& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a < b;
    });
    return roots;
}

/// Minimal positive generator of the kernel of the symmetrized Euler matrix.
inline DimVector null_root(const Quiver& q) {
    const GraphClass c = classify_graph(q);
    require_connected_acyclic(q, "null_root");
    if (!c.is_euclidean()) throw DomainError("null_root: quiver is not Euclidean (" + c.label() + ")");
    const auto m = euler_matrix(q).matrix;
    const IntMatrix sym = m + m.transpose();
    const std::size_t n = q.size();

    // Exact row reduction over the rationals.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(sym(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    std::vector<long> pivot_col_of_row;
    std::vector<bool> is_pivot(n, false);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[row]);
        const Rational lead = a[row][col];
        for (auto& x : a[row]) x /= lead;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col_of_row.push_back(static_cast<long>(col));
        is_pivot[col] = true;
        ++row;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    if (free_cols.size() != 1)
        throw DomainError("null_root: kernel of the symmetrized Euler matrix has dimension " +
                          std::to_string(free_cols.size()) + ", expected 1");
    const std::size_t f = free_cols.front();
    std::vector<Rational> x(n, Rational(0));
    x[f] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) x[static_cast<std::size_t>(pivot_col_of_row[r])] = -a[r][f];

    BigInt lcm = 1;
    for (const auto& v : x) {
        const BigInt d = boost::multiprecision::denominator(v);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<BigInt> ints;
    BigInt g = 0;
    for (const auto& v : x) {
        ints.push_back(boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v)));
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(ints.back()));
    }
    const int sign = ints[f] < 0 ? -1 : 1;
    DimVector delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = static_cast<std::int64_t>(ints[i] / g) * sign;
    if (!delta.is_nonnegative() || delta.min_entry() < 1)
        throw DomainError("null_root: kernel generator is not strictly positive");
    return delta;
}

/// δ and the minimal coset representatives of Δ₊ mod Zδ, from a scan of the
/// box 0 ≤ r_v ≤ 2δ_v.
inline AffineRoots enumerate_euclidean(const Quiver& q) {
    const DimVector delta = null_root(q);
    const std::size_t n = q.size();
    std::set<DimVector> reps;
    DimVector r(n);
    // Odometer over the box, skipping the zero vector.
    while (true) {
        std::size_t i = 0;
        while (i < n && r[i] == 2 * delta[i]) {
            r[i] = 0;
            ++i;
        }
        if (i == n) break;
        r[i] += 1;
        if (tits_form(q, r) > 1) continue;
        DimVector rep = r;
        while (true) {
            DimVector down = rep - delta;
            if (!down.is_nonnegative() || down.is_zero()) break;
            rep = std::move(down);
        }
        reps.insert(rep);
    }
    AffineRoots out{delta, {}};
    for (const auto& rep : reps) {
        const std::int64_t v = tits_form(q, rep);
        // The form is invariant under translation by δ; anything else means the box was wrong.
        if (tits_form(q, rep + delta) != v) throw DomainError("enumerate_euclidean: δ-translation changed the Euler form");
        out.coset_reps.push_back({rep, v == 1 ? RootKind::Real : RootKind::Imaginary});
    }
    return out;
}

inline std::int64_t kronecker_form(int l, std::int64_t n, std::int64_t m) { return n * n + m * m - l * n * m; }

/// Roots (n, m) of K(l) with max(n, m) ≤ depth, ordered by m then n.
/// n is the dimension at the arrows' source.
inline std::vector<KroneckerRoot> enumerate_kronecker(int l, int depth) {
    if (l < 3) throw DomainError("enumerate_kronecker: l must be at least 3");
    if (depth < 1) throw DomainError("enumerate_kronecker: depth must be at least 1");
    std::vector<KroneckerRoot> out;
    for (std::int64_t m = 0; m <= depth; ++m) {
        for (std::int64_t n = 0; n <= depth; ++n) {
            if (n == 0 && m == 0) continue;
            const std::int64_t v = kronecker_form(l, n, m);
            if (v <= 1) out.push_back({n, m, v == 1 ? RootKind::Real : RootKind::Imaginary});
        }
    }
    return out;
}

/// Every positive root of K(l) is a Schur root; there is nothing to compute.
constexpr bool kronecker_root_is_schur(int /*l*/, std::int64_t /*n*/, std::int64_t /*m*/) { return true; }

/// Source and sink vertex of a Kronecker quiver K(l), l ≥ 1.
inline std::pair<std::size_t, std::size_t> kronecker_orientation(const Quiver& q) {
    if (q.size() != 2 || q.arrows().empty()) throw DomainError("not a two-vertex quiver with arrows");
    const std::size_t s = q.arrows().front().source;
    const std::size_t t = q.arrows().front().target;
    if (q.arrow_count(t, s) != 0) throw DomainError("Kronecker quiver with arrows in both directions");
    return {s, t};
}

/// The root system of a Dynkin, Euclidean or Kronecker quiver.
inline RootSystem root_system(const Quiver& q) {
    const GraphClass c = classify_graph(q);
    detail::require_root_family(q, c, "root_system");
    if (c.is_dynkin()) return {q, RootSystem::Finite{enumerate_dynkin(q)}};
    if (c.is_euclidean()) return {q, enumerate_euclidean(q)};
    return {q, RootSystem::KroneckerHyperbolic{c.kronecker_l}};
}

/// Positive roots within `depth`: all roots (Dynkin), βᵢ + nδ for n ≤ depth
/// (Euclidean), or max(n, m) ≤ depth (Kronecker), in vertex coordinates.
inline std::vector<ClassifiedRoot> roots_to_depth(const Quiver& q, int depth) {
    if (depth < 0) throw DomainError("depth must be nonnegative");
    const RootSystem rs = root_system(q);
    std::vector<ClassifiedRoot> out;
    if (const auto* fin = std::get_if<RootSystem::Finite>(&rs.kind)) {
        for (const auto& r : fin->roots) out.push_back({r, RootKind::Real});
    } else if (const auto* aff = std::get_if<AffineRoots>(&rs.kind)) {
        for (int k = 0; k <= depth; ++k)
            for (const auto& rep : aff->coset_reps) out.push_back({rep.dims + k * aff->delta, rep.kind});
    } else {
        const int l = std::get<RootSystem::KroneckerHyperbolic>(rs.kind).l;
        const auto [s, t] = kronecker_orientation(q);
        for (const auto& kr : enumerate_kronecker(l, std::max(depth, 1))) {
            DimVector d(2);
            d[s] = kr.n;
            d[t] = kr.m;
            out.push_back({d, kr.kind});
        }
    }
    return out;
}

}  // namespace qdyn
