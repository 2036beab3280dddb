#pragma once

// Kronecker pairs (E₁, E₂) in D^b(kQ): an exceptional pair with
// Hom^{≤0}(E₁, E₂) = 0 and dim Hom¹(E₁, E₂) ≥ 3. Witnesses are certified at
// the level of dimension vectors with disjoint supports.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdyn/classify.hpp"
#include "qdyn/error.hpp"
#include "qdyn/quiver.hpp"
#include "qdyn/roots.hpp"

namespace qdyn {

/// dim Hom¹(a, b) = Σ over arrows s→t with s ∈ supp(a), t ∈ supp(b) of a_s·b_t,
/// valid when the supports are disjoint (then Hom vanishes both ways).
inline std::int64_t hom1_disjoint(const Quiver& q, const DimVector& a, const DimVector& b) {
    if (a.size() != q.size() || b.size() != q.size()) throw DomainError("hom1_disjoint: dimension vector size mismatch");
    for (std::size_t i = 0; i < q.size(); ++i)
        if (a[i] != 0 && b[i] != 0) throw DomainError("hom1_disjoint: supports overlap at '" + q.name(i) + "'");
    std::int64_t sum = 0;
    for (const auto& arr : q.arrows()) sum += a[arr.source] * b[arr.target];
    return sum;
}

/// r = 1_w + m·δ, the exceptional dimension vector built for a Euclidean Q_A.
struct BigExceptional {
    std::size_t w = 0;
    std::int64_t m = 0;
    DimVector r;
};

/// r = 1_w + m·δ with every coordinate ≥ n, m minimal. w is the first sink
/// for type ~A and the first vertex with δ_w = 1 (an extending vertex) for
/// types ~D and ~E. r is a real root with ⟨r, δ⟩ ≠ 0.
inline BigExceptional exceptional_big(const Quiver& qa, std::int64_t n) {
    if (n < 1) throw DomainError("exceptional_dim_big: n must be at least 1");
    if (!qa.is_acyclic())
        throw DomainError("exceptional_dim_big: oriented cycle; no sink exists for the construction");
    const GraphClass c = classify_graph(qa);
    if (!c.is_euclidean()) throw DomainError("exceptional_dim_big: quiver is not Euclidean (" + c.label() + ")");
    const DimVector delta = null_root(qa);
    const std::size_t size = qa.size();
    std::optional<std::size_t> w;
    for (std::size_t i = 0; i < size && !w; ++i) {
        if (c.series == Series::A) {
            bool sink = true;
            for (const auto& a : qa.arrows()) sink = sink && a.source != i;
            if (sink) w = i;
        } else if (delta[i] == 1) {
            w = i;
        }
    }
    if (!w) throw DomainError("exceptional_dim_big: no vertex of the required kind");
    for (std::int64_t m = 1;; ++m) {
        DimVector r = DimVector::unit(size, *w) + m * delta;
        if (r.min_entry() < n) continue;
        if (tits_form(qa, r) != 1) throw DomainError("exceptional_dim_big: result is not a real root");
        if (euler_form(qa, r, delta) == 0) throw DomainError("exceptional_dim_big: <r, delta> vanishes");
        return {*w, m, std::move(r)};
    }
}

inline DimVector exceptional_dim_big(const Quiver& qa, std::int64_t n) { return exceptional_big(qa, n).r; }

enum class PairOrder { RhoFirst, SimpleFirst };
enum class Construction { ParallelArrows, EuclideanSubquiver, ADSubquiver, SpecialS1, SpecialS2, SpecialS3 };

inline const char* pair_order_name(PairOrder o) { return o == PairOrder::RhoFirst ? "rho_first" : "simple_first"; }

inline const char* construction_name(Construction c) {
    switch (c) {
        case Construction::ParallelArrows: return "ParallelArrows";
        case Construction::EuclideanSubquiver: return "EuclideanSubquiver";
        case Construction::ADSubquiver: return "ADSubquiver";
        case Construction::SpecialS1: return "SpecialS1";
        case Construction::SpecialS2: return "SpecialS2";
        case Construction::SpecialS3: return "SpecialS3";
    }
    return "ADSubquiver";
}

/// (ρ, s_v) when v is a sink of Q_{A∪{v}}, (s_v, ρ) when v is a source.
struct KroneckerWitness {
    std::vector<std::size_t> A;  // in search order (sorted by vertex name)
    std::size_t v = 0;
    DimVector rho;  // full length, supported on A
    PairOrder order = PairOrder::SimpleFirst;
    std::int64_t hom1 = 0;
    Construction construction = Construction::ADSubquiver;
    std::int64_t delta_multiplier = 0;  // EuclideanSubquiver only

    /// (E₁, E₂) as dimension vectors.
    std::pair<DimVector, DimVector> pair(std::size_t n) const {
        const DimVector s = DimVector::unit(n, v);
        return order == PairOrder::RhoFirst ? std::pair{rho, s} : std::pair{s, rho};
    }
};

namespace detail {

// Directed isomorphism of small quivers fixing a marked vertex of each.
inline bool marked_isomorphic(const Quiver& a, std::size_t va, const Quiver& b, std::size_t vb) {
    if (a.size() != b.size() || a.arrows().size() != b.arrows().size()) return false;
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[va] != vb) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) ok = a.arrow_count(i, j) == b.arrow_count(perm[i], perm[j]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Shapes with vertex 0 as v.
inline const std::vector<Quiver>& special_shapes() {
    static const std::vector<Quiver> shapes{
        Quiver::numbered(3, {{0, 1}, {0, 1}, {0, 2}, {2, 1}}),
        Quiver::numbered(4, {{1, 2}, {3, 2}, {0, 1}, {0, 2}, {0, 3}}),
        Quiver::numbered(5, {{1, 4}, {2, 4}, {3, 4}, {0, 1}, {0, 2}, {0, 3}}),
    };
    return shapes;
}

inline Construction tag_ad_witness(const Quiver& q, const std::vector<std::size_t>& a, std::size_t v) {
    std::vector<std::size_t> all{v};
    all.insert(all.end(), a.begin(), a.end());
    const Quiver sub = subquiver(q, std::span<const std::size_t>(all));
    // subquiver keeps ambient index order, so v sits at its rank among `all`.
    const auto local_v = static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [v](std::size_t x) { return x < v; }));
    const auto& shapes = special_shapes();
    const Construction tags[] = {Construction::SpecialS1, Construction::SpecialS2, Construction::SpecialS3};
    for (std::size_t k = 0; k < shapes.size(); ++k)
        if (marked_isomorphic(sub, local_v, shapes[k], 0)) return tags[k];
    return Construction::ADSubquiver;
}

// Visit the subsets of `order` of each size in increasing size, lexicographic
// within a size, until `visit` returns true.
template <typename Visit>
bool for_each_subset(const std::vector<std::size_t>& order, Visit&& visit) {
    const std::size_t n = order.size();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<std::size_t> subset;
            for (std::size_t i : idx) subset.push_back(order[i]);
            if (visit(subset)) return true;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

inline KroneckerWitness make_witness(const Quiver& q, std::vector<std::size_t> a, std::size_t v, DimVector rho,
                                     const Adjacency& adj, Construction c) {
    KroneckerWitness w;
    w.A = std::move(a);
    w.v = v;
    w.rho = std::move(rho);
    w.order = adj.v_is_sink_in_union ? PairOrder::RhoFirst : PairOrder::SimpleFirst;
    w.construction = c;
    const DimVector s = DimVector::unit(q.size(), v);
    w.hom1 = w.order == PairOrder::RhoFirst ? hom1_disjoint(q, w.rho, s) : hom1_disjoint(q, s, w.rho);
    return w;
}

}  // namespace detail

inline constexpr std::size_t kDefaultMaxVertices = 16;

/// First witness in a fixed search order: three or more parallel arrows;
/// then a Euclidean Q_A with an adjacent source or sink v; then Q_A of type
/// A_n or D_n with a source or sink v joined to A by at least three edges.
/// Subsets are taken by size, then lexicographically by vertex name; v runs
/// in vertex order. None for Dynkin and Euclidean quivers.
inline std::optional<KroneckerWitness> find_kronecker_pair(const Quiver& q,
                                                           std::size_t max_vertices = kDefaultMaxVertices) {
    require_connected_acyclic(q, "find_kronecker_pair");
    if (q.size() > max_vertices)
        throw DomainError("find_kronecker_pair: " + std::to_string(q.size()) + " vertices exceed the search cap of " +
                          std::to_string(max_vertices));
    const std::size_t n = q.size();

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (q.arrow_count(i, j) < 3) continue;
            std::vector<std::size_t> a{j};
            const Adjacency adj = adjacency(q, std::span<const std::size_t>(a), i);
            return detail::make_witness(q, a, i, DimVector::unit(n, j), adj, Construction::ParallelArrows);
        }
    }

    std::vector<std::size_t> by_name(n);
    std::iota(by_name.begin(), by_name.end(), 0);
    std::sort(by_name.begin(), by_name.end(), [&](std::size_t x, std::size_t y) { return q.name(x) < q.name(y); });

    // Local vertex k of subquiver(q, a) is the k-th smallest index in a.
    auto lift = [&](std::vector<std::size_t> a, const DimVector& local) {
        std::sort(a.begin(), a.end());
        DimVector full(n);
        for (std::size_t k = 0; k < a.size(); ++k) full[a[k]] = local[k];
        return full;
    };
    auto in_set = [](const std::vector<std::size_t>& a, std::size_t x) {
        return std::find(a.begin(), a.end(), x) != a.end();
    };

    std::optional<KroneckerWitness> found;
    detail::for_each_subset(by_name, [&](const std::vector<std::size_t>& a) {
        const Quiver sub = subquiver(q, std::span<const std::size_t>(a));
        if (!classify_graph(sub).is_euclidean()) return false;
        for (std::size_t v = 0; v < n; ++v) {
            if (in_set(a, v)) continue;
            const Adjacency adj = adjacency(q, std::span<const std::size_t>(a), v);
            if (!adj.is_adjacent || !(adj.v_is_source_in_union || adj.v_is_sink_in_union)) continue;
            const BigExceptional big = exceptional_big(sub, 3);
            found = detail::make_witness(q, a, v, lift(a, big.r), adj, Construction::EuclideanSubquiver);
            found->delta_multiplier = big.m;
            return true;
        }
        return false;
    });
    if (found) return found;

    detail::for_each_subset(by_name, [&](const std::vector<std::size_t>& a) {
        const Quiver sub = subquiver(q, std::span<const std::size_t>(a));
        const GraphClass c = classify_graph(sub);
        if (!c.is_dynkin() || c.series == Series::E) return false;
        for (std::size_t v = 0; v < n; ++v) {
            if (in_set(a, v)) continue;
            const Adjacency adj = adjacency(q, std::span<const std::size_t>(a), v);
            if (adj.edges() < 3 || !(adj.v_is_source_in_union || adj.v_is_sink_in_union)) continue;
            found = detail::make_witness(q, a, v, lift(a, DimVector::ones(a.size())), adj,
                                         detail::tag_ad_witness(q, a, v));
            return true;
        }
        return false;
    });
    return found;
}

struct WitnessCheck {
    bool ok = true;
    std::vector<std::string> reasons;
};

/// Recomputes every witness invariant from the quiver alone.
inline WitnessCheck verify_witness(const Quiver& q, const KroneckerWitness& w) {
    WitnessCheck out;
    auto fail = [&](std::string r) {
        out.ok = false;
        out.reasons.push_back(std::move(r));
    };
    const std::size_t n = q.size();
    if (w.v >= n || w.rho.size() != n) {
        fail("witness does not match the quiver");
        return out;
    }
    for (std::size_t a : w.A)
        if (a >= n) {
            fail("witness does not match the quiver");
            return out;
        }
    if (!w.rho.is_nonnegative()) fail("rho has a negative entry");

    std::vector<std::size_t> a_sorted = w.A, support = w.rho.support();
    std::sort(a_sorted.begin(), a_sorted.end());
    if (std::find(a_sorted.begin(), a_sorted.end(), w.v) != a_sorted.end() || w.rho[w.v] != 0)
        fail("support overlap");
    if (support != a_sorted) fail("support of rho differs from A");

    std::vector<std::size_t> rest;
    for (std::size_t a : a_sorted)
        if (a != w.v) rest.push_back(a);
    const Adjacency adj = adjacency(q, std::span<const std::size_t>(rest), w.v);
    if (w.order == PairOrder::RhoFirst && !adj.v_is_sink_in_union) fail("v is not a sink of Q_{A+v}");
    if (w.order == PairOrder::SimpleFirst && !adj.v_is_source_in_union) fail("v is not a source of Q_{A+v}");

    const std::int64_t form = tits_form(q, w.rho);
    if (form != 1) fail("rho is not a real root: <rho,rho> = " + std::to_string(form));

    if (out.reasons.empty() || std::none_of(out.reasons.begin(), out.reasons.end(),
                                            [](const std::string& r) { return r == "support overlap"; })) {
        const auto [e1, e2] = w.pair(n);
        const std::int64_t h = hom1_disjoint(q, e1, e2);
        if (h != w.hom1) fail("hom1 recorded as " + std::to_string(w.hom1) + " but computes to " + std::to_string(h));
        if (w.hom1 < 3) fail("below Kronecker threshold 3");
        // With Hom = 0 both ways, ⟨E₁,E₂⟩ = −dim Hom¹(E₁,E₂) and ⟨E₂,E₁⟩ = −dim Hom¹(E₂,E₁) = 0.
        if (euler_form(q, e1, e2) != -h) fail("<E1,E2> does not equal -dim Hom^1(E1,E2)");
        if (hom1_disjoint(q, e2, e1) != 0 || euler_form(q, e2, e1) != 0) fail("Hom^1(E2,E1) does not vanish");
    }
    return out;
}

inline nlohmann::ordered_json witness_to_json(const Quiver& q, const KroneckerWitness& w) {
    nlohmann::ordered_json out;
    auto a = nlohmann::ordered_json::array();
    for (std::size_t i : w.A) a.push_back(q.name(i));
    out["A"] = std::move(a);
    out["v"] = q.name(w.v);
    nlohmann::ordered_json rho = nlohmann::ordered_json::object();
    for (std::size_t i : w.A) rho[q.name(i)] = w.rho[i];
    out["rho"] = std::move(rho);
    out["order"] = pair_order_name(w.order);
    out["hom1"] = w.hom1;
    std::string c = construction_name(w.construction);
    if (w.construction == Construction::EuclideanSubquiver) c += "(m=" + std::to_string(w.delta_multiplier) + ")";
    out["construction"] = c;
    return out;
}

}  // namespace qdyn
