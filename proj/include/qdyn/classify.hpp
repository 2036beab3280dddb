#pragma once

// Classification of the underlying graph Γ(Q) against the simply laced
// Dynkin and extended Dynkin catalogues and the generalized Kronecker quivers.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qdyn/quiver.hpp"

namespace qdyn {

enum class Family { Dynkin, Euclidean, Kronecker, Wild };
enum class Series { None, A, D, E };

struct GraphClass {
    Family family = Family::Wild;
    Series series = Series::None;
    int rank = 0;         // subscript of A_n, D_n, E_n (also for the extended diagrams)
    int kronecker_l = 0;  // number of parallel arrows, Kronecker family only
    bool acyclic = true;
    bool connected = true;

    bool is_dynkin() const { return family == Family::Dynkin; }
    bool is_euclidean() const { return family == Family::Euclidean; }
    bool is_kronecker() const { return family == Family::Kronecker; }
    bool is_wild() const { return family == Family::Wild; }

    /// "A_3", "~D_4", "K(3)" or "wild".
    std::string label() const {
        switch (family) {
            case Family::Kronecker: return "K(" + std::to_string(kronecker_l) + ")";
            case Family::Wild: return "wild";
            default: break;
        }
        std::string s = family == Family::Euclidean ? "~" : "";
        s += series == Series::A ? "A" : series == Series::D ? "D" : "E";
        return s + "_" + std::to_string(rank);
    }

    friend bool operator==(const GraphClass&, const GraphClass&) = default;
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Dynkin: return "Dynkin";
        case Family::Euclidean: return "Euclidean";
        case Family::Kronecker: return "Kronecker";
        case Family::Wild: return "Wild";
    }
    return "Wild";
}

namespace detail {

inline GraphClass make_class(Family f, Series s, int rank) {
    GraphClass c;
    c.family = f;
    c.series = s;
    c.rank = rank;
    return c;
}

// Classify a connected simple tree by its branch structure.
inline GraphClass classify_tree(const Quiver& q, const std::vector<int>& degree) {
    const std::size_t n = q.size();
    std::vector<std::size_t> branch;
    for (std::size_t i = 0; i < n; ++i) {
        if (degree[i] > 4) return {};
        if (degree[i] >= 3) branch.push_back(i);
    }
    if (branch.empty()) return make_class(Family::Dynkin, Series::A, static_cast<int>(n));

    auto neighbours = [&](std::size_t i) {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n; ++j)
            if (q.edge_count(i, j) > 0) out.push_back(j);
        return out;
    };

    if (branch.size() == 1) {
        const std::size_t centre = branch.front();
        std::vector<int> arms;
        for (std::size_t start : neighbours(centre)) {
            int len = 1;
            std::size_t prev = centre, cur = start;
            while (degree[cur] == 2) {
                for (std::size_t next : neighbours(cur)) {
                    if (next != prev) {
                        prev = cur;
                        cur = next;
                        break;
                    }
                }
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms.size() == 4) {
            if (arms == std::vector<int>{1, 1, 1, 1}) return make_class(Family::Euclidean, Series::D, 4);
            return {};
        }
        const int p = arms[0], r = arms[1], s = arms[2];
        if (p == 1 && r == 1) return make_class(Family::Dynkin, Series::D, static_cast<int>(n));
        if (p == 1 && r == 2 && s >= 2 && s <= 4) return make_class(Family::Dynkin, Series::E, static_cast<int>(n));
        if (p == 2 && r == 2 && s == 2) return make_class(Family::Euclidean, Series::E, 6);
        if (p == 1 && r == 3 && s == 3) return make_class(Family::Euclidean, Series::E, 7);
        if (p == 1 && r == 2 && s == 5) return make_class(Family::Euclidean, Series::E, 8);
        return {};
    }

    if (branch.size() == 2 && degree[branch[0]] == 3 && degree[branch[1]] == 3) {
        for (std::size_t b : branch) {
            int leaves = 0;
            for (std::size_t j : neighbours(b))
                if (degree[j] == 1) ++leaves;
            if (leaves != 2) return {};
        }
        return make_class(Family::Euclidean, Series::D, static_cast<int>(n) - 1);
    }
    return {};
}

}  // namespace detail

/// Tag Γ(Q) by type. Orientation never affects the tag; `acyclic` and
/// `connected` describe the directed quiver. Disconnected input is tagged Wild.
inline GraphClass classify_graph(const Quiver& q) {
    const std::size_t n = q.size();
    GraphClass result;
    const bool acyclic = q.is_acyclic();
    const bool connected = q.is_connected();

    auto finish = [&](GraphClass c) {
        c.acyclic = acyclic;
        c.connected = connected;
        return c;
    };

    if (!connected) return finish({});
    if (n == 1) return finish(detail::make_class(Family::Dynkin, Series::A, 1));
    if (n == 2) {
        const int l = q.edge_count(0, 1);
        if (l == 1) return finish(detail::make_class(Family::Dynkin, Series::A, 2));
        if (l == 2) return finish(detail::make_class(Family::Euclidean, Series::A, 1));
        GraphClass k;
        k.family = Family::Kronecker;
        k.kronecker_l = l;
        return finish(k);
    }

    std::vector<int> degree(n, 0);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int e = q.edge_count(i, j);
            if (e > 1) return finish({});  // a double edge inside a larger connected graph
            if (e == 1) {
                ++degree[i];
                ++degree[j];
                ++edges;
            }
        }
    }
    if (edges == n) {
        const bool cycle = std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
        if (cycle) return finish(detail::make_class(Family::Euclidean, Series::A, static_cast<int>(n) - 1));
        return finish({});
    }
    if (edges + 1 != n) return finish({});
    return finish(detail::classify_tree(q, degree));
}

/// Coxeter number h of a Dynkin type.
inline int coxeter_number(const GraphClass& c) {
    if (!c.is_dynkin()) throw DomainError("Coxeter number is defined for Dynkin types only");
    switch (c.series) {
        case Series::A: return c.rank + 1;
        case Series::D: return 2 * c.rank - 2;
        case Series::E: return c.rank == 6 ? 12 : c.rank == 7 ? 18 : 30;
        default: break;
    }
    throw DomainError("unknown Dynkin series");
}

inline nlohmann::ordered_json class_to_json(const GraphClass& c) {
    nlohmann::ordered_json out;
    out["tag"] = family_name(c.family);
    if (c.is_kronecker()) {
        out["l"] = c.kronecker_l;
    } else if (!c.is_wild()) {
        out["type"] = c.label();
    }
    out["acyclic"] = c.acyclic;
    out["connected"] = c.connected;
    return out;
}

}  // namespace qdyn
