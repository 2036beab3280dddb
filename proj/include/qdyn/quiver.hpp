#pragma once

// Quiver data model: vertices, arrows, dimension vectors and the Euler form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qdyn/error.hpp"

namespace qdyn {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct Arrow {
    std::size_t source;
    std::size_t target;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Loop-free directed multigraph with named vertices.
///
/// Vertex order is the order given at construction; every vector or matrix
/// indexed by vertices in this library uses that order. Parallel arrows are
/// separate entries of arrows().
class Quiver {
public:
    Quiver() = default;

    Quiver(std::vector<std::string> vertices, std::span<const std::pair<std::string, std::string>> arrows)
        : vertices_(std::move(vertices)) {
        index_vertices();
        arrows_.reserve(arrows.size());
        for (std::size_t k = 0; k < arrows.size(); ++k) {
            const auto& [s, t] = arrows[k];
            auto si = find(s);
            auto ti = find(t);
            const std::string field = "arrows[" + std::to_string(k) + "]";
            if (!si) throw ParseError("unknown endpoint '" + s + "'", 0, field);
            if (!ti) throw ParseError("unknown endpoint '" + t + "'", 0, field);
            arrows_.push_back({*si, *ti});
        }
        finish_arrows();
    }

    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        index_vertices();
        for (std::size_t k = 0; k < arrows_.size(); ++k) {
            if (arrows_[k].source >= size() || arrows_[k].target >= size())
                throw ParseError("unknown endpoint", 0, "arrows[" + std::to_string(k) + "]");
        }
        finish_arrows();
    }

    /// Vertices named "1".."n" with the given arrows between 0-based indices.
    static Quiver numbered(std::size_t n, std::vector<Arrow> arrows) {
        std::vector<std::string> names;
        names.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
        return Quiver(std::move(names), std::move(arrows));
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
    const std::string& name(std::size_t i) const { return vertices_.at(i); }

    std::optional<std::size_t> find(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index_of(std::string_view id) const {
        auto i = find(id);
        if (!i) throw DomainError("unknown vertex '" + std::string(id) + "'");
        return *i;
    }

    /// Number of arrows i -> j.
    int arrow_count(std::size_t i, std::size_t j) const { return mult_[i * size() + j]; }

    /// Number of edges of the underlying graph between i and j.
    int edge_count(std::size_t i, std::size_t j) const { return arrow_count(i, j) + arrow_count(j, i); }

    bool is_acyclic() const {
        // Kahn's algorithm on the multiplicity matrix.
        const std::size_t n = size();
        std::vector<int> indeg(n, 0);
        for (const auto& a : arrows_) ++indeg[a.target];
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < n; ++i)
            if (indeg[i] == 0) ready.push_back(i);
        std::size_t seen = 0;
        while (!ready.empty()) {
            std::size_t i = ready.back();
            ready.pop_back();
            ++seen;
            for (std::size_t j = 0; j < n; ++j) {
                int m = arrow_count(i, j);
                if (m == 0) continue;
                indeg[j] -= m;
                if (indeg[j] == 0) ready.push_back(j);
            }
        }
        return seen == n;
    }

    /// Connected components of the underlying graph, each sorted by vertex index.
    std::vector<std::vector<std::size_t>> components() const {
        const std::size_t n = size();
        std::vector<int> comp(n, -1);
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t start = 0; start < n; ++start) {
            if (comp[start] >= 0) continue;
            std::vector<std::size_t> stack{start}, members;
            comp[start] = static_cast<int>(out.size());
            while (!stack.empty()) {
                std::size_t i = stack.back();
                stack.pop_back();
                members.push_back(i);
                for (std::size_t j = 0; j < n; ++j) {
                    if (comp[j] < 0 && edge_count(i, j) > 0) {
                        comp[j] = static_cast<int>(out.size());
                        stack.push_back(j);
                    }
                }
            }
            std::sort(members.begin(), members.end());
            out.push_back(std::move(members));
        }
        return out;
    }

    bool is_connected() const { return size() > 0 && components().size() == 1; }

    /// Same vertices, every arrow reversed at the positions flagged in `flip`.
    Quiver reoriented(const std::vector<bool>& flip) const {
        std::vector<Arrow> arrows = arrows_;
        for (std::size_t k = 0; k < arrows.size() && k < flip.size(); ++k)
            if (flip[k]) std::swap(arrows[k].source, arrows[k].target);
        return Quiver(vertices_, std::move(arrows));
    }

    friend bool operator==(const Quiver& a, const Quiver& b) {
        return a.vertices_ == b.vertices_ && a.mult_ == b.mult_;
    }

private:
    void index_vertices() {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!index_.emplace(vertices_[i], i).second)
                throw ParseError("duplicate vertex '" + vertices_[i] + "'", 0, "vertices[" + std::to_string(i) + "]");
        }
    }

    void finish_arrows() {
        const std::size_t n = size();
        mult_.assign(n * n, 0);
        for (std::size_t k = 0; k < arrows_.size(); ++k) {
            const auto& a = arrows_[k];
            if (a.source == a.target)
                throw ParseError("edge-loop at vertex '" + vertices_[a.source] + "'", 0,
                                 "arrows[" + std::to_string(k) + "]");
            ++mult_[a.source * n + a.target];
        }
    }

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, std::size_t> index_;
    std::vector<int> mult_;
};

/// Nonnegative integer vector indexed by the vertices of a quiver.
class DimVector {
public:
    DimVector() = default;
    explicit DimVector(std::size_t n) : entries_(n, 0) {}
    DimVector(std::initializer_list<std::int64_t> values) : entries_(values) {}
    explicit DimVector(std::vector<std::int64_t> values) : entries_(std::move(values)) {}

    /// The basis vector 1_v.
    static DimVector unit(std::size_t n, std::size_t v) {
        DimVector d(n);
        d[v] = 1;
        return d;
    }

    static DimVector ones(std::size_t n) { return DimVector(std::vector<std::int64_t>(n, 1)); }

    std::size_t size() const noexcept { return entries_.size(); }
    std::int64_t operator[](std::size_t i) const { return entries_[i]; }
    std::int64_t& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<std::int64_t>& entries() const noexcept { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t x) { return x == 0; });
    }
    bool is_nonnegative() const {
        return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t x) { return x >= 0; });
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] != 0) s.push_back(i);
        return s;
    }

    std::int64_t min_entry() const { return *std::min_element(entries_.begin(), entries_.end()); }
    std::int64_t total() const { return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0}); }

    DimVector& operator+=(const DimVector& o) {
        check_size(o);
        for (std::size_t i = 0; i < size(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    DimVector& operator-=(const DimVector& o) {
        check_size(o);
        for (std::size_t i = 0; i < size(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }
    friend DimVector operator+(DimVector a, const DimVector& b) { return a += b; }
    friend DimVector operator-(DimVector a, const DimVector& b) { return a -= b; }
    friend DimVector operator*(std::int64_t k, DimVector a) {
        for (auto& x : a.entries_) x *= k;
        return a;
    }

    friend bool operator==(const DimVector&, const DimVector&) = default;
    friend auto operator<=>(const DimVector&, const DimVector&) = default;

private:
    void check_size(const DimVector& o) const {
        if (o.size() != size()) throw DomainError("dimension vector size mismatch");
    }

    std::vector<std::int64_t> entries_;
};

/// Matrix of the Euler form with entry(i,j) = δ_ij − #arrows(i→j), so that
/// ⟨a,b⟩ = aᵀ·M·b. This is the transpose of the convention in which row i
/// counts arrows ending at i; spectral data is unaffected.
struct EulerMatrix {
    IntMatrix matrix;
};

inline EulerMatrix euler_matrix(const Quiver& q) {
    const auto n = static_cast<Eigen::Index>(q.size());
    IntMatrix m = IntMatrix::Identity(n, n);
    for (const auto& a : q.arrows()) m(static_cast<Eigen::Index>(a.source), static_cast<Eigen::Index>(a.target)) -= 1;
    return {m};
}

/// ⟨a,b⟩_Q = Σ_j a_j b_j − Σ_{arrows s→t} a_s b_t, evaluated arrow by arrow.
inline std::int64_t euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
    if (a.size() != q.size() || b.size() != q.size())
        throw DomainError("dimension vector does not match the quiver's vertex count");
    std::int64_t value = 0;
    for (std::size_t j = 0; j < q.size(); ++j) value += a[j] * b[j];
    for (const auto& arrow : q.arrows()) value -= a[arrow.source] * b[arrow.target];
    return value;
}

/// Tits form ⟨r,r⟩_Q.
inline std::int64_t tits_form(const Quiver& q, const DimVector& r) { return euler_form(q, r, r); }

/// Q_A: the vertices of A (in the ambient order) and every arrow with both ends in A.
inline Quiver subquiver(const Quiver& q, std::span<const std::size_t> subset) {
    if (subset.empty()) throw DomainError("subquiver of an empty vertex set");
    std::vector<std::size_t> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("repeated vertex in subquiver selection");
    std::vector<long> position(q.size(), -1);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] >= q.size()) throw DomainError("unknown vertex index in subquiver selection");
        position[sorted[k]] = static_cast<long>(k);
        names.push_back(q.name(sorted[k]));
    }
    std::vector<Arrow> arrows;
    for (const auto& a : q.arrows()) {
        if (position[a.source] >= 0 && position[a.target] >= 0)
            arrows.push_back({static_cast<std::size_t>(position[a.source]), static_cast<std::size_t>(position[a.target])});
    }
    return Quiver(std::move(names), std::move(arrows));
}

inline Quiver subquiver(const Quiver& q, const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const auto& n : names) idx.push_back(q.index_of(n));
    return subquiver(q, std::span<const std::size_t>(idx));
}

/// Arrow counts between a vertex v and a vertex set A (v ∉ A).
struct Adjacency {
    int edges_in = 0;   // #Arr({v}, A): arrows from v into A
    int edges_out = 0;  // #Arr(A, {v}): arrows from A to v
    bool is_adjacent = false;
    bool v_is_source_in_union = false;
    bool v_is_sink_in_union = false;

    int edges() const { return edges_in + edges_out; }
};

inline Adjacency adjacency(const Quiver& q, std::span<const std::size_t> subset, std::size_t v) {
    if (v >= q.size()) throw DomainError("unknown vertex index");
    Adjacency adj;
    for (std::size_t a : subset) {
        if (a == v) throw DomainError("vertex '" + q.name(v) + "' belongs to the set it is tested against");
        adj.edges_in += q.arrow_count(v, a);
        adj.edges_out += q.arrow_count(a, v);
    }
    adj.is_adjacent = adj.edges() > 0;
    // Inside Q_{A∪{v}} the only arrows at v are those to and from A.
    adj.v_is_source_in_union = adj.edges_out == 0;
    adj.v_is_sink_in_union = adj.edges_in == 0;
    return adj;
}

/// Quivers of the connected components, in order of their smallest vertex.
inline std::vector<Quiver> connected_components(const Quiver& q) {
    std::vector<Quiver> out;
    for (const auto& c : q.components()) out.push_back(subquiver(q, std::span<const std::size_t>(c)));
    return out;
}

inline void require_connected_acyclic(const Quiver& q, std::string_view operation) {
    if (!q.is_connected()) throw DomainError(std::string(operation) + ": quiver is not connected");
    if (!q.is_acyclic()) throw DomainError(std::string(operation) + ": quiver has an oriented cycle");
}

namespace detail {

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

inline nlohmann::json parse_json_text(std::string_view text) {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // byte is 1-based and points just past the offending character.
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        std::string what = e.what();
        auto pos = what.find("syntax error");
        throw ParseError(pos == std::string::npos ? what : what.substr(pos), line_of_offset(text, byte));
    }
}

}  // namespace detail

/// Quiver file format: {"vertices": [string...], "arrows": [[source, target]...]}.
inline Quiver parse_quiver(std::string_view text) {
    const nlohmann::json doc = detail::parse_json_text(text);
    if (!doc.is_object()) throw ParseError("expected a JSON object", 1);
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw ParseError("missing or non-array field", 0, "vertices");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
        const auto& v = doc["vertices"][i];
        if (!v.is_string()) throw ParseError("vertex identifier must be a string", 0, "vertices[" + std::to_string(i) + "]");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> arrows;
    if (doc.contains("arrows")) {
        const auto& arr = doc["arrows"];
        if (!arr.is_array()) throw ParseError("expected an array", 0, "arrows");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const auto& a = arr[k];
            if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
                throw ParseError("arrow must be a [source, target] pair of strings", 0, "arrows[" + std::to_string(k) + "]");
            arrows.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
        }
    }
    return Quiver(std::move(vertices), std::span<const std::pair<std::string, std::string>>(arrows));
}

inline nlohmann::ordered_json quiver_to_json(const Quiver& q) {
    nlohmann::ordered_json out;
    out["vertices"] = q.vertices();
    auto arrows = nlohmann::ordered_json::array();
    for (const auto& a : q.arrows()) arrows.push_back({q.name(a.source), q.name(a.target)});
    out["arrows"] = std::move(arrows);
    return out;
}

inline nlohmann::ordered_json dims_to_json(const Quiver& q, const DimVector& d) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < q.size(); ++i) out[q.name(i)] = d[i];
    return out;
}

}  // namespace qdyn
