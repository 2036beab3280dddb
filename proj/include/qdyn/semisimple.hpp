#pragma once

// Entropy of endofunctors of semisimple categories D^b(X), given by
// matrices of Poincaré Laurent polynomials P(z): h_t = log ρ(P(e^{−t})).
//
// Exponent convention: the coefficient at z^n counts copies of the generator
// placed in shift [n] under z ↦ e^{−t}, so the shift functor [n] is the 1×1
// matrix z^{−n} and has entropy n·t.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qdyn/error.hpp"
#include "qdyn/linalg.hpp"
#include "qdyn/quiver.hpp"

namespace qdyn {

/// Finite Laurent polynomial with integer coefficients, kept sparse.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(std::int64_t constant) {
        if (constant != 0) terms_[0] = constant;
    }
    static LaurentPoly monomial(int exponent, std::int64_t coef = 1) {
        LaurentPoly p;
        if (coef != 0) p.terms_[exponent] = coef;
        return p;
    }

    const std::map<int, std::int64_t>& terms() const noexcept { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_nonnegative() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second >= 0; });
    }
    int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    std::int64_t coefficient(int exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(int exponent, std::int64_t coef) {
        if (coef == 0) return;
        auto& c = terms_[exponent];
        c += coef;
        if (c == 0) terms_.erase(exponent);
    }

    /// Σ c_n x^n. Non-finite values are reported, not saturated.
    double evaluate(double x) const {
        double sum = 0.0;
        for (const auto& [e, c] : terms_) sum += static_cast<double>(c) * std::pow(x, e);
        return sum;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
        return a;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
        return out;
    }
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    std::map<int, std::int64_t> terms_;
};

/// Square matrix of Laurent polynomials with nonnegative coefficients and at
/// least one nonzero entry.
class LaurentMatrix {
public:
    LaurentMatrix(std::size_t size, std::vector<LaurentPoly> entries) : size_(size), entries_(std::move(entries)) {
        if (size_ == 0) throw DomainError("LaurentMatrix: size must be at least 1");
        if (entries_.size() != size_ * size_) throw DomainError("LaurentMatrix: expected size*size entries");
        bool any = false;
        for (const auto& p : entries_) {
            if (!p.is_nonnegative()) throw DomainError("LaurentMatrix: coefficients must be nonnegative");
            any = any || !p.is_zero();
        }
        if (!any) throw DomainError("LaurentMatrix: all entries are zero");
    }

    LaurentMatrix(std::initializer_list<std::initializer_list<LaurentPoly>> rows)
        : LaurentMatrix(rows.size(), flatten(rows)) {}

    std::size_t size() const noexcept { return size_; }
    const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
    const std::vector<LaurentPoly>& entries() const noexcept { return entries_; }

    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
        if (a.size_ != b.size_) throw DomainError("LaurentMatrix: size mismatch in product");
        const std::size_t n = a.size_;
        std::vector<LaurentPoly> out(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) out[i * n + j] += a(i, k) * b(k, j);
        bool any = std::any_of(out.begin(), out.end(), [](const LaurentPoly& p) { return !p.is_zero(); });
        if (!any) throw DomainError("LaurentMatrix: product is the zero functor");
        return LaurentMatrix(n, std::move(out));
    }

    LaurentMatrix power(int k) const {
        if (k < 1) throw DomainError("LaurentMatrix: power must be at least 1");
        LaurentMatrix out = *this;
        for (int i = 1; i < k; ++i) out = out * *this;
        return out;
    }

private:
    static std::vector<LaurentPoly> flatten(std::initializer_list<std::initializer_list<LaurentPoly>> rows) {
        std::vector<LaurentPoly> out;
        for (const auto& r : rows) {
            if (r.size() != rows.size()) throw DomainError("LaurentMatrix: rows must have length equal to the size");
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }

    std::size_t size_;
    std::vector<LaurentPoly> entries_;
};

/// The variable z as a LaurentPoly, for writing matrices in code.
inline LaurentPoly z_pow(int n, std::int64_t coef = 1) { return LaurentPoly::monomial(n, coef); }

/// Extended real value of an entropy; −∞ is its own state.
class Entropy {
public:
    static Entropy minus_infinity() { return Entropy(); }
    static Entropy finite(double v) {
        Entropy e;
        e.value_ = v;
        return e;
    }
    bool is_minus_infinity() const { return !value_.has_value(); }
    /// The finite value, or −inf.
    double value() const { return value_.value_or(-std::numeric_limits<double>::infinity()); }

private:
    std::optional<double> value_;
};

/// δ_t of a complex of vector spaces with the given cohomology dimensions:
/// Σ_n dims[n]·e^{−nt}.
inline double poincare_complexity(const std::map<int, std::int64_t>& dims, double t) {
    double sum = 0.0;
    for (const auto& [n, d] : dims) {
        if (d < 0) throw DomainError("poincare_complexity: negative dimension");
        sum += static_cast<double>(d) * std::exp(-static_cast<double>(n) * t);
    }
    return sum;
}

/// Entry-wise evaluation at z = e^{−t}.
inline Eigen::MatrixXd evaluate(const LaurentMatrix& p, double t) {
    const auto n = static_cast<Eigen::Index>(p.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double v = 0.0;
            for (const auto& [e, c] : p(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).terms())
                v += static_cast<double>(c) * std::exp(-static_cast<double>(e) * t);
            if (!std::isfinite(v)) throw NumericalError("evaluate: overflow at t = " + std::to_string(t));
            out(i, j) = v;
        }
    }
    return out;
}

namespace detail {

// ρ = 0 for a nonnegative matrix exactly when its support digraph has no cycle.
inline bool support_is_acyclic(const Eigen::MatrixXd& a) {
    std::vector<Arrow> arrows;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0) {
                if (i == j) return false;
                arrows.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
            }
    return Quiver::numbered(static_cast<std::size_t>(a.rows()), std::move(arrows)).is_acyclic();
}

}  // namespace detail

/// h_t = log ρ(P(e^{−t})); −∞ when the evaluated matrix is nilpotent.
inline Entropy entropy_at(const LaurentMatrix& p, double t) {
    const Eigen::MatrixXd a = evaluate(p, t);
    if (detail::support_is_acyclic(a)) return Entropy::minus_infinity();
    return Entropy::finite(std::log(spectral_radius(a)));
}

struct EntropyCurve {
    double t_min = 0.0;
    double t_max = 0.0;
    int count = 0;
    std::vector<std::pair<double, Entropy>> samples;
};

/// Uniform grid of `count` points on [t_min, t_max]. The points are
/// independent, so the loop may be split across threads as is.
inline EntropyCurve entropy_curve(const LaurentMatrix& p, double t_min, double t_max, int count) {
    if (!(t_min < t_max)) throw DomainError("entropy_curve: t_min must be less than t_max");
    if (count < 2) throw DomainError("entropy_curve: at least two samples are required");
    EntropyCurve curve{t_min, t_max, count, {}};
    curve.samples.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double t = k + 1 == count ? t_max : t_min + (t_max - t_min) * k / (count - 1);
        curve.samples.emplace_back(t, entropy_at(p, t));
    }
    return curve;
}

/// log of Gelfand's estimate ‖A^steps‖₂^(1/steps), with A = P(e^{−t}). The
/// power is renormalized by its largest entry at every step and the scale
/// is accumulated in log form, so large ρ or step counts cannot overflow.
inline double gelfand_log_iterate(const LaurentMatrix& p, double t, int steps) {
    if (steps < 1) throw DomainError("gelfand_iterate: steps must be at least 1");
    const Eigen::MatrixXd a = evaluate(p, t);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    double log_scale = 0.0;
    for (int k = 0; k < steps; ++k) {
        power = power * a;
        const double m = power.maxCoeff();
        if (m == 0.0) return -std::numeric_limits<double>::infinity();
        power /= m;
        log_scale += std::log(m);
    }
    const double norm = Eigen::JacobiSVD<Eigen::MatrixXd>(power).singularValues()(0);
    return (log_scale + std::log(norm)) / steps;
}

inline double gelfand_iterate(const LaurentMatrix& p, double t, int steps) {
    return std::exp(gelfand_log_iterate(p, t, steps));
}

/// det(λI − P(x)) multiplied by x^k, k ≥ 0 the least power clearing negative
/// exponents of x. Keys of `terms` are (exponent of x, exponent of λ).
struct SpectralCurve {
    std::map<std::pair<int, int>, std::int64_t> terms;
    int clearing_exponent = 0;

    double evaluate(double x, double lambda) const {
        double s = 0.0;
        for (const auto& [k, c] : terms) s += static_cast<double>(c) * std::pow(x, k.first) * std::pow(lambda, k.second);
        return s;
    }

    /// |p(x, λ)| divided by the sum of the absolute values of its monomials.
    double relative_residual(double x, double lambda) const {
        double s = 0.0, scale = 0.0;
        for (const auto& [k, c] : terms) {
            const double term = static_cast<double>(c) * std::pow(x, k.first) * std::pow(lambda, k.second);
            s += term;
            scale += std::abs(term);
        }
        return scale == 0.0 ? 0.0 : std::abs(s) / scale;
    }

    std::string to_string() const {
        // Highest power of λ first, then highest power of x.
        std::vector<std::pair<std::pair<int, int>, std::int64_t>> sorted(terms.begin(), terms.end());
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            if (a.first.second != b.first.second) return a.first.second > b.first.second;
            return a.first.first > b.first.first;
        });
        std::string out;
        for (const auto& [k, c] : sorted) {
            const std::int64_t mag = c < 0 ? -c : c;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mono;
            auto append = [&mono](const char* var, int e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += var;
                if (e != 1) mono += "^" + std::to_string(e);
            };
            append("lambda", k.second);
            append("x", k.first);
            if (mono.empty()) {
                out += std::to_string(mag);
            } else {
                if (mag != 1) out += std::to_string(mag) + "*";
                out += mono;
            }
        }
        return out.empty() ? "0" : out;
    }
};

inline SpectralCurve spectral_curve_poly(const LaurentMatrix& p) {
    const std::size_t n = p.size();
    std::vector<std::vector<LaurentPoly>> rows(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = p(i, j);
    // Coefficient k multiplies λ^{n−k}.
    const auto coeffs = berkowitz<LaurentPoly>(rows, LaurentPoly(), LaurentPoly(1));
    int min_exp = 0;
    for (const auto& c : coeffs)
        if (!c.is_zero()) min_exp = std::min(min_exp, c.min_exponent());
    SpectralCurve curve;
    curve.clearing_exponent = -min_exp;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (const auto& [e, c] : coeffs[k].terms())
            curve.terms[{e + curve.clearing_exponent, static_cast<int>(n - k)}] += c;
    return curve;
}

namespace detail {

inline LaurentPoly parse_laurent_entry(const nlohmann::json& entry, const std::string& field) {
    if (!entry.is_array()) throw ParseError("entry must be an array of {\"exp\", \"coef\"} terms", 0, field);
    LaurentPoly poly;
    for (std::size_t k = 0; k < entry.size(); ++k) {
        const auto& term = entry[k];
        const std::string tf = field + "[" + std::to_string(k) + "]";
        if (!term.is_object() || !term.contains("exp") || !term.contains("coef") || !term["exp"].is_number_integer() ||
            !term["coef"].is_number_integer())
            throw ParseError("term must be {\"exp\": int, \"coef\": int}", 0, tf);
        const auto coef = term["coef"].get<std::int64_t>();
        if (coef < 0) throw ParseError("coefficient must be nonnegative", 0, tf);
        poly.add_term(term["exp"].get<int>(), coef);
    }
    return poly;
}

}  // namespace detail

/// {"size": n, "entries": [...]} with entries either a flat row-major list of
/// n² term lists or n rows of n term lists.
inline LaurentMatrix parse_laurent_matrix(std::string_view text) {
    const nlohmann::json doc = detail::parse_json_text(text);
    if (!doc.is_object()) throw ParseError("expected a JSON object", 1);
    if (!doc.contains("size") || !doc["size"].is_number_integer() || doc["size"].get<long>() < 1)
        throw ParseError("size must be a positive integer", 0, "size");
    const auto n = static_cast<std::size_t>(doc["size"].get<long>());
    if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError("missing entries array", 0, "entries");
    const auto& entries = doc["entries"];
    std::vector<LaurentPoly> polys;
    // A flat entry is a list of term objects; a row is a list of such lists.
    const bool nested = !entries.empty() && entries[0].is_array() && !entries[0].empty() && entries[0][0].is_array();
    if (nested) {
        if (entries.size() != n) throw ParseError("expected size rows", 0, "entries");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string rf = "entries[" + std::to_string(i) + "]";
            if (!entries[i].is_array() || entries[i].size() != n) throw ParseError("row must have size entries", 0, rf);
            for (std::size_t j = 0; j < n; ++j)
                polys.push_back(detail::parse_laurent_entry(entries[i][j], rf + "[" + std::to_string(j) + "]"));
        }
    } else {
        if (entries.size() != n * n) throw ParseError("expected size*size entries", 0, "entries");
        for (std::size_t k = 0; k < entries.size(); ++k)
            polys.push_back(detail::parse_laurent_entry(entries[k], "entries[" + std::to_string(k) + "]"));
    }
    try {
        return LaurentMatrix(n, std::move(polys));
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 0, "entries");
    }
}

inline nlohmann::ordered_json laurent_matrix_to_json(const LaurentMatrix& p) {
    nlohmann::ordered_json out;
    out["size"] = p.size();
    auto entries = nlohmann::ordered_json::array();
    for (const auto& poly : p.entries()) {
        auto terms = nlohmann::ordered_json::array();
        for (const auto& [e, c] : poly.terms()) {
            nlohmann::ordered_json t;
            t["exp"] = e;
            t["coef"] = c;
            terms.push_back(std::move(t));
        }
        entries.push_back(std::move(terms));
    }
    out["entries"] = std::move(entries);
    return out;
}

}  // namespace qdyn
