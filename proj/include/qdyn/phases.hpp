#pragma once

// Phase sets of stability conditions on D^b(kQ) with the standard heart:
// the superset R_{v,Δ₊} = {± (v,r)/|(v,r)|}, the finite / two limit points /
// dense arc trichotomy, and the geometry of the K(l) arc.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdyn/classify.hpp"
#include "qdyn/error.hpp"
#include "qdyn/quiver.hpp"
#include "qdyn/roots.hpp"

namespace qdyn {

using Complex = std::complex<double>;

/// Angular tolerance (radians) below which two phases are the same point.
inline constexpr double kPhaseDedupTolerance = 1e-12;

/// A point e^{iπ·angle} of S¹, angle in (−1, 1].
class PhasePoint {
public:
    PhasePoint() = default;
    explicit PhasePoint(double angle) : angle_(normalize(angle)) {}

    static PhasePoint from_radians(double radians) { return PhasePoint(radians / std::numbers::pi); }
    static PhasePoint of(Complex z) {
        if (z == Complex(0.0, 0.0)) throw DomainError("phase of zero");
        return from_radians(std::atan2(z.imag(), z.real()));
    }

    double angle() const noexcept { return angle_; }
    double radians() const noexcept { return angle_ * std::numbers::pi; }
    PhasePoint negated() const { return PhasePoint(angle_ + 1.0); }

    /// Distance along the circle, in radians.
    double distance(const PhasePoint& o) const {
        double d = std::abs(radians() - o.radians());
        return std::min(d, 2.0 * std::numbers::pi - d);
    }

private:
    static double normalize(double a) {
        a = std::fmod(a, 2.0);
        if (a <= -1.0) a += 2.0;
        if (a > 1.0) a -= 2.0;
        return a;
    }

    double angle_ = 0.0;
};

/// One value r·e^{iπs} of a central charge on a simple object.
struct Charge {
    double r = 1.0;
    double s = 0.5;

    Complex value() const { return std::polar(r, std::numbers::pi * s); }
};

/// Z(s_v) ∈ H = {r e^{iπs} | r > 0, 0 < s ≤ 1} for each vertex, keyed by name.
class CentralCharge {
public:
    CentralCharge() = default;

    void set(const std::string& vertex, Charge c) {
        if (!(c.r > 0.0) || !std::isfinite(c.r))
            throw DomainError("charge of '" + vertex + "': modulus must be positive");
        if (!(c.s > 0.0 && c.s <= 1.0))
            throw DomainError("charge of '" + vertex + "': phase parameter must lie in (0, 1]");
        values_[vertex] = c;
    }

    /// Raw (re, im) input; the closed lower half-plane {im < 0} ∪ [0, ∞) is rejected.
    void set_complex(const std::string& vertex, Complex z) {
        if (z.imag() < 0.0 || (z.imag() == 0.0 && z.real() >= 0.0))
            throw DomainError("charge of '" + vertex + "' is not in the upper half-plane H");
        set(vertex, {std::abs(z), std::atan2(z.imag(), z.real()) / std::numbers::pi});
    }

    const std::map<std::string, Charge>& values() const noexcept { return values_; }

    /// Charges in the quiver's vertex order; names must match exactly.
    std::vector<Complex> vector_for(const Quiver& q) const {
        std::vector<Complex> out;
        for (const auto& name : q.vertices()) {
            auto it = values_.find(name);
            if (it == values_.end()) throw DomainError("no charge given for vertex '" + name + "'");
            out.push_back(it->second.value());
        }
        for (const auto& [name, c] : values_)
            if (!q.find(name)) throw DomainError("charge given for unknown vertex '" + name + "'");
        return out;
    }

private:
    std::map<std::string, Charge> values_;
};

/// (v, r) = Σ r_i Z(s_i).
inline Complex pair_charge(const std::vector<Complex>& z, const DimVector& r) {
    if (z.size() != r.size()) throw DomainError("charge vector does not match the dimension vector");
    Complex sum(0.0, 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) sum += static_cast<double>(r[i]) * z[i];
    return sum;
}

/// Sort by angle and merge points closer than kPhaseDedupTolerance,
/// including across the cut at angle ±1.
inline std::vector<PhasePoint> dedup_phases(std::vector<PhasePoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const PhasePoint& a, const PhasePoint& b) { return a.angle() < b.angle(); });
    std::vector<PhasePoint> out;
    for (const auto& p : pts)
        if (out.empty() || p.radians() - out.back().radians() > kPhaseDedupTolerance) out.push_back(p);
    if (out.size() > 1 && out.front().distance(out.back()) <= kPhaseDedupTolerance) out.erase(out.begin());
    return out;
}

namespace detail {

inline GraphClass require_phase_family(const Quiver& q, std::string_view op) {
    require_connected_acyclic(q, op);
    const GraphClass c = classify_graph(q);
    if (c.is_wild())
        throw DomainError(std::string(op) + ": wild quiver; no description of the phase set is available");
    return c;
}

}  // namespace detail

/// R_{v,Δ₊} over the roots within `depth`, with z the charges in vertex order.
/// Roots with (v, r) = 0 contribute nothing.
inline std::vector<PhasePoint> phase_superset(const Quiver& q, const std::vector<Complex>& z, int depth) {
    detail::require_phase_family(q, "phase_superset");
    if (z.size() != q.size()) throw DomainError("phase_superset: charge/vertex mismatch");
    std::vector<PhasePoint> pts;
    for (const auto& root : roots_to_depth(q, depth)) {
        const Complex w = pair_charge(z, root.dims);
        if (w == Complex(0.0, 0.0)) continue;
        const PhasePoint p = PhasePoint::of(w);
        pts.push_back(p);
        pts.push_back(p.negated());
    }
    return dedup_phases(std::move(pts));
}

inline std::vector<PhasePoint> phase_superset(const Quiver& q, const CentralCharge& z, int depth) {
    return phase_superset(q, z.vector_for(q), depth);
}

struct EuclideanLimits {
    bool finite = false;
    std::optional<PhasePoint> limit;  // the other limit point is its negation
};

/// (v, δ) = 0 gives a finite superset; otherwise ±(v,δ)/|(v,δ)| are its limit points.
inline EuclideanLimits euclidean_limits(const Quiver& q, const std::vector<Complex>& z) {
    require_connected_acyclic(q, "euclidean_limits");
    if (!classify_graph(q).is_euclidean()) throw DomainError("euclidean_limits: quiver is not Euclidean");
    if (z.size() != q.size()) throw DomainError("euclidean_limits: charge/vertex mismatch");
    const Complex w = pair_charge(z, null_root(q));
    double scale = 0.0;
    const DimVector delta = null_root(q);
    for (std::size_t i = 0; i < z.size(); ++i) scale += static_cast<double>(delta[i]) * std::abs(z[i]);
    if (std::abs(w) <= 1e-12 * scale) return {true, std::nullopt};
    return {false, PhasePoint::of(w)};
}

inline EuclideanLimits euclidean_limits(const Quiver& q, const CentralCharge& z) {
    return euclidean_limits(q, z.vector_for(q));
}

/// arg(x·z₁ + z₂) for z_i = r_i e^{iφ_i}, written with arccos.
inline double f_function(double r1, double phi1, double r2, double phi2, double x) {
    if (!(0.0 < phi2 && phi2 < phi1 && phi1 <= std::numbers::pi))
        throw DomainError("f_function: requires 0 < phi2 < phi1 <= pi");
    if (!(r1 > 0.0 && r2 > 0.0)) throw DomainError("f_function: moduli must be positive");
    if (!(x >= 0.0)) throw DomainError("f_function: x must be nonnegative");
    if (x == 0.0) return phi2;
    const double num = x * r1 * std::cos(phi1) + r2 * std::cos(phi2);
    const double den = std::sqrt(x * x * r1 * r1 + r2 * r2 + 2.0 * x * r1 * r2 * std::cos(phi1 - phi2));
    return std::acos(std::clamp(num / den, -1.0, 1.0));
}

struct KroneckerArc {
    double u = 0.0;               // radians
    double v = 0.0;               // radians
    std::vector<double> a_seq;    // from φ₂ up to u
    std::vector<double> c_seq;    // from φ₁ down to v
};

/// Real roots of K(l) in the two sequences accumulating at the arc ends, with
/// max(n, m) ≤ depth: (0,1), (1,l), ... and (1,0), (l,1), ...
inline std::pair<std::vector<KroneckerRoot>, std::vector<KroneckerRoot>> kronecker_real_root_sequences(int l, int depth) {
    std::vector<KroneckerRoot> lower, upper;
    for (std::int64_t n = 0, m = 1; std::max(n, m) <= depth;) {
        lower.push_back({n, m, RootKind::Real});
        const std::int64_t next = l * m - n;
        n = m;
        m = next;
    }
    for (std::int64_t n = 1, m = 0; std::max(n, m) <= depth;) {
        upper.push_back({n, m, RootKind::Real});
        const std::int64_t next = l * n - m;
        m = n;
        n = next;
    }
    return {lower, upper};
}

/// Arc exp(i[u, v]) for K(l) with z₁ at the source and z₂ at the sink, and
/// the phases of the real roots converging to its ends.
inline KroneckerArc kronecker_arc(int l, Charge z1, Charge z2, int depth) {
    if (l < 3) throw DomainError("kronecker_arc: l must be at least 3");
    if (depth < 1) throw DomainError("kronecker_arc: depth must be at least 1");
    const double phi1 = std::numbers::pi * z1.s, phi2 = std::numbers::pi * z2.s;
    if (!(phi1 > phi2))
        throw DomainError("kronecker_arc: requires arg Z(s1) > arg Z(s2); the dense-arc description does not apply");
    const double disc = std::sqrt(static_cast<double>(l) * l - 4.0);
    KroneckerArc arc;
    arc.u = f_function(z1.r, phi1, z2.r, phi2, 0.5 * (l - disc));
    arc.v = f_function(z1.r, phi1, z2.r, phi2, 0.5 * (l + disc));
    const Complex a = z1.value(), b = z2.value();
    const auto [lower, upper] = kronecker_real_root_sequences(l, depth);
    for (const auto& r : lower) arc.a_seq.push_back(std::arg(static_cast<double>(r.n) * a + static_cast<double>(r.m) * b));
    for (const auto& r : upper) arc.c_seq.push_back(std::arg(static_cast<double>(r.n) * a + static_cast<double>(r.m) * b));
    return arc;
}

struct PhaseReport {
    struct Finite {
        std::vector<PhasePoint> points;
    };
    struct TwoLimitPoints {
        PhasePoint limit;
        std::vector<PhasePoint> samples;
    };
    struct DenseArc {
        double u = 0.0;  // radians
        double v = 0.0;
        std::vector<double> samples;  // radians, sorted, inside [u, v]
    };

    std::variant<Finite, TwoLimitPoints, DenseArc> verdict;
    int depth = 0;
    std::string note;
};

inline const char* verdict_name(const PhaseReport& r) {
    switch (r.verdict.index()) {
        case 0: return "Finite";
        case 1: return "TwoLimitPoints";
        default: return "DenseArc";
    }
}

/// The superset classification for a Euclidean quiver is stated for
/// R_{v,Δ₊} and is labelled as such in the report.
inline constexpr std::string_view kEuclideanNote = "superset classification";

inline PhaseReport density_verdict(const Quiver& q, const CentralCharge& charge, int depth) {
    const GraphClass c = detail::require_phase_family(q, "density_verdict");
    if (depth < 1) throw DomainError("density_verdict: depth must be at least 1");
    const std::vector<Complex> z = charge.vector_for(q);
    PhaseReport report;
    report.depth = depth;
    if (c.is_dynkin()) {
        report.verdict = PhaseReport::Finite{phase_superset(q, z, depth)};
        return report;
    }
    if (c.is_euclidean()) {
        report.note = std::string(kEuclideanNote);
        const EuclideanLimits lim = euclidean_limits(q, z);
        auto pts = phase_superset(q, z, depth);
        if (lim.finite)
            report.verdict = PhaseReport::Finite{std::move(pts)};
        else
            report.verdict = PhaseReport::TwoLimitPoints{*lim.limit, std::move(pts)};
        return report;
    }
    const auto [s, t] = kronecker_orientation(q);
    const Charge z1 = charge.values().at(q.name(s));
    const Charge z2 = charge.values().at(q.name(t));
    if (!(z1.s > z2.s))
        throw DomainError("density_verdict: K(" + std::to_string(c.kronecker_l) +
                          ") requires arg Z(source) > arg Z(sink); other chambers are not described");
    KroneckerArc arc = kronecker_arc(c.kronecker_l, z1, z2, depth);
    PhaseReport::DenseArc dense{arc.u, arc.v, {}};
    const Complex a = z1.value(), b = z2.value();
    const int l = c.kronecker_l;
    // Imaginary roots; (n, m) and its multiples share a phase, so only coprime pairs are needed.
    for (std::int64_t m = 1; m <= depth; ++m)
        for (std::int64_t n = 1; n <= depth; ++n)
            if (kronecker_form(l, n, m) <= 0 && std::gcd(n, m) == 1)
                dense.samples.push_back(std::arg(static_cast<double>(n) * a + static_cast<double>(m) * b));
    std::sort(dense.samples.begin(), dense.samples.end());
    dense.samples.erase(std::unique(dense.samples.begin(), dense.samples.end(),
                                    [](double x, double y) { return y - x <= kPhaseDedupTolerance; }),
                        dense.samples.end());
    report.verdict = std::move(dense);
    return report;
}

/// Largest gap between consecutive points of {u, samples..., v}; v − u when
/// there is at most one sample.
inline double gap_statistic(const PhaseReport& report) {
    const auto* dense = std::get_if<PhaseReport::DenseArc>(&report.verdict);
    if (!dense) throw DomainError("gap_statistic: report is not a DenseArc verdict");
    if (dense->samples.size() < 2) return dense->v - dense->u;
    std::vector<double> pts{dense->u};
    for (double s : dense->samples)
        if (s > dense->u && s < dense->v) pts.push_back(s);
    pts.push_back(dense->v);
    double gap = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) gap = std::max(gap, pts[i] - pts[i - 1]);
    return gap;
}

/// As above, checking that the report was sampled at `depth`.
inline double gap_statistic(const PhaseReport& report, int depth) {
    if (report.depth != depth)
        throw DomainError("gap_statistic: report was sampled at depth " + std::to_string(report.depth) + ", not " +
                          std::to_string(depth));
    return gap_statistic(report);
}

/// Charge file format: {"charges": {vertex: {"r": float > 0, "s": float in (0,1]}}}.
inline CentralCharge parse_charge(std::string_view text) {
    const nlohmann::json doc = detail::parse_json_text(text);
    if (!doc.is_object() || !doc.contains("charges") || !doc["charges"].is_object())
        throw ParseError("missing charges object", 0, "charges");
    CentralCharge z;
    for (const auto& [name, value] : doc["charges"].items()) {
        const std::string field = "charges." + name;
        if (!value.is_object() || !value.contains("r") || !value.contains("s") || !value["r"].is_number() ||
            !value["s"].is_number())
            throw ParseError("charge must be {\"r\": number, \"s\": number}", 0, field);
        try {
            z.set(name, {value["r"].get<double>(), value["s"].get<double>()});
        } catch (const DomainError& e) {
            throw ParseError(e.what(), 0, field);
        }
    }
    return z;
}

}  // namespace qdyn
