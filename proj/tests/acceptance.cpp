// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdyn/qdyn.hpp"
#include "support/corpus.hpp"

using namespace qdyn;
namespace qt = qdyn::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Quiver k(int l) { return Quiver::numbered(2, std::vector<Arrow>(static_cast<std::size_t>(l), Arrow{0, 1})); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::size_t box_count(const Quiver& q, std::int64_t box) {
    const std::size_t n = q.size();
    std::vector<std::int64_t> r(n, 0);
    std::size_t count = 0;
    while (true) {
        std::size_t i = 0;
        while (i < n && r[i] == box) r[i++] = 0;
        if (i == n) break;
        ++r[i];
        if (qt::tits_oracle(q, r) == 1) ++count;
    }
    return count;
}

Outcome dynkin_root_counts() {
    const std::pair<qt::Diagram, std::size_t> cases[] = {
        {qt::path(2), 3}, {qt::path(3), 6}, {qt::dynkin_d(4), 12},
        {qt::dynkin_e(6), 36}, {qt::dynkin_e(7), 63}, {qt::dynkin_e(8), 120},
    };
    Outcome o;
    for (const auto& [d, expected] : cases) {
        const Quiver q = qt::orient_down(d);
        const std::size_t got = enumerate_dynkin(q).size(), scan = box_count(q, kDynkinRootBox);
        o.detail += d.label + "=" + std::to_string(got) + "/" + std::to_string(scan) + " ";
        o.pass = o.pass && got == expected && scan == expected;
    }
    return o;
}

Outcome coxeter_radius() {
    Outcome o;
    std::vector<qt::Diagram> tame = qt::dynkin_diagrams(8);
    for (auto& d : qt::euclidean_diagrams(8)) tame.push_back(d);
    std::size_t tame_count = 0, wild_count = 0;
    double worst_tame = 0.0, least_wild = INFINITY;
    for (const auto& d : tame)
        for (const Quiver& q : qt::orientations(d)) {
            ++tame_count;
            worst_tame = std::max(worst_tame, std::abs(coxeter_data(q).spectral_radius - 1.0));
        }
    for (const Quiver& q : qt::small_quivers(5, 6)) {
        const GraphClass c = classify_graph(q);
        if (c.is_dynkin() || c.is_euclidean()) continue;
        ++wild_count;
        least_wild = std::min(least_wild, coxeter_data(q).spectral_radius);
    }
    o.pass = worst_tame <= 1e-9 && least_wild > 1.0 + 1e-6;
    o.detail = std::to_string(tame_count) + " tame orientations, max |rho-1| = " + fmt(worst_tame) + "; " +
               std::to_string(wild_count) + " wild quivers, min rho = " + fmt(least_wild);
    return o;
}

Outcome stretch_factor() {
    Outcome o;
    double worst = 0.0;
    for (int m = 3; m <= 10; ++m)
        worst = std::max(worst, std::abs(stretch_factor_kronecker(m) - coxeter_data(k(m)).spectral_radius));
    const double golden = (7.0 + 3.0 * std::sqrt(5.0)) / 2.0;
    const double e3 = std::max(std::abs(stretch_factor_kronecker(3) - golden),
                               std::abs(coxeter_data(k(3)).spectral_radius - golden));
    o.pass = worst <= 1e-9 && e3 <= 1e-9;
    o.detail = "max difference m=3..10 " + fmt(worst) + ", m=3 vs (7+3*sqrt5)/2 " + fmt(e3);
    return o;
}

Outcome growth_rate() {
    const std::pair<std::string, Quiver> cases[] = {
        {"K(3)", k(3)},
        {"1=>2=>3", Quiver::numbered(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}})},
        {"4-vertex", Quiver::numbered(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}})},
        {"star-5", Quiver::numbered(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}})},
    };
    Outcome o;
    for (const auto& [name, q] : cases) {
        const double rho = coxeter_data(q).spectral_radius;
        const double err = std::abs(growth_rate_check(q, 40) - rho);
        o.pass = o.pass && err <= 1e-3;
        o.detail += name + " |err|=" + fmt(err) + " ";
    }
    return o;
}

Outcome coxeter_order() {
    const std::pair<qt::Diagram, int> cases[] = {
        {qt::path(2), 3}, {qt::path(3), 4}, {qt::dynkin_d(4), 6}, {qt::dynkin_e(6), 12}};
    Outcome o;
    std::size_t checked = 0;
    for (const auto& [d, h] : cases)
        for (const Quiver& q : qt::orientations(d)) {
            ++checked;
            const IntMatrix phi = coxeter_data(q).coxeter;
            o.pass = o.pass && matrix_power(phi, h) == IntMatrix::Identity(phi.rows(), phi.cols());
        }
    o.detail = std::to_string(checked) + " orientations";
    return o;
}

// Random matrices for the Gelfand comparison: sizes 1..4, every entry with
// 1..3 terms, exponents in [-2, 2], coefficients in [1, 3], t in {-1, 0, 1}.
std::vector<LaurentMatrix> random_laurent_matrices() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(1, 4), terms(1, 3), exps(-2, 2), coefs(1, 3);
    std::vector<LaurentMatrix> out;
    for (int i = 0; i < 10; ++i) {
        const auto n = static_cast<std::size_t>(size(rng));
        std::vector<LaurentPoly> entries(n * n);
        for (auto& e : entries)
            for (int t = terms(rng); t > 0; --t) e.add_term(exps(rng), coefs(rng));
        out.emplace_back(n, std::move(entries));
    }
    return out;
}

Outcome semisimple_entropy() {
    Outcome o;
    const LaurentMatrix fib{{1, 1}, {1, 0}};
    double fib_err = 0.0;
    for (const auto& [t, h] : entropy_curve(fib, -2.0, 2.0, 41).samples)
        fib_err = std::max(fib_err, std::abs(h.value() - 0.481211825));
    double shift_err = 0.0;
    for (int n = -3; n <= 3; ++n)
        for (const auto& [t, h] : entropy_curve(LaurentMatrix{{z_pow(-n)}}, -2.0, 2.0, 41).samples)
            shift_err = std::max(shift_err, std::abs(h.value() - n * t));
    double gelfand_err = 0.0;
    double power_err = 0.0;
    for (const auto& p : random_laurent_matrices()) {
        for (double t : {-1.0, 0.0, 1.0}) {
            const double h = entropy_at(p, t).value();
            gelfand_err = std::max(gelfand_err, std::abs(h - gelfand_log_iterate(p, t, 200)));
            power_err = std::max(power_err, std::abs(entropy_at(p.power(3), t).value() - 3.0 * h));
        }
    }
    o.pass = fib_err <= 1e-9 && shift_err <= 1e-12 && gelfand_err <= 1e-3 && power_err <= 1e-9;
    o.detail = "fibonacci " + fmt(fib_err) + ", shift " + fmt(shift_err) + ", gelfand(200) " + fmt(gelfand_err) +
               ", power rule " + fmt(power_err);
    return o;
}

Outcome spectral_residual() {
    const LaurentMatrix examples[] = {LaurentMatrix{{1, 1}, {1, 0}}, LaurentMatrix{{z_pow(-2)}},
                                      LaurentMatrix{{z_pow(1) + z_pow(-1)}}};
    Outcome o;
    double worst = 0.0;
    for (const auto& p : examples) {
        const SpectralCurve c = spectral_curve_poly(p);
        for (const auto& [t, h] : entropy_curve(p, -2.0, 2.0, 20).samples)
            worst = std::max(worst, c.relative_residual(std::exp(-t), std::exp(h.value())));
    }
    o.pass = worst < 1e-6;
    o.detail = "max relative residual " + fmt(worst);
    return o;
}

Outcome phase_classification() {
    constexpr double pi = std::numbers::pi;
    Outcome o;
    CentralCharge a3z;
    a3z.set("1", {1.0, 0.9});
    a3z.set("2", {1.0, 0.5});
    a3z.set("3", {1.0, 0.2});
    const PhaseReport a3 = density_verdict(Quiver::numbered(3, {{0, 1}, {1, 2}}), a3z, 50);
    const auto* fin = std::get_if<PhaseReport::Finite>(&a3.verdict);
    const bool a3_ok = fin && fin->points.size() <= 12;

    CentralCharge k2z;
    k2z.set("1", {1.0, 0.75});
    k2z.set("2", {1.0, 0.25});
    const PhaseReport k2 = density_verdict(k(2), k2z, 50);
    const auto* two = std::get_if<PhaseReport::TwoLimitPoints>(&k2.verdict);
    const Complex w = std::polar(1.0, 0.75 * pi) + std::polar(1.0, 0.25 * pi);
    const double k2_err = two ? two->limit.distance(PhasePoint::from_radians(std::atan2(w.imag(), w.real()))) : 1.0;

    CentralCharge k3z;
    k3z.set("1", {1.0, 2.0 / 3.0});
    k3z.set("2", {1.0, 1.0 / 3.0});
    const PhaseReport r100 = density_verdict(k(3), k3z, 100);
    const PhaseReport r1000 = density_verdict(k(3), k3z, 1000);
    const auto* arc = std::get_if<PhaseReport::DenseArc>(&r1000.verdict);
    const bool arc_ok = arc && std::abs(arc->u - 1.318116) <= 1e-5 && std::abs(arc->v - 1.823477) <= 1e-5;
    const double g100 = gap_statistic(r100, 100), g1000 = gap_statistic(r1000, 1000);

    o.pass = a3_ok && k2_err <= 1e-10 && arc_ok && g1000 < 0.01 && g1000 <= g100;
    o.detail = std::string("A_3 ") + verdict_name(a3) + " " + std::to_string(fin ? fin->points.size() : 0) +
               " points; K(2) " + verdict_name(k2) + " limit err " + fmt(k2_err) + "; K(3) " + verdict_name(r1000) +
               (arc ? " u=" + std::to_string(arc->u) + " v=" + std::to_string(arc->v) : std::string()) + " gap(100)=" +
               fmt(g100) + " gap(1000)=" + fmt(g1000);
    return o;
}

Outcome kronecker_pairs() {
    Outcome o;
    std::vector<qt::Diagram> tame = qt::dynkin_diagrams(9);
    for (auto& d : qt::euclidean_diagrams(9)) tame.push_back(d);
    std::size_t none_count = 0, false_witness = 0;
    for (const auto& d : tame)
        for (const Quiver& q : qt::orientations(d)) {
            ++none_count;
            if (find_kronecker_pair(q)) ++false_witness;
        }
    std::size_t wild = 0, bad = 0;
    for (const Quiver& q : qt::small_quivers(5, 6)) {
        const GraphClass c = classify_graph(q);
        if (c.is_dynkin() || c.is_euclidean()) continue;
        ++wild;
        const auto w = find_kronecker_pair(q);
        if (!w || !verify_witness(q, *w).ok) ++bad;
    }
    const Quiver shapes[] = {
        parse_quiver(R"({"vertices":["v","a1","a2"],"arrows":[["v","a1"],["v","a1"],["v","a2"],["a2","a1"]]})"),
        parse_quiver(R"({"vertices":["v","a1","a2","a3"],
            "arrows":[["a1","a2"],["a3","a2"],["v","a1"],["v","a2"],["v","a3"]]})"),
        parse_quiver(R"({"vertices":["v","a1","a2","a3","a4"],
            "arrows":[["a1","a4"],["a2","a4"],["a3","a4"],["v","a1"],["v","a2"],["v","a3"]]})"),
    };
    bool shapes_ok = true;
    for (const Quiver& q : shapes) {
        const auto w = find_kronecker_pair(q);
        shapes_ok = shapes_ok && w && verify_witness(q, *w).ok && w->hom1 == 3;
    }
    bool kron_ok = true;
    for (int l : {3, 5, 7}) {
        const auto w = find_kronecker_pair(k(l));
        kron_ok = kron_ok && w && verify_witness(k(l), *w).ok && w->hom1 == l;
    }
    o.pass = false_witness == 0 && bad == 0 && shapes_ok && kron_ok;
    o.detail = std::to_string(none_count) + " tame orientations (" + std::to_string(false_witness) +
               " with a witness); " + std::to_string(wild) + " wild quivers (" + std::to_string(bad) +
               " failing); S1-S3 " + (shapes_ok ? "ok" : "bad") + "; K(3,5,7) " + (kron_ok ? "ok" : "bad");
    return o;
}

Outcome exact_identities() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
        const Quiver q = qt::random_acyclic(rng, n, static_cast<std::size_t>(trial % 7));
        DimVector a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto side = rng() % 3;
            const auto value = static_cast<std::int64_t>(1 + rng() % 5);
            if (side == 0) a[i] = value;
            if (side == 1) b[i] = value;
        }
        if (hom1_disjoint(q, a, b) != -euler_form(q, a, b)) ++mismatches;
    }
    std::size_t outputs = 0, bad = 0;
    for (const auto& d : qt::euclidean_diagrams(9))
        for (const Quiver& q : qt::orientations(d)) {
            const DimVector delta = null_root(q);
            for (std::int64_t n = 1; n <= 5; ++n) {
                ++outputs;
                const DimVector r = exceptional_dim_big(q, n);
                if (euler_form(q, r, r) != 1 || euler_form(q, r, delta) == 0) ++bad;
            }
        }
    o.pass = mismatches == 0 && bad == 0;
    o.detail = "500 pairs, " + std::to_string(mismatches) + " mismatches; " + std::to_string(outputs) +
               " exceptional vectors, " + std::to_string(bad) + " failing";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"Dynkin root counts", dynkin_root_counts},
        {"Coxeter spectral radius", coxeter_radius},
        {"Stretch-factor identity", stretch_factor},
        {"Growth-rate oracle", growth_rate},
        {"Dynkin Coxeter order", coxeter_order},
        {"Semisimple entropy", semisimple_entropy},
        {"Spectral-curve residual", spectral_residual},
        {"Phase classification", phase_classification},
        {"Kronecker pairs", kronecker_pairs},
        {"Exact identities", exact_identities},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    }
    std::printf("%d of %d criteria passed\n", index - 1 - failures, index - 1);
    return failures == 0 ? 0 : 1;
}
