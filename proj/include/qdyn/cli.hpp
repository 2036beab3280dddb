#pragma once

// The qdyn command-line front end. run() parses arguments, reads inputs,
// writes JSON to `out` and diagnostics to `err`, and returns the exit code:
// 0 on success, 1 on input or domain errors, 2 on usage errors.

#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdyn/classify.hpp"
#include "qdyn/coxeter.hpp"
#include "qdyn/error.hpp"
#include "qdyn/io.hpp"
#include "qdyn/kronecker_pairs.hpp"
#include "qdyn/phases.hpp"
#include "qdyn/quiver.hpp"
#include "qdyn/roots.hpp"
#include "qdyn/semisimple.hpp"

namespace qdyn::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kQuiverFormat =
    "Quiver file: {\"vertices\": [\"1\", \"2\"], \"arrows\": [[\"1\", \"2\"], ...]}; parallel arrows are repeated "
    "pairs.";
inline constexpr const char* kChargeFormat =
    "Charge file: {\"charges\": {vertex: {\"r\": modulus > 0, \"s\": phase in (0,1]}}} meaning Z = r*exp(i*pi*s).";
inline constexpr const char* kMatrixFormat =
    "Matrix file: {\"size\": n, \"entries\": [[{\"exp\": e, \"coef\": c}, ...], ...]} with n*n term lists in "
    "row-major order (n rows of n lists are also accepted); coefficients are nonnegative and z is evaluated at "
    "exp(-t).";

inline Json big_int_json(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Json phases_json(const std::vector<PhasePoint>& pts) {
    auto arr = Json::array();
    for (const auto& p : pts) arr.push_back(io::round_sig(p.angle()));
    return arr;
}

inline Json report_json(const Quiver& q, const PhaseReport& r) {
    Json out;
    out["type"] = classify_graph(q).label();
    out["verdict"] = verdict_name(r);
    out["depth"] = r.depth;
    if (const auto* f = std::get_if<PhaseReport::Finite>(&r.verdict)) {
        out["count"] = f->points.size();
        out["points"] = phases_json(f->points);
    } else if (const auto* t = std::get_if<PhaseReport::TwoLimitPoints>(&r.verdict)) {
        out["limit"] = io::round_sig(t->limit.angle());
        out["limit_negated"] = io::round_sig(t->limit.negated().angle());
        out["count"] = t->samples.size();
        out["samples"] = phases_json(t->samples);
    } else {
        const auto& d = std::get<PhaseReport::DenseArc>(r.verdict);
        out["u"] = io::round_sig(d.u);
        out["v"] = io::round_sig(d.v);
        out["gap"] = io::round_sig(gap_statistic(r));
        out["count"] = d.samples.size();
        auto arr = Json::array();
        for (double s : d.samples) arr.push_back(io::round_sig(s));
        out["samples"] = std::move(arr);
    }
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

inline std::string report_svg(const PhaseReport& r) {
    if (const auto* f = std::get_if<PhaseReport::Finite>(&r.verdict)) return io::phase_svg(f->points);
    if (const auto* t = std::get_if<PhaseReport::TwoLimitPoints>(&r.verdict)) return io::phase_svg(t->samples);
    const auto& d = std::get<PhaseReport::DenseArc>(r.verdict);
    std::vector<PhasePoint> pts;
    for (double s : d.samples) {
        pts.push_back(PhasePoint::from_radians(s));
        pts.push_back(PhasePoint::from_radians(s).negated());
    }
    return io::phase_svg(pts, d.u, d.v);
}

inline Json coxeter_json(const Quiver& q) {
    const GraphClass c = classify_graph(q);
    const CoxeterData d = coxeter_data(q);
    const EntropyLine line = serre_entropy(q);
    Json out;
    out["euler"] = detail::int_matrix_json(d.euler.matrix);
    out["serre"] = detail::int_matrix_json(d.serre);
    out["coxeter"] = detail::int_matrix_json(d.coxeter);
    out["rho"] = io::round_sig(d.spectral_radius);
    out["type"] = c.label();
    out["coxeter_inverse"] = detail::int_matrix_json(d.coxeter_inverse);
    auto poly = Json::array();
    for (const auto& coef : characteristic_polynomial(d.coxeter)) poly.push_back(big_int_json(coef));
    out["characteristic_polynomial"] = std::move(poly);
    if (c.is_dynkin()) out["coxeter_number"] = coxeter_number(c);
    Json entropy;
    entropy["slope"] = std::to_string(line.slope.num) + "/" + std::to_string(line.slope.den);
    entropy["intercept"] = io::round_sig(line.intercept);
    out["serre_entropy"] = std::move(entropy);
    return out;
}

inline Json roots_json(const Quiver& q, int depth) {
    const GraphClass c = classify_graph(q);
    Json out;
    out["type"] = c.label();
    out["depth"] = depth;
    if (c.is_euclidean()) out["delta"] = dims_to_json(q, null_root(q));
    auto arr = Json::array();
    for (const auto& r : roots_to_depth(q, depth)) {
        Json item;
        item["dims"] = dims_to_json(q, r.dims);
        item["class"] = root_kind_name(r.kind);
        item["form"] = tits_form(q, r.dims);
        arr.push_back(std::move(item));
    }
    out["count"] = arr.size();
    out["roots"] = std::move(arr);
    return out;
}

inline std::string roots_csv(const Quiver& q, int depth) {
    std::string out;
    for (const auto& name : q.vertices()) out += name + ",";
    out += "class\n";
    for (const auto& r : roots_to_depth(q, depth)) {
        for (std::size_t i = 0; i < q.size(); ++i) out += std::to_string(r.dims[i]) + ",";
        out += std::string(root_kind_name(r.kind)) + "\n";
    }
    return out;
}

inline Json curve_poly_json(const SpectralCurve& curve) {
    Json out;
    out["polynomial"] = curve.to_string();
    out["clearing_exponent"] = curve.clearing_exponent;
    auto terms = Json::array();
    for (const auto& [k, c] : curve.terms) {
        Json t;
        t["x"] = k.first;
        t["lambda"] = k.second;
        t["coef"] = c;
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Entropy, phases and Kronecker pairs for quiver derived categories.", "qdyn"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string input, charge_path, svg_path, csv_path, format = "json";
    int depth = 0;
    double t_min = 0.0, t_max = 0.0;
    int samples = 0;
    bool curve_poly = false;
    std::size_t max_vertices = kDefaultMaxVertices;

    auto add_quiver = [&](CLI::App* sub) {
        sub->add_option("quiver", input, "Quiver JSON file")->required()->check(CLI::ExistingFile);
        sub->footer(kQuiverFormat);
    };

    auto* classify = app.add_subcommand("classify", "Classify the underlying graph of a quiver");
    add_quiver(classify);

    auto* roots = app.add_subcommand("roots", "List positive roots (Dynkin, Euclidean, K(l))");
    add_quiver(roots);
    roots->add_option("--depth", depth, "Euclidean: beta + n*delta with n <= N; K(l): max(n,m) <= N")
        ->default_val(50)
        ->check(CLI::NonNegativeNumber);
    roots->add_option("--format", format, "Output format")->default_val("json")->check(CLI::IsMember({"json", "csv"}));

    auto* coxeter = app.add_subcommand("coxeter", "Serre and Coxeter matrices, spectral radius, Serre entropy");
    add_quiver(coxeter);

    auto* entropy = app.add_subcommand("entropy-ss", "Entropy curve h_t = log rho(P(exp(-t))) of a matrix functor");
    entropy->add_option("matrix", input, "Laurent matrix JSON file")->required()->check(CLI::ExistingFile);
    entropy->add_option("--t-min", t_min, "Left end of the t grid")->required();
    entropy->add_option("--t-max", t_max, "Right end of the t grid")->required();
    entropy->add_option("--samples", samples, "Number of grid points (>= 2)")->required()->check(CLI::Range(2, 1000000));
    entropy->add_option("--csv", csv_path, "Write columns t,h to this file");
    entropy->add_option("--svg", svg_path, "Write a line plot to this file");
    entropy->add_flag("--curve-poly", curve_poly, "Include the cleared spectral curve det(lambda*I - P(x))");
    entropy->footer(kMatrixFormat);

    auto add_phase_options = [&](CLI::App* sub) {
        add_quiver(sub);
        sub->add_option("--charge", charge_path, "Central charge JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--depth", depth, "Root enumeration depth")->default_val(200)->check(CLI::PositiveNumber);
        sub->add_option("--svg", svg_path, "Write a unit-circle plot to this file");
        sub->footer(std::string(kQuiverFormat) + "\n" + kChargeFormat);
    };
    auto* phases = app.add_subcommand("phases", "Phase superset R_{v,Delta+} on the unit circle");
    add_phase_options(phases);
    auto* density = app.add_subcommand("density", "Finite / two limit points / dense arc verdict");
    add_phase_options(density);

    auto* kronecker = app.add_subcommand("kronecker", "Search for a Kronecker pair witness");
    add_quiver(kronecker);
    kronecker->add_option("--max-vertices", max_vertices, "Refuse quivers with more vertices")
        ->default_val(kDefaultMaxVertices)
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (entropy->parsed() && !(t_min < t_max)) {
        err << "qdyn: --t-min must be less than --t-max\n";
        return 2;
    }

    try {
        const std::string text = io::read_file(input);
        Json result;
        if (entropy->parsed()) {
            const LaurentMatrix p = parse_laurent_matrix(text);
            const EntropyCurve curve = entropy_curve(p, t_min, t_max, samples);
            result["size"] = p.size();
            result["t_min"] = io::round_sig(t_min);
            result["t_max"] = io::round_sig(t_max);
            result["samples"] = samples;
            auto arr = Json::array();
            for (const auto& [t, h] : curve.samples) {
                Json item;
                item["t"] = io::round_sig(t);
                item["h"] = io::entropy_json(h);
                arr.push_back(std::move(item));
            }
            result["curve"] = std::move(arr);
            if (curve_poly) result["spectral_curve"] = curve_poly_json(spectral_curve_poly(p));
            if (!csv_path.empty()) io::write_file(csv_path, io::entropy_csv(curve));
            if (!svg_path.empty()) io::write_file(svg_path, io::entropy_svg(curve));
        } else {
            const Quiver q = parse_quiver(text);
            if (classify->parsed()) {
                result = class_to_json(classify_graph(q));
            } else if (roots->parsed()) {
                if (format == "csv") {
                    out << roots_csv(q, depth);
                    return 0;
                }
                result = roots_json(q, depth);
            } else if (coxeter->parsed()) {
                result = coxeter_json(q);
            } else if (phases->parsed()) {
                const CentralCharge z = parse_charge(io::read_file(charge_path));
                const auto pts = phase_superset(q, z, depth);
                result["type"] = classify_graph(q).label();
                result["depth"] = depth;
                result["count"] = pts.size();
                result["points"] = phases_json(pts);
                if (!svg_path.empty()) io::write_file(svg_path, io::phase_svg(pts));
            } else if (density->parsed()) {
                const CentralCharge z = parse_charge(io::read_file(charge_path));
                const PhaseReport report = density_verdict(q, z, depth);
                result = report_json(q, report);
                if (!svg_path.empty()) io::write_file(svg_path, report_svg(report));
            } else if (kronecker->parsed()) {
                const auto w = find_kronecker_pair(q, max_vertices);
                result["witness"] = w ? witness_to_json(q, *w) : Json(nullptr);
            }
        }
        out << result.dump() << "\n";
        return 0;
    } catch (const Error& e) {
        err << "qdyn: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qdyn::cli
