#include "argshift/cli.hpp"

#include "argshift/criterion.hpp"
#include "argshift/json_io.hpp"
#include "argshift/pencil.hpp"
#include "argshift/poisson.hpp"
#include "argshift/shiftalg.hpp"
#include "argshift/singular.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace argshift {
namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_finding = 1;
constexpr int exit_input = 2;

struct cli_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string catalog_name;
    std::string a_csv;
    std::string x_csv;
    std::vector<std::string> check_set;
    std::size_t samples = 20;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string format = "json";
    bool verbose = false;
};

LieAlgebra load_algebra(const Options& o) {
    if (!o.catalog_name.empty()) {
        if (!o.input.empty()) throw cli_input_error("--input and --catalog are exclusive");
        return catalog(o.catalog_name);
    }
    if (o.input.empty()) throw cli_input_error("provide --input FILE or --catalog NAME");
    std::stringstream buf;
    if (o.input == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream f(o.input);
        if (!f) throw cli_input_error("cannot open input file '" + o.input + "'");
        buf << f.rdbuf();
    }
    return algebra_from_json(buf.str());
}

RatVec need_point(const std::string& csv, std::size_t dim, const char* flag) {
    if (csv.empty()) throw cli_input_error(std::string("missing required ") + flag);
    RatVec v = parse_csv_rationals(csv);
    if (v.size() != dim)
        throw cli_input_error(std::string(flag) + " has " + std::to_string(v.size()) +
                              " entries but the algebra has dimension " + std::to_string(dim));
    return v;
}

json root_json(const Root& r) {
    json j;
    j["rational"] = r.is_rational;
    if (r.is_rational) {
        j["value"] = to_string(r.value);
    } else {
        j["re"] = r.numeric.real();
        j["im"] = r.numeric.imag();
    }
    return j;
}

json point_json(const RatVec& v) {
    json j = json::array();
    for (const auto& c : v) j.push_back(to_string(c));
    return j;
}

json poly_list_json(const std::vector<MultiPoly>& polys) {
    json j = json::array();
    for (const auto& f : polys) j.push_back(f.to_text());
    return j;
}

void print_text(std::ostream& out, const json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            print_text(out, value, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& value : j)
            print_text(out, value, prefix + "[" + std::to_string(i++) + "]");
        if (j.empty()) out << prefix << " = []\n";
    } else if (j.is_string()) {
        out << prefix << " = " << j.get<std::string>() << "\n";
    } else {
        out << prefix << " = " << j.dump() << "\n";
    }
}

void emit(const Options& o, std::ostream& out, const json& j) {
    if (o.format == "text")
        print_text(out, j, "");
    else
        out << j.dump(2) << "\n";
}

int emit_error(const Options& o, std::ostream& out, std::ostream& err,
               const std::string& kind, const std::string& message,
               const std::vector<std::size_t>& witness = {}) {
    json j;
    j["schema"] = 1;
    j["error"] = {{"kind", kind}, {"message", message}};
    if (!witness.empty()) j["error"]["witness"] = witness;
    emit(o, out, j);
    err << "error (" << kind << "): " << message << "\n";
    return exit_input;
}

std::string kind_name(validation_error::Kind k) {
    switch (k) {
        case validation_error::Kind::Structure: return "structure";
        case validation_error::Kind::Jacobi: return "jacobi";
        case validation_error::Kind::Invariant: return "invariant";
        case validation_error::Kind::Basis: return "basis";
        case validation_error::Kind::Point: return "point";
    }
    return "validation";
}

json verdict_json(const CompletenessVerdict& v) {
    json j;
    j["schema"] = 1;
    j["codim_at_least_two"] = v.codim_at_least_two;
    j["criterion_complete"] = v.criterion_complete;
    j["b2_witness_per_component"] = v.b2_witness_per_component;
    j["direct_complete"] = v.direct_complete;
    j["agreement"] = v.agreement;
    j["low_confidence"] = v.low_confidence;
    j["trdeg"] = v.trdeg;
    j["b_g"] = v.b_g;
    j["per_component"] = json::array();
    for (const auto& c : v.per_component)
        j["per_component"].push_back({{"component", c.component},
                                      {"factor", c.factor_text},
                                      {"sample_count", c.sample_count},
                                      {"subregular_count", c.subregular_count},
                                      {"b2_fraction", c.b2_fraction},
                                      {"dominant_class", to_string(c.dominant_class)},
                                      {"all_subregular_b2", c.all_subregular_b2},
                                      {"mixed_classes", c.mixed_classes},
                                      {"low_confidence", c.low_confidence}});
    return j;
}

json samples_json(const std::vector<SingularSample>& samples) {
    json arr = json::array();
    for (const auto& s : samples) {
        json j;
        j["component"] = s.component;
        j["exact"] = s.exact;
        if (s.exact) {
            j["point"] = point_json(s.point);
        } else {
            json pt = json::array();
            for (Eigen::Index i = 0; i < s.numeric_point.size(); ++i)
                pt.push_back({{"re", s.numeric_point[i].real()},
                              {"im", s.numeric_point[i].imag()}});
            j["point"] = pt;
        }
        j["gradient_norm"] = s.gradient_norm;
        j["corank"] = s.corank;
        j["subregular"] = s.subregular;
        j["class"] = to_string(s.stab_class);
        arr.push_back(j);
    }
    return arr;
}

json pencil_json(const PencilReport& rep) {
    json j;
    j["schema"] = 1;
    j["r"] = rep.r;
    j["dim_core"] = rep.dim_core;
    j["dim_core_perp"] = rep.dim_core_perp;
    j["infinity_exceptional"] = rep.infinity_exceptional;
    j["diagonalizable"] = rep.diagonalizable;
    j["exceptional"] = json::array();
    for (const auto& e : rep.exceptional)
        j["exceptional"].push_back({{"lambda", root_json(e.lambda)},
                                    {"corank", e.corank},
                                    {"eigenspace_dim", e.eigenspace_dim}});
    j["multiplicities"] = json::array();
    for (const auto& [root, mult] : rep.multiplicities)
        j["multiplicities"].push_back({{"lambda", root_json(root)}, {"algebraic", mult}});
    return j;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    json j;
    j["schema"] = 1;
    j["ok"] = true;
    j["dim"] = alg.dim();
    j["name"] = alg.name();
    j["invariants"] = alg.invariants().size();
    emit(o, out, j);
    return exit_ok;
}

int cmd_index(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    const auto cert = index_certificate(alg, Rng(o.seed));
    json j;
    j["schema"] = 1;
    j["index"] = cert.index;
    j["t"] = cert.t;
    j["trials"] = cert.trials;
    emit(o, out, j);
    return exit_ok;
}

int cmd_semiinvariant(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    const auto cert = index_certificate(alg, Rng(o.seed));
    const MultiPoly p_g = fundamental_semiinvariant(alg, cert.t);
    json j;
    j["schema"] = 1;
    j["p_g"] = p_g.to_text();
    j["degree"] = p_g.degree().value_or(0);
    j["t"] = cert.t;
    j["index"] = cert.index;
    j["codim_one"] = p_g.degree().value_or(0) >= 1;
    emit(o, out, j);
    return exit_ok;
}

int cmd_shift(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    const auto cert = index_certificate(alg, Rng(o.seed));
    const ShiftPoint sp = make_shift_point(alg, need_point(o.a_csv, alg.dim(), "--a"), cert);
    const GeneratorSet classical = mf_generators(alg, sp);
    const GeneratorSet extended = extended_generators(alg, sp);
    const DirectCompleteness dc = completeness_direct(alg, extended, cert, o.samples, o.seed);
    json j;
    j["schema"] = 1;
    j["classical"] = poly_list_json(classical.generators);
    j["extended"] = poly_list_json(extended.generators);
    j["trdeg"] = dc.trdeg;
    j["b_g"] = dc.b_g;
    j["complete"] = dc.complete;
    emit(o, out, j);
    return exit_ok;
}

int cmd_commute_check(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    const auto cert = index_certificate(alg, Rng(o.seed));
    const ShiftPoint sp = make_shift_point(alg, need_point(o.a_csv, alg.dim(), "--a"), cert);

    std::vector<MultiPoly> polys;
    std::string set_kind;
    if (o.check_set.empty()) {
        polys = extended_generators(alg, sp).generators;
        set_kind = "extended";
    } else {
        for (const auto& text : o.check_set)
            polys.push_back(MultiPoly::parse(text, alg.dim()));
        set_kind = "user";
    }

    const auto witness = check_pairwise_commute(alg, sp.a, polys);
    json j;
    j["schema"] = 1;
    j["set"] = set_kind;
    j["size"] = polys.size();
    j["ok"] = !witness.has_value();
    if (witness) {
        j["witness"] = {{"first", witness->first},
                        {"second", witness->second},
                        {"frozen", witness->frozen},
                        {"bracket", witness->bracket.to_text()}};
    }
    emit(o, out, j);
    return witness ? exit_finding : exit_ok;
}

int cmd_pencil(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    const RatVec x = need_point(o.x_csv, alg.dim(), "--x");
    const RatVec a = need_point(o.a_csv, alg.dim(), "--a");
    const FormPair pair =
        FormPair::create(structure_matrix_at(alg, x), structure_matrix_at(alg, a));
    const PencilReport rep = build_pencil_report(pair, std::nullopt, o.seed, o.tol);
    emit(o, out, pencil_json(rep));
    return exit_ok;
}

int cmd_completeness(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    const auto cert = index_certificate(alg, Rng(o.seed));
    const ShiftPoint sp = make_shift_point(alg, need_point(o.a_csv, alg.dim(), "--a"), cert);
    const CompletenessVerdict v = decide_completeness(alg, sp, o.samples, o.seed, o.tol);
    json j = verdict_json(v);
    if (o.verbose && !v.codim_at_least_two) {
        const MultiPoly p_g = fundamental_semiinvariant(alg, sp.t);
        j["samples"] = samples_json(sample_singular_points(alg, p_g, o.samples, o.seed, cert, o.tol));
    }
    emit(o, out, j);
    return v.agreement ? exit_ok : exit_finding;
}

int cmd_report(const Options& o, std::ostream& out) {
    const LieAlgebra alg = load_algebra(o);
    const auto cert = index_certificate(alg, Rng(o.seed));
    const MultiPoly p_g = fundamental_semiinvariant(alg, cert.t);
    const ShiftPoint sp = make_shift_point(alg, need_point(o.a_csv, alg.dim(), "--a"), cert);
    const GeneratorSet classical = mf_generators(alg, sp);
    const GeneratorSet extended = extended_generators(alg, sp);
    const auto witness = check_pairwise_commute(alg, sp.a, extended.generators);
    const CompletenessVerdict v = decide_completeness(alg, sp, o.samples, o.seed, o.tol);

    json j;
    j["schema"] = 1;
    j["name"] = alg.name();
    j["dim"] = alg.dim();
    j["index"] = cert.index;
    j["t"] = cert.t;
    j["p_g"] = p_g.to_text();
    j["codim_one"] = p_g.degree().value_or(0) >= 1;
    j["classical"] = poly_list_json(classical.generators);
    j["extended"] = poly_list_json(extended.generators);
    j["commute_ok"] = !witness.has_value();
    if (witness)
        j["witness"] = {{"first", witness->first},
                        {"second", witness->second},
                        {"frozen", witness->frozen},
                        {"bracket", witness->bracket.to_text()}};
    j["trdeg"] = v.trdeg;
    j["b_g"] = v.b_g;
    j["complete"] = v.direct_complete;
    j["verdict"] = verdict_json(v);
    j["verdict"].erase("schema");
    emit(o, out, j);
    if (witness || !v.agreement) return exit_finding;
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"argument-shift commutative families: construction, verification, completeness"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&o](CLI::App* cmd, bool with_a, bool with_x) {
        cmd->add_option("--input", o.input, "algebra JSON file ('-' reads stdin)");
        cmd->add_option("--catalog", o.catalog_name,
                        "built-in algebra: b2, sl2, so3, gl2, abelian(n), heisenberg(n), "
                        "or sums like b2+heisenberg(1)");
        if (with_a)
            cmd->add_option("--a", o.a_csv, "shift point, comma-separated rationals");
        if (with_x)
            cmd->add_option("--x", o.x_csv, "evaluation point, comma-separated rationals");
        cmd->add_option("--samples", o.samples, "sample count for randomized checks")
            ->capture_default_str();
        cmd->add_option("--seed", o.seed, "seed for all randomized choices")
            ->capture_default_str();
        cmd->add_option("--tol", o.tol, "tolerance for numeric fallbacks")
            ->capture_default_str();
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        cmd->add_flag("--verbose", o.verbose, "include per-sample diagnostics");
    };

    auto* validate = app.add_subcommand("validate", "check structure constants and invariants");
    add_common(validate, false, false);
    auto* index = app.add_subcommand("index", "certify the index and generic rank");
    add_common(index, false, false);
    auto* semi = app.add_subcommand("semiinvariant", "fundamental semi-invariant p_g");
    add_common(semi, false, false);
    auto* shift = app.add_subcommand("shift", "classical and extended shift generators");
    add_common(shift, true, false);
    auto* commute = app.add_subcommand("commute-check", "pairwise commutation under both brackets");
    add_common(commute, true, false);
    commute->add_option("--set", o.check_set,
                        "polynomials to check instead of the extended generators");
    auto* pencil = app.add_subcommand("pencil", "spectrum and core of the pencil (A_x, A_a)");
    add_common(pencil, true, true);
    auto* completeness = app.add_subcommand("completeness", "two-way completeness verdict");
    add_common(completeness, true, false);
    auto* report = app.add_subcommand("report", "full pipeline report");
    add_common(report, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (index->parsed()) return cmd_index(o, out);
        if (semi->parsed()) return cmd_semiinvariant(o, out);
        if (shift->parsed()) return cmd_shift(o, out);
        if (commute->parsed()) return cmd_commute_check(o, out);
        if (pencil->parsed()) return cmd_pencil(o, out);
        if (completeness->parsed()) return cmd_completeness(o, out);
        if (report->parsed()) return cmd_report(o, out);
        err << "usage error: no subcommand\n";
        return exit_input;
    } catch (const cli_input_error& e) {
        return emit_error(o, out, err, "input", e.what());
    } catch (const parse_error& e) {
        return emit_error(o, out, err, "parse", e.what());
    } catch (const validation_error& e) {
        return emit_error(o, out, err, kind_name(e.kind()), e.what(), e.witness());
    } catch (const no_roots_found& e) {
        return emit_error(o, out, err, "no_roots_found", e.what());
    } catch (const infinity_in_spectrum& e) {
        return emit_error(o, out, err, "infinity_in_spectrum", e.what());
    } catch (const internal_error& e) {
        return emit_error(o, out, err, "internal", e.what());
    } catch (const std::invalid_argument& e) {
        return emit_error(o, out, err, "input", e.what());
    }
}

} // namespace argshift
