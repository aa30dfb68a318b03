// opstar: block C*-algebra orthogonality-preserver toolkit, CLI front end.
//
// Subcommands: check-op, decompose, semigroup, paper, selftest.
// Exit codes: 0 = all requested checks passed, 1 = a check failed
// (numerical verdict), 2 = input error (bad JSON, unknown names, bad flags).

#include "opstar/acceptance.hpp"
#include "opstar/semigroup.hpp"
#include "opstar/serialize.hpp"
#include "opstar/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace opstar;

struct CommonOpts {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::string json_path;

    std::uint64_t resolved_seed() const {
        if (seed) return *seed;
        if (const char* env = std::getenv("OPSTAR_SEED")) {
            try {
                return std::stoull(env);
            } catch (...) {
                throw std::invalid_argument("OPSTAR_SEED is not an integer: " +
                                            std::string(env));
            }
        }
        return 12345;
    }

    Tolerances resolved_tol() const {
        Tolerances t;
        if (tol) {
            t.eq_tol = *tol;
            t.rank_tol = std::min(t.rank_tol, *tol / 10.0);
        }
        t.validate();
        return t;
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void print_header(const std::string& scenario, const CommonOpts& opts) {
    const Tolerances t = opts.resolved_tol();
    std::printf("opstar %s | scenario %s | seed %llu | eq_tol %.1e%s\n", kVersion,
                scenario.c_str(),
                static_cast<unsigned long long>(opts.resolved_seed()), t.eq_tol,
                opts.tol ? " (override)" : "");
}

void print_check(const std::string& name, const std::string& identity, bool pass,
                 double residual, const std::string& witness = "") {
    std::printf("  [%s] %-24s %-46s residual %.3e%s%s\n", pass ? "pass" : "FAIL",
                name.c_str(), identity.c_str(), residual,
                witness.empty() ? "" : "  witness: ", witness.c_str());
}

void maybe_write_json(const CommonOpts& opts, const Json& j) {
    if (!opts.json_path.empty()) write_json_file(opts.json_path, j);
}

AlgebraShape parse_shape(const std::string& csv) {
    std::vector<int> dims;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            dims.push_back(std::stoi(tok));
        } catch (...) {
            throw std::invalid_argument("bad shape token: " + tok);
        }
    }
    return AlgebraShape(dims);
}

std::vector<double> parse_times(const std::string& csv) {
    std::vector<double> ts;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            ts.push_back(std::stod(tok));
        } catch (...) {
            throw std::invalid_argument("bad time token: " + tok);
        }
    }
    return ts;
}

Element random_central_selfadjoint(const AlgebraShape& shape, Rng& rng) {
    Element h = Element::zero(shape);
    for (int b = 0; b < shape.blocks(); ++b)
        h.block(b) =
            (0.6 * rng.normal()) * Matrix::Identity(shape.dims[b], shape.dims[b]);
    return h;
}

Element random_skew(const AlgebraShape& shape, Rng& rng) {
    const Element g = random_sample(shape, SampleKind::generic, rng);
    return scale(0.5, g - adjoint(g));
}

// --------------------------------------------------------------------------
// check-op

int run_check_op(const std::string& input, bool exact, bool randomized, int samples,
                 const CommonOpts& opts) {
    const Tolerances tol = opts.resolved_tol();
    const SuperOp t = superop_from_json(read_json_file(input));
    print_header("check-op " + input, opts);
    Stopwatch sw;
    Json out;
    bool verdict = false;

    if (randomized && !exact) {
        const PropertyReport rep =
            is_op_randomized(t, samples, opts.resolved_seed(), tol);
        print_check("randomized", "a b* = b* a = 0  =>  images orthogonal",
                    rep.verdict, rep.worst_residual, rep.witness);
        verdict = rep.verdict;
        out["check"] = "randomized";
        out["report"] = property_report_to_json(rep);
    } else {
        const Decomposition dec = decompose(t, tol);
        print_check("decompose", "T(x) = h r* S(x), S a triple isomorphism",
                    dec.verdict,
                    dec.residuals.count("factor_iv") ? dec.residuals.at("factor_iv")
                                                     : 0.0,
                    dec.verdict ? "" : dec.note);
        verdict = dec.verdict;
        out["check"] = "exact";
        out["report"] = decomposition_to_json(dec);
    }

    out["scenario"] = "check-op";
    out["seed"] = opts.resolved_seed();
    out["version"] = kVersion;
    out["verdict"] = verdict;
    maybe_write_json(opts, out);
    std::printf("  verdict: %s  (%.1f ms)\n", verdict ? "orthogonality preserving"
                                                      : "not orthogonality preserving",
                sw.ms());
    return verdict ? 0 : 1;
}

// --------------------------------------------------------------------------
// decompose

int run_decompose(const std::string& input, const std::string& out_path,
                  const CommonOpts& opts) {
    const Tolerances tol = opts.resolved_tol();
    const SuperOp t = superop_from_json(read_json_file(input));
    Stopwatch sw;
    const Decomposition dec = decompose(t, tol);
    const Json j = decomposition_to_json(dec);

    if (!out_path.empty()) {
        write_json_file(out_path, j);
        print_header("decompose " + input, opts);
        for (const auto& [name, value] : dec.residuals)
            std::printf("  %-22s %.3e\n", name.c_str(), value);
        std::printf("  verdict: %s%s%s  (%.1f ms); factors written to %s\n",
                    dec.verdict ? "true" : "false", dec.note.empty() ? "" : " — ",
                    dec.note.c_str(), sw.ms(), out_path.c_str());
    } else {
        std::cout << j.dump(2) << "\n";
        if (!dec.verdict && !dec.note.empty())
            std::fprintf(stderr, "reason: %s\n", dec.note.c_str());
    }
    maybe_write_json(opts, j);
    return dec.verdict ? 0 : 1;
}

// --------------------------------------------------------------------------
// semigroup

GeneratorSpec make_generator(const std::string& name, const AlgebraShape& shape,
                             std::uint64_t seed) {
    if (name == "zero") return GeneratorSpec(SuperOp::zero(shape, shape), "zero");
    if (name == "remark35-e") return box_example_generator();
    if (name == "remark35-v") return shift_example_generator();
    Rng rng(seed);
    if (name == "inner")
        return GeneratorSpec(inner_derivation(random_skew(shape, rng)), "inner");
    if (name == "box") {
        const Element a = random_sample(shape, SampleKind::generic, rng);
        return GeneratorSpec(Complex(0, 1) * box_operator(a, a), "box");
    }
    if (name == "wolff")
        return central_symmetric_generator(random_central_selfadjoint(shape, rng),
                                           random_skew(shape, rng));
    // otherwise: a SuperOp JSON file
    const SuperOp r = superop_from_json(read_json_file(name));
    return GeneratorSpec(r, name);
}

int run_semigroup(const std::string& gen_name, const std::string& shape_csv,
                  const std::string& times_csv, const std::string& checks_csv,
                  const CommonOpts& opts) {
    const Tolerances tol = opts.resolved_tol();
    const AlgebraShape shape = parse_shape(shape_csv);

    std::vector<std::string> checks;
    {
        std::stringstream ss(checks_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) checks.push_back(tok);
        for (const auto& c : checks)
            if (c != "law" && c != "cocycles" && c != "pedersen" && c != "wolff" &&
                c != "all")
                throw std::invalid_argument("unknown check: " + c);
        const bool all = std::find(checks.begin(), checks.end(), "all") != checks.end();
        if (all) checks = {"law", "cocycles", "pedersen", "wolff"};
    }

    const GeneratorSpec gen = make_generator(gen_name, shape, opts.resolved_seed());
    const std::vector<double> times =
        times_csv.empty() ? default_time_grid() : default_time_grid(parse_times(times_csv));

    print_header("semigroup " + gen.label, opts);
    Stopwatch sw;
    const SemigroupScan sc = scan(gen, times, tol);
    std::printf("  scanned %zu times on shape %s; decompositions ok: %s\n",
                sc.times.size(), gen.r.dom().str().c_str(),
                sc.all_decomposed() ? "yes" : "no");

    ResidualMap residuals;
    bool verdict = true;

    for (const std::string& c : checks) {
        if (c == "law") {
            const PropertyReport rep = check_semigroup_law(sc);
            print_check("law", "T(t+s) = T(t) T(s)", rep.verdict, rep.worst_residual,
                        rep.verdict ? "" : rep.witness);
            residuals["semigroup_law"] = rep.worst_residual;
            verdict = verdict && rep.verdict;
        } else if (c == "cocycles") {
            const PropertyReport rep = check_cocycles(sc);
            const bool have = rep.residuals.count("h_cocycle") > 0;
            print_check("cocycle h", "h(t+s) = h(t) r(t)* S_t(h(s))",
                        have && rep.residuals.at("h_cocycle") <= tol.eq_tol,
                        have ? rep.residuals.at("h_cocycle") : rep.worst_residual);
            print_check("cocycle r", "r(t+s) = r(t) r(t)* S_t(r(s))",
                        have && rep.residuals.at("r_cocycle") <= tol.eq_tol,
                        have ? rep.residuals.at("r_cocycle") : rep.worst_residual);
            print_check("cocycle S", "S(t+s) = S_t S_s",
                        have && rep.residuals.at("s_cocycle") <= tol.eq_tol,
                        have ? rep.residuals.at("s_cocycle") : rep.worst_residual);
            if (!rep.witness.empty())
                std::printf("      worst pair: %s\n", rep.witness.c_str());
            if (have) {
                residuals["h_cocycle"] = rep.residuals.at("h_cocycle");
                residuals["r_cocycle"] = rep.residuals.at("r_cocycle");
                residuals["s_cocycle"] = rep.residuals.at("s_cocycle");
                residuals["equivalence_agrees"] = rep.residuals.at("equivalence_agrees");
            }
            verdict = verdict && rep.verdict;
        } else if (c == "pedersen") {
            const PedersenReport rep = pedersen_conditions(gen, times, tol);
            if (!rep.isometry_generator) {
                print_check("pedersen", "weights form a group (four conditions)", false,
                            0.0, rep.note);
            } else {
                const auto cond = [](const char* name, const char* identity, bool val,
                                     double res) {
                    std::printf("  [%s] %-24s %-46s residual %.3e\n",
                                val ? "true " : "false", name, identity, res);
                };
                cond("pedersen 1", "r(s) r(t) = r(t+s)", rep.c1, rep.r1);
                cond("pedersen 2", "r(s) = r(t)* S_t(r(s))", rep.c2, rep.r2);
                cond("pedersen 3", "L_r (r* S_t) = (r* S_t) L_r", rep.c3, rep.r3);
                cond("pedersen 4", "d^2(1) = d(1)^2", rep.c4, rep.r4);
                std::printf("      agreement: %s; defect norm %.6e\n",
                            rep.agreement ? "yes" : "NO (checker defect)",
                            rep.defect_norm);
                print_check("pedersen", "the four conditions agree", rep.verdict,
                            rep.defect_norm);
            }
            residuals["pedersen_1"] = rep.r1;
            residuals["pedersen_2"] = rep.r2;
            residuals["pedersen_3"] = rep.r3;
            residuals["pedersen_4"] = rep.r4;
            residuals["pedersen_defect_norm"] = rep.defect_norm;
            verdict = verdict && rep.verdict;
        } else if (c == "wolff") {
            const SymmetricExtract ex = extract_symmetric_form(sc, tol);
            print_check("symmetric form", "T_t = e^{t(L_h + d)}, h_t = e^{th}",
                        ex.report.verdict, ex.report.worst_residual,
                        ex.report.verdict ? "" : ex.report.witness);
            for (const auto& [name, value] : ex.report.residuals)
                residuals["wolff_" + name] = value;
            verdict = verdict && ex.report.verdict;
        }
    }

    std::printf("  verdict: %s  (%.1f ms)\n", verdict ? "pass" : "fail", sw.ms());
    maybe_write_json(opts, scan_to_json(sc, residuals));
    return verdict ? 0 : 1;
}

// --------------------------------------------------------------------------
// paper scenarios

int run_paper(const std::string& name, double t, double s, const CommonOpts& opts) {
    const Tolerances tol = opts.resolved_tol();
    print_header("paper " + name, opts);
    Stopwatch sw;

    if (name == "remark35") {
        const BoxExampleRecord rec = box_example(t, s, tol);
        print_check("flow", "e^{itL(e,e)} = e^{it}P2 + e^{it/2}P1 + P0",
                    rec.flow_vs_peirce <= tol.eq_tol, rec.flow_vs_peirce);
        print_check("weight", "h_t matches its closed form",
                    rec.weight_vs_formula <= tol.eq_tol, rec.weight_vs_formula);
        print_check("defect", "r_t r_s - r_{t+s} matches its closed form",
                    rec.defect_vs_formula <= tol.eq_tol, rec.defect_vs_formula);
        print_check("h = r", "the weight is already a partial isometry",
                    rec.weight_equals_isometry <= tol.eq_tol,
                    rec.weight_equals_isometry);
        print_check("shift case", "v = E12 gives r_t = e^{it/2} 1 (a group)",
                    rec.shift_weight_vs_formula <= tol.eq_tol &&
                        rec.shift_defect_norm <= tol.eq_tol,
                    std::max(rec.shift_weight_vs_formula, rec.shift_defect_norm));
        std::printf("  group defect norm at (t,s): %.6e\n", rec.defect_norm);
        std::printf("  note: %s\n", rec.note.c_str());
        std::printf("  verdict: %s  (%.1f ms)\n", rec.verdict ? "pass" : "fail", sw.ms());
        maybe_write_json(opts, box_record_to_json(rec));
        return rec.verdict ? 0 : 1;
    }

    if (name == "prop32-demo") {
        const GeneratorSplit gs = split_isometry_generator(box_example_generator(), tol);
        print_check("skew part", "z0 = R(1), z0* = -z0",
                    gs.report.residuals.at("z0_skew") <= tol.eq_tol,
                    gs.report.residuals.at("z0_skew"));
        print_check("derivation", "D = R - L_{z0} is a *-derivation",
                    gs.report.residuals.at("d_star_derivation") <= tol.eq_tol,
                    gs.report.residuals.at("d_star_derivation"));
        print_check("variant", "R = D1 + M_{z1}, D1 = D + [z0/2, .]",
                    gs.report.residuals.at("variant_reconstruction") <= tol.eq_tol,
                    gs.report.residuals.at("variant_reconstruction"));
        std::printf("  verdict: %s  (%.1f ms)\n", gs.report.verdict ? "pass" : "fail",
                    sw.ms());
        Json out = property_report_to_json(gs.report);
        out["z0"] = element_to_json(gs.z0);
        maybe_write_json(opts, out);
        return gs.report.verdict ? 0 : 1;
    }

    if (name == "corollary36-demo") {
        const AlgebraShape shape({2, 1});
        Element h = Element::zero(shape);
        h.block(0) = 2.0 * Matrix::Identity(2, 2);
        h.block(1) = -1.0 * Matrix::Identity(1, 1);
        Rng rng(opts.resolved_seed());
        const Element z = random_skew(shape, rng);
        const GeneratorSpec gen = central_symmetric_generator(h, z, tol);
        const SemigroupScan sc = scan(gen, default_time_grid(), tol);
        const SymmetricExtract ex = extract_symmetric_form(sc, tol);
        const double hrec = rel_residual(ex.h, h);
        print_check("extraction", "h recovered from log(T_{1/8})/(1/8)",
                    hrec <= tol.eq_tol, hrec);
        print_check("weights", "h_t = e^{th} on the grid",
                    ex.report.residuals.at("weight_exponential") <= tol.eq_tol,
                    ex.report.residuals.at("weight_exponential"));
        print_check("group laws", "h(t+s) = h(t)h(s), r(t+s) = r(t)r(s)",
                    std::max(ex.report.residuals.at("h_group_law"),
                             ex.report.residuals.at("r_group_law")) <= tol.eq_tol,
                    std::max(ex.report.residuals.at("h_group_law"),
                             ex.report.residuals.at("r_group_law")));
        const bool verdict = ex.report.verdict && hrec <= tol.eq_tol;
        std::printf("  verdict: %s  (%.1f ms)\n", verdict ? "pass" : "fail", sw.ms());
        Json out = property_report_to_json(ex.report);
        out["h"] = element_to_json(ex.h);
        out["h_recovery"] = hrec;
        maybe_write_json(opts, out);
        return verdict ? 0 : 1;
    }

    throw std::invalid_argument("unknown scenario: " + name +
                                " (expected remark35, prop32-demo, corollary36-demo)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block C*-algebra orthogonality-preserver toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", common.seed, "PRNG seed (overrides OPSTAR_SEED)");
        cmd->add_option("--tol", common.tol, "identity tolerance override");
        cmd->add_option("--json", common.json_path, "write the JSON report here");
    };

    // check-op
    auto* c_check = app.add_subcommand("check-op", "decide orthogonality preservation");
    std::string check_input;
    bool flag_exact = false, flag_randomized = false;
    int samples = 500;
    c_check->add_option("input", check_input, "SuperOp JSON file")->required();
    auto* opt_exact = c_check->add_flag("--exact", flag_exact, "exact decision via factorization");
    c_check->add_flag("--randomized", flag_randomized, "randomized orthogonal-pair probing")
        ->excludes(opt_exact);
    c_check->add_option("--samples", samples, "number of random pairs");
    add_common(c_check);

    // decompose
    auto* c_dec = app.add_subcommand("decompose", "factor a map as h r* S");
    std::string dec_input, dec_out;
    c_dec->add_option("input", dec_input, "SuperOp JSON file")->required();
    c_dec->add_option("--out", dec_out, "write the factorization JSON here");
    add_common(c_dec);

    // semigroup
    auto* c_semi = app.add_subcommand("semigroup", "scan and check a one-parameter family");
    std::string gen_name, shape_csv = "2", times_csv, checks_csv = "all";
    c_semi->add_option("--generator", gen_name,
                       "zero | remark35-e | remark35-v | inner | box | wolff | file.json")
        ->required();
    c_semi->add_option("--shape", shape_csv, "block sizes, e.g. 2,2,1");
    c_semi->add_option("--times", times_csv, "extra grid times, comma separated");
    c_semi->add_option("--checks", checks_csv, "law,cocycles,pedersen,wolff,all");
    add_common(c_semi);

    // paper
    auto* c_paper = app.add_subcommand("paper", "built-in worked scenarios");
    std::string paper_name;
    double t_param = 1.0, s_param = 0.5;
    c_paper->add_option("name", paper_name, "remark35 | prop32-demo | corollary36-demo")
        ->required();
    c_paper->add_option("--t", t_param, "first time parameter");
    c_paper->add_option("--s", s_param, "second time parameter");
    add_common(c_paper);

    // selftest
    auto* c_self = app.add_subcommand("selftest", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_check))
            return run_check_op(check_input, flag_exact, flag_randomized, samples, common);
        if (app.got_subcommand(c_dec)) return run_decompose(dec_input, dec_out, common);
        if (app.got_subcommand(c_semi))
            return run_semigroup(gen_name, shape_csv, times_csv, checks_csv, common);
        if (app.got_subcommand(c_paper))
            return run_paper(paper_name, t_param, s_param, common);
        if (app.got_subcommand(c_self)) {
            std::printf("opstar %s selftest\n", kVersion);
            const int failures = report_acceptance(run_acceptance());
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
    return 2;
}
