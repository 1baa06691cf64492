#include "goursat/cli.hpp"

#include "goursat/boundary_data.hpp"
#include "goursat/io.hpp"
#include "goursat/mms.hpp"
#include "goursat/norms.hpp"
#include "goursat/pde_operator.hpp"
#include "goursat/volterra.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace goursat {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Options {
    std::string spec_path;
    std::string field_path;
    std::string case_name;
    std::string grids = "9,17";
    std::string p_text;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::string rule;
    std::string mode;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string format = "gf4";
    int samples = 100;
    int grid_n = 7;
    std::string sampler = "uniform";
};

double parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity") return kInfinity;
    std::size_t used = 0;
    const double p = std::stod(text, &used);
    if (used != text.size() || !(p >= 1.0)) throw std::invalid_argument("--p must be >= 1 or 'inf'");
    return p;
}

SolverSettings apply_overrides(SolverSettings s, const Options& o) {
    if (!o.p_text.empty()) s.norm.p = parse_p(o.p_text);
    if (o.tol) s.tol = *o.tol;
    if (o.max_iter) s.max_iter = *o.max_iter;
    if (!o.rule.empty()) s.rule = parse_rule(o.rule);
    if (!o.mode.empty()) s.mode = parse_mode(o.mode);
    if (!(s.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (s.max_iter < 1) throw std::invalid_argument("--max-iter must be at least 1");
    return s;
}

fs::path save(const Options& o, const std::string& stem, const Field& f) {
    fs::create_directories(o.out_dir);
    const bool csv = o.format == "csv";
    const fs::path path = fs::path(o.out_dir) / (stem + (csv ? ".csv" : ".gf4"));
    if (csv)
        write_csv(path, f);
    else
        write_field(path, f);
    return path;
}

std::string index_stem(const MultiIndex& i) {
    return "phi_" + std::to_string(i[0]) + std::to_string(i[1]) + std::to_string(i[2]) + std::to_string(i[3]);
}

void print_report(std::ostream& out, const SolveReport& r) {
    out << "iterations=" << r.iterations << '\n';
    out << "converged=" << (r.converged ? "true" : "false") << '\n';
    out << "residual=" << num(r.residual) << '\n';
    out << "last_update=" << num(r.update_norms.empty() ? 0.0 : r.update_norms.back()) << '\n';
}

int cmd_solve(const Options& o, std::ostream& out) {
    const ProblemSpec spec = load_problem_spec(o.spec_path);
    const SolverSettings s = apply_overrides(spec.solver, o);
    const ProblemSolve solved = solve_problem(spec.coefficients, problem_data(spec), s);
    out << "mode=" << mode_name(s.mode) << '\n' << "rule=" << rule_name(s.rule) << '\n';
    print_report(out, solved.report);
    out << "u_max=" << num(solved.solution.u.max_abs()) << '\n';
    out << "u_file=" << save(o, "u", solved.solution.u).string() << '\n';
    out << "b_file=" << save(o, "b", solved.solution.b).string() << '\n';
    return solved.report.converged ? kExitOk : kExitNotConverged;
}

void print_compat(std::ostream& out, const CompatReport& r) {
    for (int id = 0; id < kCompatIdentityCount; ++id) {
        out << "identity." << (id + 1) << '=' << CompatReport::identity_name(id) << '\n';
        out << "violation." << (id + 1) << '=' << num(r.violation[id]) << '\n';
    }
    for (int id = 0; id < kCompatIdentityCount; ++id)
        if (!(r.violation[id] <= r.tol)) out << "violated=" << CompatReport::identity_name(id) << '\n';
    out << "tol=" << num(r.tol) << '\n' << "pass=" << (r.pass ? "true" : "false") << '\n';
}

int cmd_check_compat(const Options& o, std::ostream& out) {
    const ProblemSpec spec = load_problem_spec(o.spec_path);
    if (spec.mode != BoundaryMode::classical) throw SpecError("check-compat needs classical boundary data");
    const CompatReport r = check_compatibility(*spec.classical, o.tol.value_or(kDefaultCompatTol));
    print_compat(out, r);
    return r.pass ? kExitOk : kExitInvalid;
}

int cmd_convert(const Options& o, std::ostream& out) {
    const ProblemSpec spec = load_problem_spec(o.spec_path);
    if (spec.mode == BoundaryMode::classical) {
        const ConversionResult conv = classical_to_nonclassical(*spec.classical);
        out << "direction=classical-to-nonclassical\n";
        for (const MultiIndex& i : all_indices()) {
            if (i.is_dominant()) continue;
            save(o, index_stem(i), conv.phi[i]);
        }
        out << "components=35\n" << "max_spread=" << num(conv.max_spread()) << '\n';
        return kExitOk;
    }
    const ClassicalData c = nonclassical_to_classical(*spec.phi, apply_overrides(spec.solver, o).rule);
    out << "direction=nonclassical-to-classical\n";
    for (Classical which : {Classical::F, Classical::g, Classical::psi, Classical::Phi, Classical::T,
                            Classical::S})
        save(o, std::string(classical_name(which)), c[which]);
    const CompatReport r = check_compatibility(c, o.tol.value_or(kDefaultCompatTol));
    out << "components=6\n" << "compat_pass=" << (r.pass ? "true" : "false") << '\n';
    out << "compat_max_violation=" << num(r.violation[r.worst()]) << '\n';
    return kExitOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
    if (o.samples < 1) throw std::invalid_argument("--samples must be at least 1");
    const NormConfig cfg{o.p_text.empty() ? 2.0 : parse_p(o.p_text)};
    const HomeoScan scan =
        homeo_ratio_scan(unit_grid(o.grid_n), cfg, o.samples, o.seed, parse_sampler(o.sampler));
    out << "grid=" << o.grid_n << '\n' << "samples=" << o.samples << '\n' << "seed=" << o.seed << '\n';
    out << "sampler=" << o.sampler << '\n';
    out << "min_ratio=" << num(scan.min_ratio) << '\n' << "max_ratio=" << num(scan.max_ratio) << '\n';
    for (std::size_t k = 0; k < scan.ratios.size(); ++k) out << "ratio." << k << '=' << num(scan.ratios[k]) << '\n';
    return kExitOk;
}

std::vector<int> parse_grid_list(const std::string& text) {
    std::vector<int> counts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const int n = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad grid count: " + item);
        counts.push_back(n);
    }
    if (counts.empty()) throw std::invalid_argument("--grids needs at least one count");
    return counts;
}

int cmd_mms(const Options& o, std::ostream& out) {
    const ManufacturedCase mc = manufactured_case(o.case_name);
    SolverSettings s = apply_overrides(SolverSettings{}, o);
    const NormConfig metric{o.p_text.empty() ? kInfinity : s.norm.p};
    const std::vector<int> counts = parse_grid_list(o.grids);
    std::vector<ConvergenceRow> rows;
    if (counts.size() == 1) {
        const Grid4 grid = unit_grid(counts[0]);
        ProblemSolve solved = solve_problem(mc.coefficients(grid), mc.data(grid), s);
        rows.push_back({counts[0], error_metrics(solved.solution, mc, metric), std::nullopt, solved.report});
    } else {
        rows = convergence_study(mc, counts, s, metric);
    }
    out << "case=" << mc.name() << '\n';
    bool converged = true;
    for (const ConvergenceRow& r : rows) {
        const std::string g = "grid." + std::to_string(r.count) + '.';
        out << g << "u_max_error=" << num(r.error.u_max) << '\n';
        out << g << "u_lp_error=" << num(r.error.u_lp) << '\n';
        out << g << "b_lp_error=" << num(r.error.b_lp) << '\n';
        out << g << "order=" << (r.order ? num(*r.order) : std::string("n/a")) << '\n';
        out << g << "iterations=" << r.report.iterations << '\n';
        converged = converged && r.report.converged;
    }
    out << "max_error=" << num(rows.back().error.u_max) << '\n';
    out << "converged=" << (converged ? "true" : "false") << '\n';
    return converged ? kExitOk : kExitNotConverged;
}

int cmd_apply(const Options& o, std::ostream& out) {
    const ProblemSpec spec = load_problem_spec(o.spec_path);
    const Field u = read_field(o.field_path, spec.grid);
    const Field v = apply_V1122(finite_diff_bundle(u), spec.coefficients);
    out << "v_max=" << num(v.max_abs()) << '\n';
    out << "v_file=" << save(o, "Vu", v).string() << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Goursat problem solver for the operator D1 D2 D3^2 D4^2 + lower-order terms", "goursat4d"};
    app.require_subcommand(1);
    Options o;

    auto solver_flags = [&o](CLI::App* c) {
        c->add_option("--p", o.p_text, "norm exponent (>= 1 or 'inf')");
        c->add_option("--tol", o.tol, "tolerance");
        c->add_option("--max-iter", o.max_iter, "iteration cap");
        c->add_option("--rule", o.rule, "quadrature rule")->check(CLI::IsMember({"trap", "rect"}));
        c->add_option("--mode", o.mode, "iteration mode")->check(CLI::IsMember({"picard", "sweep"}));
    };
    auto output_flags = [&o](CLI::App* c) {
        c->add_option("--out-dir", o.out_dir, "output directory");
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"gf4", "csv"}));
    };

    CLI::App* solve = app.add_subcommand("solve", "solve a problem document");
    solve->add_option("spec", o.spec_path, "problem JSON")->required();
    solver_flags(solve);
    output_flags(solve);

    CLI::App* convert = app.add_subcommand("convert-bc", "convert boundary data between forms");
    convert->add_option("spec", o.spec_path, "problem JSON")->required();
    convert->add_option("--tol", o.tol, "compatibility tolerance");
    convert->add_option("--rule", o.rule, "quadrature rule")->check(CLI::IsMember({"trap", "rect"}));
    output_flags(convert);

    CLI::App* compat = app.add_subcommand("check-compat", "check the matching identities of classical data");
    compat->add_option("spec", o.spec_path, "problem JSON with classical boundary data")->required();
    compat->add_option("--tol", o.tol, "tolerance");

    CLI::App* scan = app.add_subcommand("scan-homeo", "empirical ratio ||Qb||_W / ||b||_E");
    scan->add_option("--grid", o.grid_n, "nodes per axis of the unit grid");
    scan->add_option("--samples", o.samples, "number of random samples");
    scan->add_option("--seed", o.seed, "random seed");
    scan->add_option("--p", o.p_text, "norm exponent");
    scan->add_option("--sampler", o.sampler, "random data model")->check(CLI::IsMember({"uniform", "poly"}));

    CLI::App* mms = app.add_subcommand("mms", "manufactured-solution run or convergence table");
    mms->add_option("case", o.case_name, "case name")->required()->check(
        CLI::IsMember(manufactured_case_names()));
    mms->add_option("--grids", o.grids, "comma-separated nodes per axis");
    solver_flags(mms);

    CLI::App* apply = app.add_subcommand("apply-op", "apply the differential operator to a field");
    apply->add_option("field", o.field_path, "GF4 field")->required();
    apply->add_option("spec", o.spec_path, "problem JSON providing grid and coefficients")->required();
    output_flags(apply);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(o, out);
        if (convert->parsed()) return cmd_convert(o, out);
        if (compat->parsed()) return cmd_check_compat(o, out);
        if (scan->parsed()) return cmd_scan(o, out);
        if (mms->parsed()) return cmd_mms(o, out);
        if (apply->parsed()) return cmd_apply(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitUsage;
}

int run_cli(int argc, const char* const* argv) {
    return run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace goursat
