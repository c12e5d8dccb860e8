// Command-line driver: single runs, convergence studies, stability bounds, case listing.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 physics abort, 1 anything else.

#include "wcc/wcc.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_config = 2;
constexpr int exit_physics = 3;
constexpr int exit_other = 1;

auto trim(std::string s) -> std::string
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto const e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Replaces `--config <file>` (or `--config=<file>`) by the file's `key = value` lines as flags,
/// placed right after the subcommand so that explicit flags, parsed later, take precedence.
auto expand_config(std::vector<std::string> args) -> std::vector<std::string>
{
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string path;
        std::size_t drop = 0;
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw wcc::config_error("--config needs a file name");
            path = args[i + 1];
            drop = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            drop = 1;
        } else {
            continue;
        }
        std::ifstream in(path);
        if (!in)
            throw wcc::config_error("cannot read config file '" + path + "'");
        std::vector<std::string> extra;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line.substr(0, line.find('#')));
            if (line.empty())
                continue;
            auto const eq = line.find('=');
            if (eq == std::string::npos)
                throw wcc::config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
            std::string const key = trim(line.substr(0, eq));
            std::string const value = trim(line.substr(eq + 1));
            if (value == "true") {
                extra.push_back("--" + key);
            } else if (value != "false") {
                extra.push_back("--" + key);
                extra.push_back(value);
            }
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + drop));
        auto const at = std::min<std::size_t>(2, args.size());
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
        return args;
    }
    return args;
}

auto parse_int_list(std::string const& s, char const* what) -> std::vector<int>
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (std::exception const&) {
            throw wcc::config_error(std::string("bad ") + what + " entry '" + item + "'");
        }
    }
    if (out.empty())
        throw wcc::config_error(std::string("empty ") + what + " list");
    return out;
}

void warn_cfl(wcc::scheme_config const& s)
{
    double const bound = wcc::linear_cfl_bound(s.order);
    if (s.cfl > bound)
        std::fprintf(stderr, "warning: CFL %.3g exceeds the linear stability bound %.3g for order %d\n", s.cfl, bound,
                     s.order);
}

auto format_drift(std::optional<double> d) -> std::string
{
    if (!d)
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", *d);
    return buf;
}

struct run_args
{
    wcc::run_options opt;
    double cfl = 0.0, tend = 0.0, alpha = 0.0;
    bool linear = false, no_char = false;
    std::string out;
    std::string format;
};

int do_run(run_args& a, CLI::App const& cmd)
{
    if (cmd.count("--cfl"))
        a.opt.cfl = a.cfl;
    if (cmd.count("--tend"))
        a.opt.t_end = a.tend;
    if (cmd.count("--alpha"))
        a.opt.alpha = a.alpha;
    a.opt.weighted = !a.linear;
    a.opt.characteristic = !a.no_char;

    std::string format = a.format;
    if (format.empty())
        format = a.out.size() >= 4 && a.out.substr(a.out.size() - 4) == ".vtk" ? "vtk" : "csv";
    warn_cfl(a.opt.scheme());

    auto const rep = wcc::run_case(a.opt);
    std::printf("case %s  scheme %s-%d  cells %dx%d  cfl %.3g  t %.6g  half-steps %d\n", rep.prob.id.c_str(),
                rep.scheme.weighted ? "WCCS" : "LCCS", rep.scheme.order, rep.nx, rep.ny, rep.scheme.cfl, rep.t_end,
                rep.half_steps);
    std::printf("conservation budget drift %.3e  total drift %s\n", rep.budget_drift,
                format_drift(rep.total_drift).c_str());
    if (rep.error)
        std::printf("%s error  L1 %.6e  Linf %.6e  (%d cells)\n", rep.field.names[0].c_str(), rep.error->l1,
                    rep.error->linf, rep.error->cells);
    if (!a.out.empty()) {
        if (format == "vtk")
            wcc::write_vtk(rep.field, a.out);
        else
            wcc::write_csv(rep.field, a.out);
        std::printf("wrote %s\n", a.out.c_str());
    }
    return 0;
}

struct converge_args
{
    std::string case_id;
    std::string orders = "2,3,4";
    std::string meshes = "25,50,100,200";
    std::string schemes = "linear,weighted";
    double cfl = 0.0;
    bool no_char = false;
    std::string out;
};

int do_converge(converge_args const& a, CLI::App const& cmd)
{
    auto const orders = parse_int_list(a.orders, "order");
    auto const meshes = parse_int_list(a.meshes, "mesh");
    std::vector<bool> weighted;
    std::stringstream ss(a.schemes);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item == "linear")
            weighted.push_back(false);
        else if (item == "weighted")
            weighted.push_back(true);
        else
            throw wcc::config_error("unknown scheme '" + item + "' (use linear, weighted)");
    }
    std::vector<wcc::convergence_row> rows;
    for (int q : orders)
        for (bool w : weighted) {
            wcc::run_options o;
            o.case_id = a.case_id;
            o.order = q;
            o.weighted = w;
            o.characteristic = !a.no_char;
            if (cmd.count("--cfl"))
                o.cfl = a.cfl;
            warn_cfl(o.scheme());
            auto const r = wcc::run_convergence(o, meshes);
            rows.insert(rows.end(), r.begin(), r.end());
        }
    auto const csv = wcc::convergence_csv(rows);
    std::fputs(csv.c_str(), stdout);
    if (!a.out.empty()) {
        std::ofstream f(a.out, std::ios::binary);
        if (!(f << csv))
            throw wcc::io_error("cannot write '" + a.out + "'");
    }
    return 0;
}

int do_stability(std::optional<int> order, std::optional<int> candidate, double tol)
{
    std::vector<int> qs = order ? std::vector<int>{*order} : std::vector<int>{2, 3, 4};
    std::vector<int> ms = candidate ? std::vector<int>{*candidate} : std::vector<int>{0, 1, 2};
    std::printf("Q,m,nu_max\n");
    for (int q : qs)
        for (int m : ms)
            std::printf("%d,%d,%.3f\n", q, m, wcc::max_stable_nu(q, m, tol));
    return 0;
}

int do_list()
{
    for (auto const& id : wcc::case_ids()) {
        auto const p = wcc::find_problem(id);
        std::printf("%-17s %dD  default %dx%d  t_end %g  %s\n", id.c_str(), p.dims, p.nx, p.dims == 2 ? p.ny : 1,
                    p.t_end, p.description.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted compact central schemes: benchmark driver"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    run_args ra;
    auto* run = app.add_subcommand("run", "integrate one case and write point values");
    run->add_option("--case", ra.opt.case_id, "case id (see list-cases)")->required();
    run->add_option("--order", ra.opt.order, "order of accuracy: 2, 3 or 4")->check(CLI::IsMember({2, 3, 4}));
    run->add_option("--nx", ra.opt.nx, "cells along x (default: case default)")->check(CLI::PositiveNumber);
    run->add_option("--ny", ra.opt.ny, "cells along y (2D cases)")->check(CLI::PositiveNumber);
    run->add_option("--cfl", ra.cfl, "Courant number (default 0.4/0.3/0.25 for orders 2/3/4)");
    run->add_option("--tend", ra.tend, "end time (default: case end time)");
    run->add_flag("--linear", ra.linear, "disable the limiter (linear scheme)");
    run->add_flag("--no-char", ra.no_char, "limit conservative instead of characteristic variables");
    run->add_option("--alpha", ra.alpha, "limiter exponent");
    run->add_option("--out", ra.out, "output file");
    run->add_option("--format", ra.format, "csv or vtk (default from the file extension)")
        ->check(CLI::IsMember({"csv", "vtk"}));
    std::string config_file; // consumed by expand_config; declared for --help
    run->add_option("--config", config_file, "key = value file; explicit flags override it");

    converge_args ca;
    auto* conv = app.add_subcommand("converge", "error norms and observed orders over a mesh sequence");
    conv->add_option("--case", ca.case_id, "case with an exact solution")->required();
    conv->add_option("--orders", ca.orders, "comma-separated orders");
    conv->add_option("--meshes", ca.meshes, "comma-separated m for mesh sizes 1/m");
    conv->add_option("--schemes", ca.schemes, "linear, weighted or both");
    conv->add_option("--cfl", ca.cfl, "Courant number");
    conv->add_flag("--no-char", ca.no_char, "conservative-variable limiting");
    conv->add_option("--out", ca.out, "also write the CSV table here");
    conv->add_option("--config", config_file, "key = value file; explicit flags override it");

    int order = 0, candidate = 0;
    double tol = 1e-4;
    auto* stab = app.add_subcommand("stability", "maximal stable Courant number of the linear candidates");
    auto* o_order = stab->add_option("--order", order, "order 2, 3 or 4 (default: all)");
    auto* o_cand = stab->add_option("--candidate", candidate, "candidate 0, 1 or 2 (default: all)");
    stab->add_option("--tol", tol, "bisection tolerance");

    app.add_subcommand("list-cases", "print the case catalogue");

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(std::move(args));
        std::vector<char*> cargs;
        for (auto& s : args)
            cargs.push_back(s.data());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return exit_config;
    } catch (wcc::config_error const& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return exit_config;
    }

    try {
        if (run->parsed())
            return do_run(ra, *run);
        if (conv->parsed())
            return do_converge(ca, *conv);
        if (stab->parsed())
            return do_stability(o_order->count() ? std::optional<int>(order) : std::nullopt,
                                o_cand->count() ? std::optional<int>(candidate) : std::nullopt, tol);
        return do_list();
    } catch (wcc::config_error const& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return exit_config;
    } catch (wcc::physics_error const& e) {
        std::fprintf(stderr, "physics abort: %s\n", e.what());
        return exit_physics;
    } catch (std::exception const& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_other;
    }
}
