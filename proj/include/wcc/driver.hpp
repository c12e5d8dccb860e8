#pragma once

// Runs a catalogue case from run-time options: resolves defaults, picks the physics and the
// polynomial degree, integrates, and reports point values, conservation and errors.

#include "wcc/output.hpp"
#include "wcc/problems.hpp"
#include "wcc/solver.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace wcc {

struct run_options
{
    std::string case_id;
    int order = 3;
    int nx = 0; ///< 0: case default
    int ny = 0;
    std::optional<double> cfl;   ///< default: scheme_config::default_cfl(order)
    std::optional<double> t_end; ///< default: case end time
    std::optional<double> alpha;
    bool weighted = true;
    bool characteristic = true;

    auto scheme() const -> scheme_config
    {
        scheme_config c;
        c.order = order;
        c.cfl = cfl.value_or(scheme_config::default_cfl(order));
        c.weighted = weighted;
        c.characteristic = characteristic;
        if (alpha)
            c.limiter.alpha = *alpha;
        c.validate();
        return c;
    }
};

struct case_report
{
    problem prob;
    scheme_config scheme;
    int nx = 0, ny = 0;
    double t_end = 0.0;
    int half_steps = 0;
    field_data field;
    std::vector<double> initial_totals; ///< domain integrals (straddling end cells weighted 1/2)
    std::vector<double> final_totals;
    double budget_drift = 0.0;
    std::optional<double> total_drift; ///< fully periodic runs only
    std::optional<error_report> error; ///< density (or u) against the exact solution
};

/// Calls f(std::integral_constant<int, P>) with P = order - 1.
template <class F>
decltype(auto) with_degree(int order, F&& f)
{
    switch (order) {
    case 2:
        return f(std::integral_constant<int, 1>{});
    case 3:
        return f(std::integral_constant<int, 2>{});
    case 4:
        return f(std::integral_constant<int, 3>{});
    default:
        throw config_error("order must be 2, 3 or 4 (got " + std::to_string(order) + ")");
    }
}

namespace detail {

template <class Physics, int P>
auto run_case_1d(problem const& p, Physics const& phys, scheme_config const& cfg, int nx, double t_end,
                 case_report& rep)
{
    bool const periodic = p.bcs.left.kind == bc_kind::periodic;
    auto u = initialize_1d<Physics::components, P>(p, nx);
    auto res = run_1d<Physics, P>(std::move(u), phys, p.bcs, cfg, t_end);
    rep.half_steps = res.half_steps;
    rep.field = extract_field<Physics, P>(res.state, phys, periodic);
    rep.initial_totals = res.conservation.initial;
    rep.final_totals = res.conservation.current;
    rep.budget_drift = res.conservation.budget_drift();
    if (periodic)
        rep.total_drift = res.conservation.total_drift();
    if (p.has_exact)
        rep.error = error_norms_1d(res.state, [&](double x) { return exact_1d(p, x, t_end); }, periodic);
}

template <int P>
auto run_case_2d(problem const& p, euler_2d const& phys, scheme_config const& cfg, int nx, int ny, double t_end,
                 case_report& rep)
{
    std::array<bool, 2> const periodic{p.bcs.left.kind == bc_kind::periodic, p.bcs.bottom.kind == bc_kind::periodic};
    auto u = initialize_2d<P>(p, nx, ny);
    auto res = run_2d<euler_2d, P>(std::move(u), phys, p.bcs, cfg, t_end);
    rep.half_steps = res.half_steps;
    rep.field = extract_field<euler_2d, P>(res.state, phys, periodic);
    rep.initial_totals = res.conservation.initial;
    rep.final_totals = res.conservation.current;
    rep.budget_drift = res.conservation.budget_drift();
    if (periodic[0] && periodic[1])
        rep.total_drift = res.conservation.total_drift();
    if (p.has_exact)
        rep.error = error_norms_2d(
            res.state, [&](double x, double y) { return exact_2d(p, x, y, t_end)[0]; }, periodic);
}

} // namespace detail

inline auto run_case(run_options const& opt) -> case_report
{
    case_report rep;
    rep.prob = find_problem(opt.case_id);
    problem const& p = rep.prob;
    rep.scheme = opt.scheme();
    rep.nx = opt.nx > 0 ? opt.nx : p.nx;
    rep.ny = p.dims == 2 ? (opt.ny > 0 ? opt.ny : p.ny) : 1;
    if (opt.nx < 0 || opt.ny < 0)
        throw config_error("mesh counts must be positive");
    if (p.dims == 1 && opt.ny > 1)
        throw config_error("case '" + p.id + "' is one-dimensional; --ny does not apply");
    rep.t_end = opt.t_end.value_or(p.t_end);
    if (!(rep.t_end > 0.0))
        throw config_error("end time must be positive");

    with_degree(rep.scheme.order, [&](auto deg) {
        constexpr int P = decltype(deg)::value;
        switch (p.physics) {
        case physics_kind::advection_1d:
            detail::run_case_1d<linear_advection_1d, P>(p, linear_advection_1d{p.speed}, rep.scheme, rep.nx, rep.t_end, rep);
            break;
        case physics_kind::euler_1d:
            detail::run_case_1d<euler_1d, P>(p, euler_1d{gas_model{p.gamma}}, rep.scheme, rep.nx, rep.t_end, rep);
            break;
        case physics_kind::euler_2d:
            detail::run_case_2d<P>(p, euler_2d{gas_model{p.gamma}}, rep.scheme, rep.nx, rep.ny, rep.t_end, rep);
            break;
        }
    });
    return rep;
}

// ---------------------------------------------------------------------------------------
// Convergence studies
// ---------------------------------------------------------------------------------------

/// log2(coarse / fine); NaN when either error is at round-off level.
inline auto observed_order(double coarse, double fine) -> double
{
    constexpr double floor = 1e-14;
    if (!(coarse > floor) || !(fine > floor))
        return std::numeric_limits<double>::quiet_NaN();
    return std::log2(coarse / fine);
}

struct convergence_row
{
    int order = 0;
    bool weighted = true;
    int mesh = 0;  ///< label m of the mesh size 1/m
    int cells = 0; ///< cells per direction along x
    double l1 = 0.0, l1_order = std::numeric_limits<double>::quiet_NaN();
    double linf = 0.0, linf_order = std::numeric_limits<double>::quiet_NaN();
};

/// Cells along an interval of length L at mesh size 1/m.
inline auto cells_for_mesh(double length, int m) -> int
{
    if (m <= 0)
        throw config_error("mesh labels must be positive");
    double const n = length * m;
    int const k = static_cast<int>(std::lround(n));
    if (k < 2 || std::abs(n - k) > 1e-9)
        throw config_error("mesh 1/" + std::to_string(m) + " does not divide the domain");
    return k;
}

/// Runs `base` at mesh sizes 1/m for each m (successive entries are meant to halve the mesh).
inline auto run_convergence(run_options base, std::vector<int> const& meshes) -> std::vector<convergence_row>
{
    if (meshes.size() < 2)
        throw config_error("a convergence study needs at least two meshes");
    auto const p = find_problem(base.case_id);
    if (!p.has_exact)
        throw unsupported_error("case '" + p.id + "' has no exact solution");
    std::vector<convergence_row> rows;
    for (int m : meshes) {
        base.nx = cells_for_mesh(p.x_hi - p.x_lo, m);
        base.ny = p.dims == 2 ? cells_for_mesh(p.y_hi - p.y_lo, m) : 0;
        auto const rep = run_case(base);
        convergence_row row;
        row.order = base.order;
        row.weighted = base.weighted;
        row.mesh = m;
        row.cells = base.nx;
        row.l1 = rep.error->l1;
        row.linf = rep.error->linf;
        if (!rows.empty()) {
            row.l1_order = observed_order(rows.back().l1, row.l1);
            row.linf_order = observed_order(rows.back().linf, row.linf);
        }
        rows.push_back(row);
    }
    return rows;
}

inline auto format_order(double v) -> std::string
{
    if (std::isnan(v))
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline auto convergence_csv(std::vector<convergence_row> const& rows) -> std::string
{
    std::string s = "scheme,order,mesh,cells,L1,L1_order,Linf,Linf_order\n";
    char buf[256];
    for (auto const& r : rows) {
        std::snprintf(buf, sizeof buf, "%s-%d,%d,1/%d,%d,%.3e,%s,%.3e,%s\n", r.weighted ? "WCCS" : "LCCS", r.order,
                      r.order, r.mesh, r.cells, r.l1, format_order(r.l1_order).c_str(), r.linf,
                      format_order(r.linf_order).c_str());
        s += buf;
    }
    return s;
}

} // namespace wcc
