#pragma once

// Time loop, step-size control, conservation monitoring and error norms.

#include "wcc/mesh.hpp"
#include "wcc/parallel.hpp"
#include "wcc/scheme1d.hpp"
#include "wcc/scheme2d.hpp"
#include "wcc/scheme_config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace wcc {

struct error_report
{
    double l1 = 0.0;
    double linf = 0.0;
    int cells = 0;
};

/// Tracks the domain integral of every component. `budget` accumulates, half-step by
/// half-step, the difference between the new cell-average total and the total predicted
/// from the source cells and the fluxes through the region boundary; for a conservative
/// update it stays at round-off level whatever the boundary conditions.
struct conservation_monitor
{
    std::vector<double> initial;   ///< domain integral at the start
    std::vector<double> scale;     ///< integral of |u| at the start (normaliser)
    std::vector<double> current;   ///< latest domain integral
    std::vector<double> budget;    ///< accumulated budget residual

    void start(std::vector<double> const& total, std::vector<double> const& magnitude)
    {
        initial = total;
        current = total;
        scale = magnitude;
        budget.assign(total.size(), 0.0);
    }

    void add_residual(std::vector<double> const& r)
    {
        for (std::size_t c = 0; c < r.size(); ++c)
            budget[c] += r[c];
    }

    /// Normaliser of component c: its initial magnitude, or the largest one when the component
    /// starts (near) zero, as the momentum of a fluid at rest does.
    auto norm(std::size_t c) const -> double
    {
        double const top = *std::max_element(scale.begin(), scale.end());
        double const n = scale[c] >= 1e-8 * top ? scale[c] : top;
        return std::max(n, std::numeric_limits<double>::min());
    }

    /// Largest accumulated budget residual relative to the component's magnitude.
    auto budget_drift() const -> double
    {
        double d = 0.0;
        for (std::size_t c = 0; c < budget.size(); ++c)
            d = std::max(d, std::abs(budget[c]) / norm(c));
        return d;
    }

    /// Largest change of the domain integral relative to the component's magnitude; only a
    /// conservation measure when no flux crosses the boundary (fully periodic runs).
    auto total_drift() const -> double
    {
        double d = 0.0;
        for (std::size_t c = 0; c < current.size(); ++c)
            d = std::max(d, std::abs(current[c] - initial[c]) / norm(c));
        return d;
    }
};

// ---------------------------------------------------------------------------------------
// 1D
// ---------------------------------------------------------------------------------------

template <int P>
auto cell_average_of(jet<1, P> const& u) -> double
{
    std::array<double, P + 1> c{};
    for (int k = 0; k <= P; ++k)
        c[k] = u[k];
    return cell_average_of_1d<P>(c);
}

/// Weight of cell s in the domain integral: straddling end cells of the original parity
/// count half, the duplicated periodic end cell not at all.
inline auto domain_weight(axis const& ax, parity p, int s, bool periodic) -> double
{
    if (p == parity::staggered)
        return 1.0;
    if (periodic)
        return s == ax.n + 1 ? 0.0 : 1.0;
    return (s == 1 || s == ax.n + 1) ? 0.5 : 1.0;
}

/// Domain integral of every component and of its magnitude.
template <int NC, int P>
auto domain_totals_1d(solution_1d<NC, P> const& u, bool periodic) -> std::pair<std::vector<double>, std::vector<double>>
{
    std::vector<double> total(NC), mag(NC);
    std::vector<double> terms(static_cast<std::size_t>(u.count()));
    std::vector<double> abs_terms(terms.size());
    double const dx = u.x.spacing();
    for (int c = 0; c < NC; ++c) {
        for (int s = 1; s <= u.count(); ++s) {
            double const v = domain_weight(u.x, u.active, s, periodic) * cell_average_of<P>(u(s)[c]) * dx;
            terms[static_cast<std::size_t>(s - 1)] = v;
            abs_terms[static_cast<std::size_t>(s - 1)] = std::abs(v);
        }
        total[c] = pairwise_sum(terms);
        mag[c] = pairwise_sum(abs_terms);
    }
    return {total, mag};
}

/// Budget residual of the last half-step (per component, in integral units).
template <int NC, int P>
auto budget_residual_1d(solution_1d<NC, P> const& dst, workspace_1d<NC, P> const& ws, double nu) -> std::vector<double>
{
    int const n = dst.count();
    double const dx = dst.x.spacing();
    std::vector<double> out(NC);
    std::vector<double> dest(static_cast<std::size_t>(n)), pred(static_cast<std::size_t>(n));
    for (int c = 0; c < NC; ++c) {
        for (int s = 1; s <= n; ++s) {
            auto const [a, b] = staggered_sources(dst.x, dst.active, s);
            dest[static_cast<std::size_t>(s - 1)] = cell_average_of<P>(dst(s)[c]);
            pred[static_cast<std::size_t>(s - 1)] =
                0.5 * (ws.sources[static_cast<std::size_t>(a)].right_half[c] + ws.sources[static_cast<std::size_t>(b)].left_half[c]);
        }
        auto const [first, unused1] = staggered_sources(dst.x, dst.active, 1);
        auto const [unused2, last] = staggered_sources(dst.x, dst.active, n);
        (void)unused1;
        (void)unused2;
        double const flux = nu * (ws.sources[static_cast<std::size_t>(first)].flux[c] - ws.sources[static_cast<std::size_t>(last)].flux[c]);
        out[c] = (pairwise_sum(dest) - pairwise_sum(pred) - flux) * dx;
    }
    return out;
}

/// Largest wave speed over the active cells, from the centre point values.
template <class Physics, int NC, int P>
auto max_wave_speed_1d(solution_1d<NC, P> const& u, Physics const& phys) -> double
{
    double m = 0.0;
    for (int s = 1; s <= u.count(); ++s) {
        state<NC> w{};
        for (int c = 0; c < NC; ++c)
            w[c] = u(s)[c][0];
        m = std::max(m, phys.max_speed(w));
    }
    return m;
}

template <int NC, int P>
struct run_result_1d
{
    solution_1d<NC, P> state;
    int half_steps = 0;
    conservation_monitor conservation;
};

/// Called after every half-step with the new state.
template <int NC, int P>
using observer_1d = std::function<void(solution_1d<NC, P> const&)>;

template <class Physics, int P>
auto run_1d(solution_1d<Physics::components, P> u, Physics const& phys, boundary_set const& bcs, scheme_config const& cfg,
            double t_end, observer_1d<Physics::components, P> const& observe = {})
    -> run_result_1d<Physics::components, P>
{
    constexpr int NC = Physics::components;
    cfg.validate();
    bcs.validate(1);
    bool const periodic = bcs.left.kind == bc_kind::periodic;
    if (!(t_end >= u.time))
        throw config_error("end time precedes the initial time");

    run_result_1d<NC, P> res;
    auto const [t0, m0] = domain_totals_1d(u, periodic);
    res.conservation.start(t0, m0);

    double const dx = u.x.spacing();
    solution_1d<NC, P> v(u.x, other(u.active), u.time);
    workspace_1d<NC, P> ws;
    while (u.time < t_end) {
        fill_ghosts<Physics>(u, bcs);
        double const speed = max_wave_speed_1d(u, phys);
        double dt = speed > 0.0 ? cfg.cfl * dx / speed : t_end - u.time;
        bool const last = u.time + dt >= t_end;
        if (last)
            dt = t_end - u.time;
        advance_half_step_1d<Physics, P>(u, v, phys, cfg, dt, ws);
        if (last)
            v.time = t_end;
        res.conservation.add_residual(budget_residual_1d(v, ws, dt / dx));
        std::swap(u, v);
        ++res.half_steps;
        if (observe)
            observe(u);
    }
    res.conservation.current = domain_totals_1d(u, periodic).first;
    res.state = std::move(u);
    return res;
}

/// Cells that represent distinct points of the domain (drops the duplicated periodic cell).
inline auto distinct_cells(axis const& ax, parity p, bool periodic) -> int
{
    return (p == parity::original && periodic) ? ax.n : ax.cells(p);
}

/// L1 (mean) and L-infinity errors of the centre point values of component `c`.
template <int NC, int P, class Exact>
auto error_norms_1d(solution_1d<NC, P> const& u, Exact&& exact, bool periodic, int c = 0) -> error_report
{
    int const n = distinct_cells(u.x, u.active, periodic);
    std::vector<double> err(static_cast<std::size_t>(n));
    error_report r;
    for (int s = 1; s <= n; ++s) {
        double const e = std::abs(u(s)[c][0] - exact(u.center(s)));
        err[static_cast<std::size_t>(s - 1)] = e;
        r.linf = std::max(r.linf, e);
    }
    r.cells = n;
    r.l1 = pairwise_sum(err) / n;
    return r;
}

// ---------------------------------------------------------------------------------------
// 2D
// ---------------------------------------------------------------------------------------

template <int NC, int P>
auto domain_totals_2d(solution_2d<NC, P> const& u, std::array<bool, 2> periodic)
    -> std::pair<std::vector<double>, std::vector<double>>
{
    int const nx = u.count_x(), ny = u.count_y();
    double const area = u.x.spacing() * u.y.spacing();
    std::vector<double> total(NC), mag(NC);
    std::vector<double> terms(static_cast<std::size_t>(nx) * ny), abs_terms(terms.size());
    for (int c = 0; c < NC; ++c) {
        for (int r = 1; r <= ny; ++r) {
            double const wy = domain_weight(u.y, u.active, r, periodic[1]);
            for (int s = 1; s <= nx; ++s) {
                double const v = wy * domain_weight(u.x, u.active, s, periodic[0]) * cell_average_of<P>(u(s, r)[c]) * area;
                std::size_t const k = static_cast<std::size_t>(r - 1) * nx + (s - 1);
                terms[k] = v;
                abs_terms[k] = std::abs(v);
            }
        }
        total[c] = pairwise_sum(terms);
        mag[c] = pairwise_sum(abs_terms);
    }
    return {total, mag};
}

/// Budget residual of the last 2D half-step: new total minus the quarter contributions of
/// the sources and the half-face fluxes through the outer edges of the destination region.
template <int NC, int P>
auto budget_residual_2d(solution_2d<NC, P> const& src, solution_2d<NC, P> const& dst, workspace_2d<NC, P> const& ws,
                        double nu_x, double nu_y) -> std::vector<double>
{
    int const nx = dst.count_x(), ny = dst.count_y();
    double const area = dst.x.spacing() * dst.y.spacing();
    std::vector<double> out(NC);
    std::vector<double> dest(static_cast<std::size_t>(nx) * ny), pred(dest.size());
    for (int c = 0; c < NC; ++c) {
        for (int r = 1; r <= ny; ++r)
            for (int s = 1; s <= nx; ++s) {
                auto const [a, b] = staggered_sources(dst.x, dst.active, s);
                auto const [lo, hi] = staggered_sources(dst.y, dst.active, r);
                auto const& ll = ws.sources[src.index(a, lo)];
                auto const& lr = ws.sources[src.index(b, lo)];
                auto const& ur = ws.sources[src.index(b, hi)];
                auto const& ul = ws.sources[src.index(a, hi)];
                double p = 0.25 * (ll.quarter[c][0] + ul.quarter[c][1] + lr.quarter[c][2] + ur.quarter[c][3]);
                if (s == 1)
                    p += 0.5 * nu_x * (ll.flux[c][0] + ul.flux[c][1]);
                if (s == nx)
                    p -= 0.5 * nu_x * (lr.flux[c][0] + ur.flux[c][1]);
                if (r == 1)
                    p += 0.5 * nu_y * (ll.flux[c][2] + lr.flux[c][3]);
                if (r == ny)
                    p -= 0.5 * nu_y * (ul.flux[c][2] + ur.flux[c][3]);
                std::size_t const k = static_cast<std::size_t>(r - 1) * nx + (s - 1);
                pred[k] = p;
                dest[k] = cell_average_of<P>(dst(s, r)[c]);
            }
        out[c] = (pairwise_sum(dest) - pairwise_sum(pred)) * area;
    }
    return out;
}

/// Largest value of S_x/dx + S_y/dy over the active cells.
template <class Physics, int NC, int P>
auto max_inverse_time_2d(solution_2d<NC, P> const& u, Physics const& phys) -> double
{
    double const dx = u.x.spacing(), dy = u.y.spacing();
    double m = 0.0;
    for (int r = 1; r <= u.count_y(); ++r)
        for (int s = 1; s <= u.count_x(); ++s) {
            state<NC> w{};
            for (int c = 0; c < NC; ++c)
                w[c] = u(s, r)[c][0];
            auto const sp = phys.max_speeds(w);
            m = std::max(m, sp[0] / dx + sp[1] / dy);
        }
    return m;
}

template <int NC, int P>
struct run_result_2d
{
    solution_2d<NC, P> state;
    int half_steps = 0;
    conservation_monitor conservation;
};

template <int NC, int P>
using observer_2d = std::function<void(solution_2d<NC, P> const&)>;

template <class Physics, int P>
auto run_2d(solution_2d<Physics::components, P> u, Physics const& phys, boundary_set const& bcs, scheme_config const& cfg,
            double t_end, observer_2d<Physics::components, P> const& observe = {})
    -> run_result_2d<Physics::components, P>
{
    constexpr int NC = Physics::components;
    cfg.validate();
    bcs.validate(2);
    std::array<bool, 2> const periodic{bcs.left.kind == bc_kind::periodic, bcs.bottom.kind == bc_kind::periodic};
    if (!(t_end >= u.time))
        throw config_error("end time precedes the initial time");

    run_result_2d<NC, P> res;
    auto const [t0, m0] = domain_totals_2d(u, periodic);
    res.conservation.start(t0, m0);

    double const dx = u.x.spacing(), dy = u.y.spacing();
    solution_2d<NC, P> v(u.x, u.y, other(u.active), u.time);
    workspace_2d<NC, P> ws;
    while (u.time < t_end) {
        fill_ghosts<Physics>(u, bcs);
        double const inv = max_inverse_time_2d(u, phys);
        double dt = inv > 0.0 ? cfg.cfl / inv : t_end - u.time;
        bool const last = u.time + dt >= t_end;
        if (last)
            dt = t_end - u.time;
        advance_half_step_2d<Physics, P>(u, v, phys, cfg, dt, ws, periodic);
        if (last)
            v.time = t_end;
        res.conservation.add_residual(budget_residual_2d(u, v, ws, dt / dx, dt / dy));
        std::swap(u, v);
        ++res.half_steps;
        if (observe)
            observe(u);
    }
    res.conservation.current = domain_totals_2d(u, periodic).first;
    res.state = std::move(u);
    return res;
}

/// L1 (mean) and L-infinity errors of the centre point values of component `c`, against
/// exact(x, y).
template <int NC, int P, class Exact>
auto error_norms_2d(solution_2d<NC, P> const& u, Exact&& exact, std::array<bool, 2> periodic, int c = 0) -> error_report
{
    int const nx = distinct_cells(u.x, u.active, periodic[0]);
    int const ny = distinct_cells(u.y, u.active, periodic[1]);
    std::vector<double> err(static_cast<std::size_t>(nx) * ny);
    error_report rep;
    for (int r = 1; r <= ny; ++r)
        for (int s = 1; s <= nx; ++s) {
            double const e = std::abs(u(s, r)[c][0] - exact(u.x.center(u.active, s), u.y.center(u.active, r)));
            err[static_cast<std::size_t>(r - 1) * nx + (s - 1)] = e;
            rep.linf = std::max(rep.linf, e);
        }
    rep.cells = nx * ny;
    rep.l1 = pairwise_sum(err) / rep.cells;
    return rep;
}

} // namespace wcc
