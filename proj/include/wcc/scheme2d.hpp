#pragma once

// One half-step of the 2D compact central scheme.
//
// A destination cell spans the centres of four source cells, its vertices, labelled
//   UL ---- UR
//   |        |
//   LL ---- LR
// Each source contributes the quarter of its own cell that lies inside the destination and
// half of the flux through the two destination faces passing through its centre. The
// derivatives come from the vertex data extrapolated to the new time level, highest total
// order first; mixed derivatives reachable through both the x and the y difference are
// averaged.

#include "wcc/cauchy_kovalewski.hpp"
#include "wcc/limiter.hpp"
#include "wcc/mesh.hpp"
#include "wcc/parallel.hpp"
#include "wcc/scheme1d.hpp"
#include "wcc/scheme_config.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace wcc {

enum vertex_slot : int
{
    LL = 0,
    LR = 1,
    UR = 2,
    UL = 3
};

template <int P>
using dofs_2d = std::array<double, jet_layout<2, P>::size>;

namespace detail {

template <int P>
struct scheme2d_coefficients
{
    using layout = jet_layout<2, P>;
    static constexpr int n = layout::size;

    // 1 / ((k+1)! 2^k (l+1)! 2^l): average over the upper-right quarter
    static constexpr auto make_quarter() -> std::array<double, n>
    {
        std::array<double, n> c{};
        for (int i = 0; i < n; ++i) {
            auto const& a = layout::indices[i];
            c[i] = 1.0 / (factorial(a[0] + 1) * factorial(a[1] + 1) * (1 << a[0]) * (1 << a[1]));
        }
        return c;
    }

    // [1+(-1)^k][1+(-1)^l] / ((k+1)!(l+1)! 2^(k+l+2))
    static constexpr auto make_point() -> std::array<double, n>
    {
        std::array<double, n> c{};
        for (int i = 1; i < n; ++i) {
            auto const& a = layout::indices[i];
            if (a[0] % 2 == 0 && a[1] % 2 == 0)
                c[i] = 4.0 / (factorial(a[0] + 1) * factorial(a[1] + 1) * (1 << (a[0] + a[1] + 2)));
        }
        return c;
    }

    static constexpr auto quarter = make_quarter();
    static constexpr auto point = make_point();
};

// 2 / (2^(s+t) s! t!): weight of D_{k+s,l+t} in the half-difference of vertex data
constexpr auto route_weight(int s, int t) noexcept -> double
{
    return 2.0 / (factorial(s) * factorial(t) * (1 << (s + t)));
}

} // namespace detail

/// Quarter-cell averages {RU, RD, LU, LD} of a polynomial given by its scaled DOFs.
template <int P>
constexpr auto quarter_averages_2d(dofs_2d<P> const& u) noexcept -> std::array<double, 4>
{
    using layout = jet_layout<2, P>;
    std::array<double, 4> q{};
    for (int i = 0; i < layout::size; ++i) {
        auto const& a = layout::indices[i];
        double const t = detail::scheme2d_coefficients<P>::quarter[i] * u[i];
        double const sx = a[0] % 2 == 0 ? 1.0 : -1.0;
        double const sy = a[1] % 2 == 0 ? 1.0 : -1.0;
        q[0] += t;
        q[1] += sy * t;
        q[2] += sx * t;
        q[3] += sx * sy * t;
    }
    return q;
}

/// Time-averaged flux through half a face: {f_U, f_D, g_R, g_L}. f_U/f_D average F over the
/// upper/lower half of the vertical line through the centre, g_R/g_L average G over the
/// right/left half of the horizontal line.
template <int P>
constexpr auto half_face_fluxes_2d(jet<3, P> const& f, jet<3, P> const& g) noexcept -> std::array<double, 4>
{
    std::array<double, 4> out{};
    for (int k = 0; k <= P; ++k)
        for (int l = 0; k + l <= P; ++l) {
            double const w = 1.0 / (detail::factorial(k + 1) * (1 << k) * detail::factorial(l + 1));
            double const sign = k % 2 == 0 ? 1.0 : -1.0;
            double const fk = f.at({0, k, l});
            double const gk = g.at({k, 0, l});
            out[0] += w * fk;
            out[1] += sign * w * fk;
            out[2] += w * gk;
            out[3] += sign * w * gk;
        }
    return out;
}

/// Spatial derivatives at the new time level: V_{kl} = sum_m u_{kx,ly,mt} / m!.
template <int P>
constexpr auto vertex_values_2d(jet<3, P> const& u) noexcept -> dofs_2d<P>
{
    using layout = jet_layout<2, P>;
    dofs_2d<P> v{};
    for (int i = 0; i < layout::size; ++i) {
        auto const& a = layout::indices[i];
        double s = 0.0;
        for (int m = 0; a[0] + a[1] + m <= P; ++m)
            s += u.at({a[0], a[1], m}) / detail::factorial(m);
        v[i] = s;
    }
    return v;
}

/// Cell average from the quarters of the four sources and their half-face fluxes.
/// quarters[v] and fluxes[v] hold the {RU,RD,LU,LD} and {fU,fD,gR,gL} of vertex v.
constexpr auto cell_average_update_2d(std::array<std::array<double, 4>, 4> const& quarters,
                                      std::array<std::array<double, 4>, 4> const& fluxes, double nu_x,
                                      double nu_y) noexcept -> double
{
    double const q = 0.25 * (quarters[LL][0] + quarters[UL][1] + quarters[LR][2] + quarters[UR][3]);
    double const fx = 0.5 * nu_x * (fluxes[LL][0] + fluxes[UL][1] - fluxes[LR][0] - fluxes[UR][1]);
    double const gy = 0.5 * nu_y * (fluxes[LL][2] + fluxes[LR][3] - fluxes[UL][2] - fluxes[UR][3]);
    return q + fx + gy;
}

/// Derivatives of the destination cell from the vertex data of its four sources, ordered
/// LL, LR, UR, UL. Slot 0 is unused (zero).
template <int P>
constexpr auto derivative_update_2d(std::array<dofs_2d<P>, 4> const& w) noexcept -> dofs_2d<P>
{
    using layout = jet_layout<2, P>;
    dofs_2d<P> d{};
    for (int total = P; total >= 1; --total) {
        for (int kx = total; kx >= 0; --kx) {
            int const ky = total - kx;
            double sum = 0.0;
            int routes = 0;
            if (kx >= 1) {
                // half x-difference of the (kx-1, ky) vertex data
                int const src = layout::index_of({kx - 1, ky});
                double r = 0.5 * (w[LR][src] + w[UR][src] - w[LL][src] - w[UL][src]);
                for (int s = 1; kx - 1 + s + ky <= P; s += 2)
                    for (int t = 0; kx - 1 + s + ky + t <= P; t += 2)
                        if (s != 1 || t != 0)
                            r -= detail::route_weight(s, t) * d[layout::index_of({kx - 1 + s, ky + t})];
                sum += r;
                ++routes;
            }
            if (ky >= 1) {
                int const src = layout::index_of({kx, ky - 1});
                double r = 0.5 * (w[UL][src] + w[UR][src] - w[LL][src] - w[LR][src]);
                for (int t = 1; kx + ky - 1 + t <= P; t += 2)
                    for (int s = 0; kx + s + ky - 1 + t <= P; s += 2)
                        if (t != 1 || s != 0)
                            r -= detail::route_weight(s, t) * d[layout::index_of({kx + s, ky - 1 + t})];
                sum += r;
                ++routes;
            }
            d[layout::index_of({kx, ky})] = sum / routes;
        }
    }
    return d;
}

template <int P>
constexpr auto recover_point_value_2d(double average, dofs_2d<P> const& d) noexcept -> double
{
    double u = average;
    for (int i = 1; i < jet_layout<2, P>::size; ++i)
        u -= detail::scheme2d_coefficients<P>::point[i] * d[i];
    return u;
}

template <int P>
constexpr auto cell_average_of_2d(dofs_2d<P> const& u) noexcept -> double
{
    double a = u[0];
    for (int i = 1; i < jet_layout<2, P>::size; ++i)
        a += detail::scheme2d_coefficients<P>::point[i] * u[i];
    return a;
}

template <int P>
auto cell_average_of(jet<2, P> const& u) -> double
{
    dofs_2d<P> c{};
    for (int i = 0; i < jet_layout<2, P>::size; ++i)
        c[i] = u[i];
    return cell_average_of_2d<P>(c);
}

// ---------------------------------------------------------------------------------------
// Half-step driver
// ---------------------------------------------------------------------------------------

template <int NC, int P>
struct source_summary_2d
{
    std::array<dofs_2d<P>, NC> vertex{};
    std::array<std::array<double, 4>, NC> quarter{}; ///< RU, RD, LU, LD
    std::array<std::array<double, 4>, NC> flux{};    ///< fU, fD, gR, gL
};

template <int NC, int P>
struct workspace_2d
{
    std::vector<source_summary_2d<NC, P>> sources;
    std::vector<std::array<double, NC>> averages; ///< unlimited destination averages
};

namespace detail {

template <class Physics, int P>
auto summarize_2d(spatial_jets_2d<Physics::components, P> const& cell, Physics const& phys, scaled_ratios const& nu)
    -> source_summary_2d<Physics::components, P>
{
    constexpr int NC = Physics::components;
    auto const st = cauchy_kovalewski_2d<Physics, P>(cell, phys, nu);
    source_summary_2d<NC, P> out;
    for (int c = 0; c < NC; ++c) {
        dofs_2d<P> u{};
        for (int i = 0; i < jet_layout<2, P>::size; ++i)
            u[i] = cell[c][i];
        out.vertex[c] = vertex_values_2d<P>(st.u[c]);
        out.quarter[c] = quarter_averages_2d<P>(u);
        out.flux[c] = half_face_fluxes_2d<P>(st.f[c], st.g[c]);
    }
    return out;
}

/// Neighbours of `s` used for a central difference on the destination mesh: one-sided at
/// the ends, wrapped when periodic. `span` counts the cell steps between them.
struct central_stencil
{
    int lo;
    int hi;
    int span;
};

inline auto central_neighbours(axis const& ax, parity p, int s, bool periodic) -> central_stencil
{
    int const n = ax.cells(p);
    // the original parity repeats its first cell at n
    int const period = p == parity::original ? n - 1 : n;
    central_stencil st{s - 1, s + 1, 2};
    if (st.lo < 1) {
        if (periodic)
            st.lo += period;
        else {
            st.lo = s;
            --st.span;
        }
    }
    if (st.hi > n) {
        if (periodic)
            st.hi -= period;
        else {
            st.hi = s;
            --st.span;
        }
    }
    return st;
}

} // namespace detail

/// Advances `src` (ghosts filled) by a half-step dt into `dst` on the other parity.
template <class Physics, int P>
void advance_half_step_2d(solution_2d<Physics::components, P> const& src, solution_2d<Physics::components, P>& dst,
                          Physics const& phys, scheme_config const& cfg, double dt,
                          workspace_2d<Physics::components, P>& ws, std::array<bool, 2> periodic = {false, false})
{
    constexpr int NC = Physics::components;
    using layout = jet_layout<2, P>;
    scaled_ratios const nu{dt / src.x.spacing(), dt / src.y.spacing()};
    parity const to = other(src.active);

    if (dst.cells.size() != src.cells.size())
        dst = solution_2d<NC, P>(src.x, src.y, to, src.time);
    dst.x = src.x;
    dst.y = src.y;
    dst.active = to;
    dst.time = src.time + dt;

    int const lo = src.active == parity::original ? 1 : 0;
    int const hx = src.x.n + 1;
    int const hy = src.y.n + 1;
    int const width = hx - lo + 1;
    ws.sources.resize(src.cells.size());
    parallel_for(0, width * (hy - lo + 1), [&](int k) {
        int const s = lo + k % width;
        int const r = lo + k / width;
        try {
            ws.sources[src.index(s, r)] = detail::summarize_2d<Physics, P>(src(s, r), phys, nu);
        } catch (physics_error const& e) {
            throw physics_error(detail::cell_context("source cell", s, src.time, std::string("row ") +
                                                                                     std::to_string(r) + ": " + e.what()));
        } catch (division_by_zero const& e) {
            throw physics_error(detail::cell_context("source cell", s, src.time, std::string("row ") +
                                                                                     std::to_string(r) + ": " + e.what()));
        }
    });

    int const nx = dst.x.cells(to);
    int const ny = dst.y.cells(to);
    ws.averages.resize(dst.cells.size());
    auto vertices_of = [&](int s, int r) {
        auto const [a, b] = staggered_sources(dst.x, to, s);
        auto const [c, d] = staggered_sources(dst.y, to, r);
        return std::array<source_summary_2d<NC, P> const*, 4>{
            &ws.sources[src.index(a, c)], &ws.sources[src.index(b, c)], &ws.sources[src.index(b, d)],
            &ws.sources[src.index(a, d)]};
    };

    parallel_for(0, nx * ny, [&](int k) {
        int const s = 1 + k % nx;
        int const r = 1 + k / nx;
        auto const v = vertices_of(s, r);
        auto& cell = dst(s, r);
        auto& avg = ws.averages[dst.index(s, r)];
        for (int c = 0; c < NC; ++c) {
            std::array<std::array<double, 4>, 4> q{}, f{};
            std::array<dofs_2d<P>, 4> w{};
            for (int m = 0; m < 4; ++m) {
                q[m] = v[m]->quarter[c];
                f[m] = v[m]->flux[c];
                w[m] = v[m]->vertex[c];
            }
            avg[c] = cell_average_update_2d(q, f, nu.nu_x, nu.nu_y);
            if (!std::isfinite(avg[c]))
                throw physics_error(detail::cell_context("cell", s, dst.time, "row " + std::to_string(r) +
                                                                                  ": non-finite cell average"));
            auto const d = derivative_update_2d<P>(w);
            for (int i = 1; i < layout::size; ++i)
                cell[c][i] = d[i];
            cell[c][0] = recover_point_value_2d<P>(avg[c], d);
        }
    });

    if (!cfg.weighted)
        return;

    limiter_params const prm = cfg.limiter;
    double const dx = dst.x.spacing(), dy = dst.y.spacing();
    auto scalar = [&](dofs_2d<P> const& u0, double mean, std::array<double, 4> const& vv) {
        return limit_scalar_2d<P>(u0, mean, vv, prm);
    };
    parallel_for(0, nx * ny, [&](int k) {
        int const s = 1 + k % nx;
        int const r = 1 + k / nx;
        auto const v = vertices_of(s, r);
        auto& cell = dst(s, r);
        auto const& avg = ws.averages[dst.index(s, r)];
        std::array<std::array<double, NC>, 4> vertex{};
        for (int m = 0; m < 4; ++m)
            for (int c = 0; c < NC; ++c)
                vertex[m][c] = v[m]->vertex[c][0];
        try {
            if constexpr (Physics::has_characteristics) {
                if (cfg.characteristic) {
                    // rotate to the gradient of the total energy density
                    constexpr int e = NC - 1;
                    auto at = [&](int ss, int rr) { return ws.averages[dst.index(ss, rr)][e]; };
                    auto const sx = detail::central_neighbours(dst.x, to, s, periodic[0]);
                    auto const sy = detail::central_neighbours(dst.y, to, r, periodic[1]);
                    double const gx = sx.span == 0 ? 0.0 : (at(sx.hi, r) - at(sx.lo, r)) / (sx.span * dx);
                    double const gy = sy.span == 0 ? 0.0 : (at(s, sy.hi) - at(s, sy.lo)) / (sy.span * dy);
                    double const theta = rotation_angle(gx, gy, avg[e]);
                    auto const es = phys.characteristics(avg, theta);
                    limit_characteristic<2, P, NC>(cell, avg, vertex, es.left, es.right, scalar);
                    return;
                }
            }
            limit_components<2, P, NC>(cell, avg, vertex, scalar);
        } catch (physics_error const& e) {
            throw physics_error(detail::cell_context("cell", s, dst.time, "row " + std::to_string(r) + ": " + e.what()));
        }
    });
}

} // namespace wcc
