#pragma once

// One half-step of the 1D compact central scheme on a staggered mesh.
//
// Each destination cell spans the centres of its two source cells. From the space-time jet of
// every source cell we extract
//   - the half-cell averages towards each neighbour,
//   - the time-averaged flux through its centre over the half-step,
//   - the spatial derivatives extrapolated to the new time level (vertex values),
// and each destination cell is assembled from the summaries of its two sources.

#include "wcc/cauchy_kovalewski.hpp"
#include "wcc/limiter.hpp"
#include "wcc/mesh.hpp"
#include "wcc/parallel.hpp"
#include "wcc/scheme_config.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace wcc {

namespace detail {

template <int P>
struct scheme1d_coefficients
{
    // 1 / ((k+1)! 2^k)
    static constexpr auto make_half() -> std::array<double, P + 1>
    {
        std::array<double, P + 1> c{};
        double p2 = 1.0;
        for (int k = 0; k <= P; ++k) {
            c[k] = 1.0 / (factorial(k + 1) * p2);
            p2 *= 2.0;
        }
        return c;
    }

    // 1 / (b+1)!
    static constexpr auto make_time() -> std::array<double, P + 1>
    {
        std::array<double, P + 1> c{};
        for (int b = 0; b <= P; ++b)
            c[b] = 1.0 / factorial(b + 1);
        return c;
    }

    // [1 - (-1)^m] / (m! 2^m)
    static constexpr auto make_correction() -> std::array<double, P + 1>
    {
        std::array<double, P + 1> c{};
        double p2 = 1.0;
        for (int m = 0; m <= P; ++m) {
            c[m] = (m % 2 == 1) ? 2.0 / (factorial(m) * p2) : 0.0;
            p2 *= 2.0;
        }
        return c;
    }

    // [1 + (-1)^k] / ((k+1)! 2^(k+1)) for k >= 2
    static constexpr auto make_point() -> std::array<double, P + 1>
    {
        std::array<double, P + 1> c{};
        double p2 = 2.0;
        for (int k = 0; k <= P; ++k) {
            c[k] = (k >= 2 && k % 2 == 0) ? 2.0 / (factorial(k + 1) * p2) : 0.0;
            p2 *= 2.0;
        }
        return c;
    }

    static constexpr auto half = make_half();
    static constexpr auto time = make_time();
    static constexpr auto correction = make_correction();
    static constexpr auto point = make_point();
};

} // namespace detail

/// Average of the cell polynomial over its right half, [0, 1/2] in scaled units.
template <int P>
constexpr auto half_cell_average_right(std::array<double, P + 1> const& u) noexcept -> double
{
    double s = 0.0;
    for (int k = 0; k <= P; ++k)
        s += detail::scheme1d_coefficients<P>::half[k] * u[k];
    return s;
}

/// Average over the left half, [-1/2, 0].
template <int P>
constexpr auto half_cell_average_left(std::array<double, P + 1> const& u) noexcept -> double
{
    double s = 0.0;
    for (int k = 0; k <= P; ++k)
        s += (k % 2 == 0 ? 1.0 : -1.0) * detail::scheme1d_coefficients<P>::half[k] * u[k];
    return s;
}

/// Flux averaged over the half-step from its scaled time derivatives f_{0x,bt}.
template <int P>
constexpr auto time_averaged_flux(std::array<double, P + 1> const& ft) noexcept -> double
{
    double s = 0.0;
    for (int b = 0; b <= P; ++b)
        s += detail::scheme1d_coefficients<P>::time[b] * ft[b];
    return s;
}

/// Spatial derivatives at the new time level from a space-time jet:
/// V_k = sum_m u_{kx,mt} / m!.
template <int P>
constexpr auto vertex_values(jet<2, P> const& u) noexcept -> std::array<double, P + 1>
{
    std::array<double, P + 1> v{};
    for (int k = 0; k <= P; ++k) {
        double s = 0.0;
        for (int m = 0; m + k <= P; ++m)
            s += u.at({k, m}) / detail::factorial(m);
        v[k] = s;
    }
    return v;
}

/// Cell average of the destination cell from its two source summaries.
constexpr auto cell_average_update_1d(double right_half_of_left, double left_half_of_right, double flux_left,
                                      double flux_right, double nu) noexcept -> double
{
    return 0.5 * (right_half_of_left + left_half_of_right) + nu * (flux_left - flux_right);
}

/// Jet form: `left` is anchored at the lower vertex, `right` at the upper one.
template <int P>
constexpr auto cell_average_update_1d(jet<2, P> const& left_u, jet<2, P> const& left_f, jet<2, P> const& right_u,
                                      jet<2, P> const& right_f, double nu) noexcept -> double
{
    std::array<double, P + 1> ul{}, ur{}, fl{}, fr{};
    for (int k = 0; k <= P; ++k) {
        ul[k] = left_u.at({k, 0});
        ur[k] = right_u.at({k, 0});
        fl[k] = left_f.at({0, k});
        fr[k] = right_f.at({0, k});
    }
    return cell_average_update_1d(half_cell_average_right<P>(ul), half_cell_average_left<P>(ur),
                                  time_averaged_flux<P>(fl), time_averaged_flux<P>(fr), nu);
}

/// Derivatives of the destination cell at its centre from the vertex values of both
/// sources, highest order first. Slot 0 of the result is unused (zero).
template <int P>
constexpr auto derivative_update_1d(std::array<double, P + 1> const& left, std::array<double, P + 1> const& right) noexcept
    -> std::array<double, P + 1>
{
    std::array<double, P + 1> d{};
    for (int k = P - 1; k >= 0; --k) {
        double s = right[k] - left[k];
        for (int m = 3; m <= P - k; ++m)
            s -= detail::scheme1d_coefficients<P>::correction[m] * d[k + m];
        d[k + 1] = s;
    }
    return d;
}

/// Centre value from the cell average and the derivatives (slots 1..P).
template <int P>
constexpr auto recover_point_value_1d(double average, std::array<double, P + 1> const& d) noexcept -> double
{
    double u = average;
    for (int k = 2; k <= P; ++k)
        u -= detail::scheme1d_coefficients<P>::point[k] * d[k];
    return u;
}

/// Cell average of a polynomial given by centre value and derivatives.
template <int P>
constexpr auto cell_average_of_1d(std::array<double, P + 1> const& u) noexcept -> double
{
    double a = u[0];
    for (int k = 2; k <= P; ++k)
        a += detail::scheme1d_coefficients<P>::point[k] * u[k];
    return a;
}

// ---------------------------------------------------------------------------------------
// Half-step driver
// ---------------------------------------------------------------------------------------

/// Per-source-cell data consumed by the destination assembly.
template <int NC, int P>
struct source_summary_1d
{
    std::array<std::array<double, P + 1>, NC> vertex{};
    std::array<double, NC> right_half{};
    std::array<double, NC> left_half{};
    std::array<double, NC> flux{};
};

template <int NC, int P>
struct workspace_1d
{
    std::vector<source_summary_1d<NC, P>> sources;
};

namespace detail {

inline auto cell_context(char const* what, int s, double t, std::string const& why) -> std::string
{
    std::ostringstream os;
    os.precision(10);
    os << what << " " << s << " at t=" << t << ": " << why;
    return os.str();
}

template <class Physics, int P>
auto summarize_1d(typename solution_1d<Physics::components, P>::cell const& cell, Physics const& phys, double nu)
    -> source_summary_1d<Physics::components, P>
{
    constexpr int NC = Physics::components;
    auto const st = cauchy_kovalewski_1d<Physics, P>(cell, phys, {nu, 0.0});
    source_summary_1d<NC, P> out;
    for (int c = 0; c < NC; ++c) {
        std::array<double, P + 1> u{}, ft{};
        for (int k = 0; k <= P; ++k) {
            u[k] = st.u[c].at({k, 0});
            ft[k] = st.f[c].at({0, k});
        }
        out.vertex[c] = vertex_values<P>(st.u[c]);
        out.right_half[c] = half_cell_average_right<P>(u);
        out.left_half[c] = half_cell_average_left<P>(u);
        out.flux[c] = time_averaged_flux<P>(ft);
    }
    return out;
}

} // namespace detail

/// Advances `src` (ghosts filled) by a half-step dt into `dst`, which ends up on the other
/// parity at time src.time + dt.
template <class Physics, int P>
void advance_half_step_1d(solution_1d<Physics::components, P> const& src, solution_1d<Physics::components, P>& dst,
                          Physics const& phys, scheme_config const& cfg, double dt, workspace_1d<Physics::components, P>& ws)
{
    constexpr int NC = Physics::components;
    double const nu = dt / src.x.spacing();
    parity const to = other(src.active);

    if (dst.cells.size() != src.cells.size())
        dst = solution_1d<NC, P>(src.x, to, src.time);
    dst.x = src.x;
    dst.active = to;
    dst.time = src.time + dt;

    // Sources needed: original 1..N+1, or staggered 0..N+1.
    int const s_lo = src.active == parity::original ? 1 : 0;
    int const s_hi = src.x.n + 1;
    ws.sources.resize(src.cells.size());
    parallel_for(s_lo, s_hi + 1, [&](int s) {
        try {
            ws.sources[static_cast<std::size_t>(s)] = detail::summarize_1d<Physics, P>(src(s), phys, nu);
        } catch (physics_error const& e) {
            throw physics_error(detail::cell_context("source cell", s, src.time, e.what()));
        } catch (division_by_zero const& e) {
            throw physics_error(detail::cell_context("source cell", s, src.time, e.what()));
        }
    });

    limiter_params const prm = cfg.limiter;
    int const count = dst.x.cells(to);
    parallel_for(1, count + 1, [&](int s) {
        auto const [a, b] = staggered_sources(dst.x, to, s);
        auto const& L = ws.sources[static_cast<std::size_t>(a)];
        auto const& R = ws.sources[static_cast<std::size_t>(b)];
        auto& cell = dst(s);
        std::array<double, NC> avg{};
        for (int c = 0; c < NC; ++c) {
            avg[c] = cell_average_update_1d(L.right_half[c], R.left_half[c], L.flux[c], R.flux[c], nu);
            auto const d = derivative_update_1d<P>(L.vertex[c], R.vertex[c]);
            cell[c] = jet<1, P>{};
            for (int k = 1; k <= P; ++k)
                cell[c][k] = d[k];
            cell[c][0] = recover_point_value_1d<P>(avg[c], d);
            if (!std::isfinite(avg[c]))
                throw physics_error(detail::cell_context("cell", s, dst.time, "non-finite cell average"));
        }
        if (!cfg.weighted)
            return;

        std::array<std::array<double, NC>, 2> vertex{};
        for (int c = 0; c < NC; ++c) {
            vertex[0][c] = L.vertex[c][0];
            vertex[1][c] = R.vertex[c][0];
        }
        auto scalar = [&](std::array<double, P + 1> const& u0, double mean, std::array<double, 2> const& v) {
            return limit_scalar_1d<P>(u0, mean, v[0], v[1], prm);
        };
        try {
            if constexpr (Physics::has_characteristics) {
                if (cfg.characteristic) {
                    auto const es = phys.characteristics(avg);
                    limit_characteristic<1, P, NC>(cell, avg, vertex, es.left, es.right, scalar);
                    return;
                }
            }
            limit_components<1, P, NC>(cell, avg, vertex, scalar);
        } catch (physics_error const& e) {
            throw physics_error(detail::cell_context("cell", s, dst.time, e.what()));
        }
    });
}

} // namespace wcc
