#pragma once

// Cauchy-Kovalewski procedure: completes a space-time jet from its spatial part by
// repeatedly substituting the conservation law, u_t = -f(u)_x (- g(u)_y in 2D).
//
// In scaled variables (every derivative multiplied by the matching spacing powers, the
// time spacing being the half-step) the substitution reads
//
//     u_{kx,bt}      = -nu_x f_{(k+1)x,(b-1)t}
//     u_{kx,ly,bt}   = -nu_x f_{(k+1)x,ly,(b-1)t} - nu_y g_{kx,(l+1)y,(b-1)t}
//
// Time levels are filled in increasing order b = 1..P. At level b the flux jet only has to
// be exact for time orders <= b-1, which holds because a Leibniz coefficient never depends
// on input coefficients of higher order in any variable.

#include "wcc/jet.hpp"
#include "wcc/physics.hpp"

#include <array>

namespace wcc {

/// Ratios of the half-step duration to the mesh spacings.
struct scaled_ratios
{
    double nu_x = 0.0;
    double nu_y = 0.0;
};

template <int NC, int P>
using spatial_jets_1d = std::array<jet<1, P>, NC>;

template <int NC, int P>
using spatial_jets_2d = std::array<jet<2, P>, NC>;

template <int NC, int P>
struct space_time_jets_1d
{
    std::array<jet<2, P>, NC> u; ///< variables (x, t)
    std::array<jet<2, P>, NC> f;
};

template <int NC, int P>
struct space_time_jets_2d
{
    std::array<jet<3, P>, NC> u; ///< variables (x, y, t)
    std::array<jet<3, P>, NC> f;
    std::array<jet<3, P>, NC> g;
};

namespace detail {

template <int P>
struct ck_tables_1d
{
    using st = jet_layout<2, P>;
    using sp = jet_layout<1, P>;

    struct entry
    {
        int target;
        int flux;
    };

    // spatial slot k -> space-time slot (k, 0)
    static constexpr auto make_embed() -> std::array<int, sp::size>
    {
        std::array<int, sp::size> e{};
        for (int k = 0; k <= P; ++k)
            e[k] = st::index_of({k, 0});
        return e;
    }

    static constexpr auto make_entries() -> std::array<entry, st::size>
    {
        std::array<entry, st::size> out{};
        int n = 0;
        for (int b = 1; b <= P; ++b)
            for (int k = 0; k + b <= P; ++k)
                out[n++] = {st::index_of({k, b}), st::index_of({k + 1, b - 1})};
        return out;
    }

    static constexpr auto make_level_end() -> std::array<int, P + 1>
    {
        std::array<int, P + 1> out{};
        int n = 0;
        for (int b = 1; b <= P; ++b) {
            n += P - b + 1;
            out[b] = n;
        }
        return out;
    }

    static constexpr auto embed = make_embed();
    static constexpr auto entries = make_entries();
    static constexpr auto level_end = make_level_end();
};

template <int P>
struct ck_tables_2d
{
    using st = jet_layout<3, P>;
    using sp = jet_layout<2, P>;

    struct entry
    {
        int target;
        int flux_x;
        int flux_y;
    };

    static constexpr auto make_embed() -> std::array<int, sp::size>
    {
        std::array<int, sp::size> e{};
        for (int i = 0; i < sp::size; ++i)
            e[i] = st::index_of({sp::indices[i][0], sp::indices[i][1], 0});
        return e;
    }

    static constexpr int entry_count = st::size - sp::size;

    static constexpr auto make_entries() -> std::array<entry, entry_count>
    {
        std::array<entry, entry_count> out{};
        int n = 0;
        for (int b = 1; b <= P; ++b)
            for (int k = 0; k + b <= P; ++k)
                for (int l = 0; k + l + b <= P; ++l)
                    out[n++] = {st::index_of({k, l, b}), st::index_of({k + 1, l, b - 1}),
                                st::index_of({k, l + 1, b - 1})};
        return out;
    }

    static constexpr auto make_level_end() -> std::array<int, P + 1>
    {
        std::array<int, P + 1> out{};
        int n = 0;
        for (int b = 1; b <= P; ++b) {
            int const m = P - b;
            n += (m + 1) * (m + 2) / 2;
            out[b] = n;
        }
        return out;
    }

    static constexpr auto embed = make_embed();
    static constexpr auto entries = make_entries();
    static constexpr auto level_end = make_level_end();
};

} // namespace detail

/// Completes the space-time jets of a 1D cell and returns them together with the flux jet,
/// which is exact through total order P.
template <class Physics, int P>
auto cauchy_kovalewski_1d(spatial_jets_1d<Physics::components, P> const& spatial, Physics const& physics,
                          scaled_ratios const& ratios) -> space_time_jets_1d<Physics::components, P>
{
    constexpr int NC = Physics::components;
    using tables = detail::ck_tables_1d<P>;

    space_time_jets_1d<NC, P> out;
    for (int c = 0; c < NC; ++c)
        for (int k = 0; k <= P; ++k)
            out.u[c][tables::embed[k]] = spatial[c][k];

    for (int b = 1; b <= P; ++b) {
        auto const f = physics.flux(out.u);
        for (int e = tables::level_end[b - 1]; e < tables::level_end[b]; ++e) {
            auto const& en = tables::entries[e];
            for (int c = 0; c < NC; ++c)
                out.u[c][en.target] = -ratios.nu_x * f[c][en.flux];
        }
    }
    out.f = physics.flux(out.u);
    return out;
}

/// 2D analogue of cauchy_kovalewski_1d, returning the u, f and g jets.
template <class Physics, int P>
auto cauchy_kovalewski_2d(spatial_jets_2d<Physics::components, P> const& spatial, Physics const& physics,
                          scaled_ratios const& ratios) -> space_time_jets_2d<Physics::components, P>
{
    constexpr int NC = Physics::components;
    using tables = detail::ck_tables_2d<P>;

    space_time_jets_2d<NC, P> out;
    for (int c = 0; c < NC; ++c)
        for (int i = 0; i < jet_layout<2, P>::size; ++i)
            out.u[c][tables::embed[i]] = spatial[c][i];

    for (int b = 1; b <= P; ++b) {
        auto const fg = physics.fluxes(out.u);
        for (int e = tables::level_end[b - 1]; e < tables::level_end[b]; ++e) {
            auto const& en = tables::entries[e];
            for (int c = 0; c < NC; ++c)
                out.u[c][en.target] = -ratios.nu_x * fg[0][c][en.flux_x] - ratios.nu_y * fg[1][c][en.flux_y];
        }
    }
    auto const fg = physics.fluxes(out.u);
    out.f = fg[0];
    out.g = fg[1];
    return out;
}

} // namespace wcc
