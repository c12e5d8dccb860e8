#pragma once

// Staggered Cartesian meshes, cell storage and ghost-cell filling.
//
// Both parities share one storage convention per direction, with a single ghost layer:
//
//   original   cells centred at x_L + (s-1) dx,   interior s = 1..N+1, ghosts 0 and N+2
//   staggered  cells centred at x_L + (s-1/2) dx, interior s = 1..N,   ghosts 0 and N+1
//
// so a buffer of N+3 entries holds either parity. The two end cells of the original parity
// straddle the domain boundary. Original -> staggered builds staggered s from original s and
// s+1; staggered -> original builds original s from staggered s-1 and s.

#include "wcc/cauchy_kovalewski.hpp"
#include "wcc/errors.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace wcc {

enum class parity
{
    original,
    staggered
};

constexpr auto other(parity p) noexcept -> parity
{
    return p == parity::original ? parity::staggered : parity::original;
}

inline auto to_string(parity p) -> std::string { return p == parity::original ? "original" : "staggered"; }

/// One direction of a staggered mesh.
struct axis
{
    double lo = 0.0;
    double hi = 1.0;
    int n = 1; ///< staggered cell count

    auto spacing() const noexcept -> double { return (hi - lo) / n; }

    /// Interior cells on the given parity.
    auto cells(parity p) const noexcept -> int { return p == parity::original ? n + 1 : n; }

    /// Storage size including both ghosts (identical for the two parities).
    auto storage() const noexcept -> int { return n + 3; }

    auto center(parity p, int s) const noexcept -> double
    {
        return lo + (p == parity::original ? s - 1.0 : s - 0.5) * spacing();
    }

    /// Last interior storage index.
    auto last(parity p) const noexcept -> int { return cells(p); }

    void validate() const
    {
        if (!(hi > lo) || n < 1)
            throw config_error("mesh axis needs hi > lo and at least one cell");
    }
};

/// Storage index of the destination cell whose lower source neighbour is `s` on the active
/// parity `from`. Staggered s is fed by original (s, s+1); original s by staggered (s-1, s).
inline auto staggered_target_index(axis const& ax, parity from, int s) -> int
{
    if (from == parity::original) {
        if (s < 1 || s > ax.n)
            throw index_error("original index " + std::to_string(s) + " has no staggered target");
        return s;
    }
    if (s < 0 || s > ax.n)
        throw index_error("staggered index " + std::to_string(s) + " has no original target");
    return s + 1;
}

/// Source pair (lower, upper) of destination cell `s` on parity `to`.
inline auto staggered_sources(axis const& ax, parity to, int s) -> std::pair<int, int>
{
    if (s < 1 || s > ax.cells(to))
        throw index_error("destination index " + std::to_string(s) + " outside the " + to_string(to) + " mesh");
    return to == parity::staggered ? std::pair{s, s + 1} : std::pair{s - 1, s};
}

// ---------------------------------------------------------------------------------------
// Boundary conditions
// ---------------------------------------------------------------------------------------

enum class bc_kind
{
    periodic,
    non_reflective,
    reflective_wall,
    dirichlet_inflow,
    dmr_top
};

enum class side
{
    left,
    right,
    bottom,
    top
};

struct boundary_condition
{
    bc_kind kind = bc_kind::non_reflective;
    std::vector<double> state;     ///< conservative inflow state; post-shock state for dmr_top
    std::vector<double> alt_state; ///< pre-shock state for dmr_top
    /// reflective_wall only: ghost cells whose tangential centre is <= this value use the
    /// non-reflective rule instead.
    double wall_from = -INFINITY;

    static auto periodic() -> boundary_condition { return {bc_kind::periodic, {}, {}, -INFINITY}; }
    static auto open() -> boundary_condition { return {bc_kind::non_reflective, {}, {}, -INFINITY}; }
    static auto wall(double from = -INFINITY) -> boundary_condition
    {
        return {bc_kind::reflective_wall, {}, {}, from};
    }
    static auto inflow(std::vector<double> s) -> boundary_condition
    {
        return {bc_kind::dirichlet_inflow, std::move(s), {}, -INFINITY};
    }
};

/// Abscissa where the oblique Mach 10 shock meets the top boundary y = 1.
inline auto dmr_shock_foot(double t) noexcept -> double { return 1.0 / 6.0 + (1.0 + 20.0 * t) / std::sqrt(3.0); }

struct boundary_set
{
    boundary_condition left, right, bottom, top;

    void validate(int dims) const
    {
        if ((left.kind == bc_kind::periodic) != (right.kind == bc_kind::periodic))
            throw config_error("periodic boundaries must be paired (left/right)");
        if (dims == 2 && (bottom.kind == bc_kind::periodic) != (top.kind == bc_kind::periodic))
            throw config_error("periodic boundaries must be paired (bottom/top)");
    }
};

// ---------------------------------------------------------------------------------------
// Solution storage
// ---------------------------------------------------------------------------------------

template <int NC, int P>
struct solution_1d
{
    static constexpr int components = NC;
    static constexpr int degree = P;
    using cell = spatial_jets_1d<NC, P>;

    axis x;
    parity active = parity::original;
    double time = 0.0;
    std::vector<cell> cells;

    solution_1d() = default;
    explicit solution_1d(axis ax, parity p = parity::original, double t = 0.0)
        : x(ax), active(p), time(t), cells(static_cast<std::size_t>(ax.storage()))
    {
        ax.validate();
    }

    auto operator()(int s) -> cell& { return cells[static_cast<std::size_t>(s)]; }
    auto operator()(int s) const -> cell const& { return cells[static_cast<std::size_t>(s)]; }

    auto count() const noexcept -> int { return x.cells(active); }
    auto center(int s) const noexcept -> double { return x.center(active, s); }
};

template <int NC, int P>
struct solution_2d
{
    static constexpr int components = NC;
    static constexpr int degree = P;
    using cell = spatial_jets_2d<NC, P>;

    axis x;
    axis y;
    parity active = parity::original;
    double time = 0.0;
    std::vector<cell> cells;

    solution_2d() = default;
    solution_2d(axis ax, axis ay, parity p = parity::original, double t = 0.0)
        : x(ax), y(ay), active(p), time(t), cells(static_cast<std::size_t>(ax.storage()) * ay.storage())
    {
        ax.validate();
        ay.validate();
    }

    auto stride() const noexcept -> int { return x.storage(); }
    auto index(int s, int r) const noexcept -> std::size_t
    {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(x.storage()) + static_cast<std::size_t>(s);
    }
    auto operator()(int s, int r) -> cell& { return cells[index(s, r)]; }
    auto operator()(int s, int r) const -> cell const& { return cells[index(s, r)]; }

    auto count_x() const noexcept -> int { return x.cells(active); }
    auto count_y() const noexcept -> int { return y.cells(active); }
};

// ---------------------------------------------------------------------------------------
// Ghost filling
// ---------------------------------------------------------------------------------------

namespace detail {

/// Interior storage index a ghost copies from: (periodic partner, mirror/nearest partner).
struct ghost_sources
{
    int ghost;
    int periodic;
    int mirror;
    int nearest;
};

inline auto lower_ghost(axis const& ax, parity p) noexcept -> ghost_sources
{
    int const L = ax.last(p);
    return p == parity::staggered ? ghost_sources{0, L, 1, 1} : ghost_sources{0, L - 1, 2, 1};
}

inline auto upper_ghost(axis const& ax, parity p) noexcept -> ghost_sources
{
    int const L = ax.last(p);
    return p == parity::staggered ? ghost_sources{L + 1, 1, L, L} : ghost_sources{L + 1, 2, L - 1, L};
}

/// Mirror image across a wall normal to axis `dir`: derivative DOFs odd in the normal
/// direction change sign; the normal momentum gets the opposite parity.
template <class Jets, class Layout>
void mirror_cell(Jets& cell, int dir, int momentum)
{
    for (int c = 0; c < static_cast<int>(cell.size()); ++c)
        for (int i = 0; i < Layout::size; ++i) {
            bool const odd = (Layout::indices[i][dir] % 2) != 0;
            bool const flip = (c == momentum) ? !odd : odd;
            if (flip)
                cell[c][i] = -cell[c][i];
        }
}

template <class Jets>
void set_constant(Jets& cell, std::vector<double> const& s)
{
    if (static_cast<int>(s.size()) != static_cast<int>(cell.size()))
        throw config_error("boundary state has the wrong number of components");
    for (std::size_t c = 0; c < cell.size(); ++c) {
        cell[c] = {};
        cell[c][0] = s[c];
    }
}

} // namespace detail

/// Populates the two ghost cells of a 1D solution on its active parity.
template <class Physics, int NC, int P>
void fill_ghosts(solution_1d<NC, P>& u, boundary_set const& bcs)
{
    using layout = jet_layout<1, P>;
    auto apply = [&](boundary_condition const& bc, detail::ghost_sources const& g) {
        auto& ghost = u(g.ghost);
        switch (bc.kind) {
        case bc_kind::periodic:
            ghost = u(g.periodic);
            break;
        case bc_kind::non_reflective:
            ghost = u(g.nearest);
            break;
        case bc_kind::reflective_wall:
            ghost = u(g.mirror);
            detail::mirror_cell<typename solution_1d<NC, P>::cell, layout>(ghost, 0, Physics::momentum[0]);
            break;
        case bc_kind::dirichlet_inflow:
            detail::set_constant(ghost, bc.state);
            break;
        case bc_kind::dmr_top:
            throw config_error("the oblique-shock boundary is only defined on a top side");
        }
    };
    apply(bcs.left, detail::lower_ghost(u.x, u.active));
    apply(bcs.right, detail::upper_ghost(u.x, u.active));
}

/// Populates the ghost frame of a 2D solution: x-sides over the interior rows, then y-sides
/// over the full width so the corners pick up x-ghost data.
template <class Physics, int NC, int P>
void fill_ghosts(solution_2d<NC, P>& u, boundary_set const& bcs)
{
    using layout = jet_layout<2, P>;
    using cell_t = typename solution_2d<NC, P>::cell;
    parity const p = u.active;
    int const Lx = u.x.last(p);
    int const Ly = u.y.last(p);

    auto apply_x = [&](boundary_condition const& bc, detail::ghost_sources const& g) {
        for (int r = 1; r <= Ly; ++r) {
            auto& ghost = u(g.ghost, r);
            switch (bc.kind) {
            case bc_kind::periodic:
                ghost = u(g.periodic, r);
                break;
            case bc_kind::non_reflective:
                ghost = u(g.nearest, r);
                break;
            case bc_kind::reflective_wall:
                if (u.y.center(p, r) <= bc.wall_from) {
                    ghost = u(g.nearest, r);
                } else {
                    ghost = u(g.mirror, r);
                    detail::mirror_cell<cell_t, layout>(ghost, 0, Physics::momentum[0]);
                }
                break;
            case bc_kind::dirichlet_inflow:
                detail::set_constant(ghost, bc.state);
                break;
            case bc_kind::dmr_top:
                throw config_error("the oblique-shock boundary is only defined on a top side");
            }
        }
    };

    auto apply_y = [&](boundary_condition const& bc, detail::ghost_sources const& g, bool is_top) {
        for (int s = 0; s <= Lx + 1; ++s) {
            auto& ghost = u(s, g.ghost);
            switch (bc.kind) {
            case bc_kind::periodic:
                ghost = u(s, g.periodic);
                break;
            case bc_kind::non_reflective:
                ghost = u(s, g.nearest);
                break;
            case bc_kind::reflective_wall:
                if (u.x.center(p, s) <= bc.wall_from) {
                    ghost = u(s, g.nearest);
                } else {
                    ghost = u(s, g.mirror);
                    detail::mirror_cell<cell_t, layout>(ghost, 1, Physics::momentum[1]);
                }
                break;
            case bc_kind::dirichlet_inflow:
                detail::set_constant(ghost, bc.state);
                break;
            case bc_kind::dmr_top:
                if (!is_top)
                    throw config_error("the oblique-shock boundary is only defined on a top side");
                detail::set_constant(ghost, u.x.center(p, s) < dmr_shock_foot(u.time) ? bc.state : bc.alt_state);
                break;
            }
        }
    };

    apply_x(bcs.left, detail::lower_ghost(u.x, p));
    apply_x(bcs.right, detail::upper_ghost(u.x, p));
    apply_y(bcs.bottom, detail::lower_ghost(u.y, p), false);
    apply_y(bcs.top, detail::upper_ghost(u.y, p), true);
}

} // namespace wcc
