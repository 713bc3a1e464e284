#ifndef JACKSON_SQUARE_COVER_HPP
#define JACKSON_SQUARE_COVER_HPP

#include <jackson/sets.hpp>

#include <map>
#include <set>

namespace jackson::sets {

struct GridSquare {
    std::int64_t i, j; // [i delta, (i+1) delta] x [j delta, (j+1) delta]
    auto operator<=>(const GridSquare&) const = default;
};

/// Oriented edge of the cover boundary (interior on the left).
struct CoverEdge {
    cplx start, end;
};

/// K(E, delta): union of the origin-anchored closed delta-squares meeting E
/// (or meeting E_margin when built with a margin).
struct SquareCover {
    double delta = 0.0;
    std::vector<GridSquare> squares;            // sorted
    std::vector<CoverEdge> edges;               // boundary edges, CCW around the cover
    std::vector<std::vector<cplx>> loops;       // closed polylines (last vertex joins the first)

    double boundary_length() const { return delta * static_cast<double>(edges.size()); }
    bool contains(cplx z) const
    {
        const auto i = static_cast<std::int64_t>(std::floor(z.real() / delta));
        const auto j = static_cast<std::int64_t>(std::floor(z.imag() / delta));
        for (std::int64_t di = -1; di <= 0; ++di)
            for (std::int64_t dj = -1; dj <= 0; ++dj) {
                const GridSquare q{i + di, j + dj};
                if (!std::binary_search(squares.begin(), squares.end(), q)) continue;
                const double x0 = q.i * delta, y0 = q.j * delta, tol = 1e-12 * delta;
                if (z.real() >= x0 - tol && z.real() <= x0 + delta + tol && z.imag() >= y0 - tol &&
                    z.imag() <= y0 + delta + tol)
                    return true;
            }
        return false;
    }
};

namespace detail {

struct Rect {
    double x0, x1, y0, y1;
};

inline double rect_distance(const Rect& r, cplx z)
{
    const double dx = std::max({r.x0 - z.real(), 0.0, z.real() - r.x1});
    const double dy = std::max({r.y0 - z.imag(), 0.0, z.imag() - r.y1});
    return std::hypot(dx, dy);
}

/// Liang-Barsky clip: does segment [a,b] meet the closed rectangle?
inline bool segment_meets_rect(cplx a, cplx b, const Rect& r, double tol)
{
    double t0 = 0.0, t1 = 1.0;
    const double dx = b.real() - a.real(), dy = b.imag() - a.imag();
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.real() - (r.x0 - tol), (r.x1 + tol) - a.real(), a.imag() - (r.y0 - tol),
                         (r.y1 + tol) - a.imag()};
    for (int k = 0; k < 4; ++k) {
        if (p[k] == 0.0) {
            if (q[k] < 0.0) return false;
        } else {
            const double t = q[k] / p[k];
            if (p[k] < 0.0) t0 = std::max(t0, t);
            else t1 = std::min(t1, t);
        }
    }
    return t0 <= t1;
}

inline double piece_rect_distance(const Piece& p, const Rect& r, double tol)
{
    switch (p.kind) {
    case Piece::Kind::point: return rect_distance(r, p.a);
    case Piece::Kind::disk: return std::max(0.0, rect_distance(r, p.a) - p.r);
    case Piece::Kind::segment: {
        if (segment_meets_rect(p.a, p.b, r, tol)) return 0.0;
        double d = std::min(rect_distance(r, p.a), rect_distance(r, p.b));
        const cplx corners[4] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
        for (auto c : corners) d = std::min(d, segment_distance(p.a, p.b, c));
        return d;
    }
    }
    return inf;
}

inline double geometry_rect_distance(const Geometry& g, const Rect& r, double tol)
{
    const cplx corners[4] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
    for (const auto& f : g.fills)
        for (auto c : corners)
            if (inside_polygon(f, c)) return 0.0;
    double d = inf;
    for (const auto& p : g.pieces) d = std::min(d, piece_rect_distance(p, r, tol));
    return d;
}

} // namespace detail

/// Builds K(E_margin, delta); margin = 0 gives K(E, delta).
inline SquareCover square_cover(const CompactSetSpec& spec, double delta, double margin = 0.0)
{
    if (!(delta > 0.0)) throw rejection("square_cover: delta must be positive");
    const Geometry g = lower(spec);
    const Box b = bounding_box(g);
    const double tol = 1e-12 * std::max({1.0, delta, std::abs(b.xmax), std::abs(b.xmin), std::abs(b.ymax), std::abs(b.ymin)});
    const auto i0 = static_cast<std::int64_t>(std::floor((b.xmin - margin) / delta)) - 1;
    const auto i1 = static_cast<std::int64_t>(std::floor((b.xmax + margin) / delta)) + 1;
    const auto j0 = static_cast<std::int64_t>(std::floor((b.ymin - margin) / delta)) - 1;
    const auto j1 = static_cast<std::int64_t>(std::floor((b.ymax + margin) / delta)) + 1;

    SquareCover cover;
    cover.delta = delta;
    for (auto i = i0; i <= i1; ++i)
        for (auto j = j0; j <= j1; ++j) {
            const detail::Rect r{i * delta, (i + 1) * delta, j * delta, (j + 1) * delta};
            if (detail::geometry_rect_distance(g, r, tol) <= margin + tol) cover.squares.push_back({i, j});
        }
    std::sort(cover.squares.begin(), cover.squares.end());

    const std::set<GridSquare> in(cover.squares.begin(), cover.squares.end());
    using V = std::pair<std::int64_t, std::int64_t>;
    std::vector<std::pair<V, V>> edges;
    for (const auto& q : cover.squares) {
        const auto i = q.i, j = q.j;
        if (!in.count({i, j - 1})) edges.push_back({{i, j}, {i + 1, j}});
        if (!in.count({i + 1, j})) edges.push_back({{i + 1, j}, {i + 1, j + 1}});
        if (!in.count({i, j + 1})) edges.push_back({{i + 1, j + 1}, {i, j + 1}});
        if (!in.count({i - 1, j})) edges.push_back({{i, j + 1}, {i, j}});
    }
    auto at = [delta](V v) { return cplx(v.first * delta, v.second * delta); };
    for (const auto& [s, e] : edges) cover.edges.push_back({at(s), at(e)});

    // chain edges into loops; at pinch vertices prefer the left turn
    std::multimap<V, std::size_t> outgoing;
    for (std::size_t k = 0; k < edges.size(); ++k) outgoing.emplace(edges[k].first, k);
    std::vector<bool> used(edges.size(), false);
    for (std::size_t k0 = 0; k0 < edges.size(); ++k0) {
        if (used[k0]) continue;
        std::vector<cplx> loop;
        std::size_t k = k0;
        while (true) {
            used[k] = true;
            loop.push_back(at(edges[k].first));
            const V v = edges[k].second;
            if (v == edges[k0].first) break;
            const V dir{edges[k].second.first - edges[k].first.first, edges[k].second.second - edges[k].first.second};
            std::size_t best = edges.size();
            int best_rank = 4;
            auto [lo, hi] = outgoing.equal_range(v);
            for (auto it = lo; it != hi; ++it) {
                if (used[it->second]) continue;
                const auto& e = edges[it->second];
                const V d{e.second.first - e.first.first, e.second.second - e.first.second};
                const auto cross = dir.first * d.second - dir.second * d.first;
                const auto dot = dir.first * d.first + dir.second * d.second;
                const int rank = cross > 0 ? 0 : (dot > 0 ? 1 : 2);
                if (rank < best_rank) best_rank = rank, best = it->second;
            }
            if (best == edges.size()) break;
            k = best;
        }
        cover.loops.push_back(std::move(loop));
    }
    return cover;
}

} // namespace jackson::sets

#endif
