#ifndef JACKSON_MESH_HPP
#define JACKSON_MESH_HPP

#include <jackson/sets.hpp>

#include <functional>
#include <memory>
#include <unordered_map>

namespace jackson::sets {

struct MeshRole {
    enum class Kind { interior_fill, boundary, shell, neighborhood } kind = Kind::boundary;
    double param = 0.0; // t for shells, delta for neighborhoods

    static MeshRole boundary() { return {Kind::boundary, 0.0}; }
    static MeshRole interior_fill() { return {Kind::interior_fill, 0.0}; }
    static MeshRole shell(double t) { return {Kind::shell, t}; }
    static MeshRole neighborhood(double delta) { return {Kind::neighborhood, delta}; }

    std::string name() const
    {
        switch (kind) {
        case Kind::interior_fill: return "interior";
        case Kind::boundary: return "boundary";
        case Kind::shell: return "shell";
        case Kind::neighborhood: return "neighborhood";
        }
        return "?";
    }
};

/// Finite sample of E, of its boundary, of a shell dE_t or of E_delta.
struct Mesh {
    std::vector<cplx> points;
    MeshRole role;
    double resolution = 0.0;
    std::shared_ptr<const CompactSetSpec> parent;
    bool coarse = false; // resolution exceeds the smallest feature of E

    std::size_t size() const { return points.size(); }
};

namespace detail {

/// Drops points within `tol` of an earlier point, keeping first occurrences.
inline std::vector<cplx> dedupe(const std::vector<cplx>& pts, double tol)
{
    if (tol <= 0.0) return pts;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
    auto key = [](std::int64_t i, std::int64_t j) { return i * 73856093LL ^ j * 19349663LL; };
    std::vector<cplx> out;
    out.reserve(pts.size());
    for (auto z : pts) {
        const auto i = static_cast<std::int64_t>(std::floor(z.real() / tol));
        const auto j = static_cast<std::int64_t>(std::floor(z.imag() / tol));
        bool dup = false;
        for (std::int64_t di = -1; di <= 1 && !dup; ++di)
            for (std::int64_t dj = -1; dj <= 1 && !dup; ++dj) {
                auto it = grid.find(key(i + di, j + dj));
                if (it == grid.end()) continue;
                for (auto k : it->second)
                    if (std::abs(out[k] - z) < tol) { dup = true; break; }
            }
        if (dup) continue;
        grid[key(i, j)].push_back(out.size());
        out.push_back(z);
    }
    return out;
}

inline int count_for(double length, double resolution)
{
    return std::max(1, static_cast<int>(std::ceil(length / resolution - 1e-9)));
}

/// Samples of the piece itself (its boundary for disks). Segments are
/// cosine-graded towards the endpoints; the middle gap equals at most
/// `resolution`.
inline void sample_piece(const Piece& p, double resolution, std::vector<cplx>& out)
{
    switch (p.kind) {
    case Piece::Kind::disk: {
        const int n = std::max(8, count_for(2 * pi * p.r, resolution));
        for (int k = 0; k < n; ++k) out.push_back(p.a + std::polar(p.r, 2 * pi * k / n));
        break;
    }
    case Piece::Kind::segment: {
        const double len = std::abs(p.b - p.a);
        const int n = std::max(2, count_for(pi * len / 2.0, resolution));
        for (int k = 0; k <= n; ++k) out.push_back(p.a + (p.b - p.a) * (0.5 - 0.5 * std::cos(pi * k / n)));
        break;
    }
    case Piece::Kind::point: out.push_back(p.a); break;
    }
}

/// Closed curve {z : dist(z, piece) = t} parametrised by s in [0, 1).
inline std::function<cplx(double)> offset_curve(const Piece& p, double t, double& length)
{
    if (p.kind == Piece::Kind::disk || p.kind == Piece::Kind::point ||
        (p.kind == Piece::Kind::segment && p.a == p.b)) {
        const double r = (p.kind == Piece::Kind::disk ? p.r : 0.0) + t;
        const cplx c = p.a;
        length = 2 * pi * r;
        return [c, r](double s) { return c + std::polar(r, 2 * pi * s); };
    }
    // stadium: side a->b shifted by +normal, cap at b, side b->a, cap at a
    const cplx a = p.a, b = p.b;
    const double len = std::abs(b - a);
    const cplx u = (b - a) / len;
    const cplx nrm = u * cplx(0.0, -1.0); // right-hand normal
    const double cap = pi * t;
    length = 2 * len + 2 * cap;
    const double total = length;
    return [=](double s) {
        double arc = s * total;
        if (arc < len) return a + u * arc + nrm * t;
        arc -= len;
        if (arc < cap) return b + nrm * std::polar(t, arc / t);
        arc -= cap;
        if (arc < len) return b - u * arc - nrm * t;
        arc -= len;
        return a - nrm * std::polar(t, arc / t);
    };
}

inline void sample_shell(const Geometry& g, double t, double resolution, std::vector<cplx>& out)
{
    const double tol = 1e-12 * std::max(1.0, t);
    for (const auto& p : g.pieces) {
        double length = 0.0;
        auto curve = offset_curve(p, t, length);
        const int n = std::max(16, count_for(length, resolution));
        auto keep = [&](double s) { return distance(g, curve(s)) >= t - tol; };
        bool prev = keep(0.0);
        for (int k = 0; k < n; ++k) {
            const double s0 = static_cast<double>(k) / n, s1 = static_cast<double>(k + 1) / n;
            const bool next = keep(s1 >= 1.0 ? 0.0 : s1);
            if (prev) out.push_back(curve(s0));
            if (prev != next) {
                // locate the end of the kept arc so corners of dE_t are sampled
                double lo = s0, hi = s1;
                for (int it = 0; it < 50; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (keep(mid) == prev ? lo : hi) = mid;
                }
                out.push_back(curve(prev ? lo : hi));
            }
            prev = next;
        }
    }
}

} // namespace detail

/// Deterministic mesh of E for the requested role.
///
/// boundary:      samples of each piece (circle for disks, graded segments)
/// interior_fill: boundary plus grid points of pitch `resolution` inside E
/// shell(t):      points with dist(z, E) = t, from the offset curves of the
///                pieces, keeping those not closer to another piece
/// neighborhood:  shell(delta) together with the boundary mesh; enough for
///                sup norms of functions holomorphic on E_delta
inline Mesh build_mesh(const CompactSetSpec& spec, MeshRole role, double resolution)
{
    if (!(resolution > 0.0)) throw rejection("build_mesh: resolution must be positive");
    if ((role.kind == MeshRole::Kind::shell || role.kind == MeshRole::Kind::neighborhood) && !(role.param > 0.0))
        throw rejection("build_mesh: shell/neighborhood parameter must be positive");
    const Geometry g = lower(spec);
    Mesh m;
    m.role = role;
    m.resolution = resolution;
    m.parent = std::make_shared<const CompactSetSpec>(spec);
    const double feature = feature_size(g);
    m.coarse = feature > 0.0 && resolution > feature;

    std::vector<cplx> pts;
    auto boundary = [&] {
        for (const auto& p : g.pieces) detail::sample_piece(p, resolution, pts);
    };
    switch (role.kind) {
    case MeshRole::Kind::boundary: boundary(); break;
    case MeshRole::Kind::interior_fill: {
        boundary();
        const Box b = bounding_box(g);
        const int nx = static_cast<int>(std::floor(b.width() / resolution));
        const int ny = static_cast<int>(std::floor(b.height() / resolution));
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i) {
                const cplx z{b.xmin + i * resolution, b.ymin + j * resolution};
                if (distance(g, z) == 0.0) pts.push_back(z);
            }
        break;
    }
    case MeshRole::Kind::shell: detail::sample_shell(g, role.param, resolution, pts); break;
    case MeshRole::Kind::neighborhood:
        detail::sample_shell(g, role.param, resolution, pts);
        boundary();
        break;
    }
    m.points = detail::dedupe(pts, resolution * 1e-6);
    if (m.points.empty()) throw rejection("build_mesh: produced no points");
    return m;
}

/// Wraps an arbitrary point list as a mesh (used for node subsets and tests).
inline Mesh mesh_from_points(std::vector<cplx> pts, double resolution, MeshRole role = MeshRole::boundary())
{
    Mesh m;
    m.points = std::move(pts);
    m.role = role;
    m.resolution = resolution;
    return m;
}

} // namespace jackson::sets

#endif
