#ifndef JACKSON_SETS_HPP
#define JACKSON_SETS_HPP

#include <jackson/common.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace jackson::sets {

struct Disk {
    cplx center{0.0, 0.0};
    double radius = 1.0;
};

struct Segment {
    cplx a{-1.0, 0.0};
    cplx b{1.0, 0.0};
};

/// The starlike set {r exp(2 pi i j / n) : 0 <= r <= 1, j = 1..n}.
struct Star {
    int n = 2;
};

struct Polygon {
    std::vector<cplx> vertices;
    bool filled = true;
};

/// A finite set of points. Finite sets are the only primitives allowed to
/// have zero diameter.
struct PointSet {
    std::vector<cplx> points;
};

struct CompactSetSpec;

struct Union {
    std::vector<CompactSetSpec> members;
};

enum class OracleKind { none, disk, joukowski, star_pullback, tangent_disks };

/// Affine image z -> scale * z + shift applied on top of the primitive.
struct Affine {
    cplx scale{1.0, 0.0};
    cplx shift{0.0, 0.0};

    cplx apply(cplx z) const { return scale * z + shift; }
    cplx invert(cplx z) const { return (z - shift) / scale; }
    bool identity() const { return scale == cplx(1.0, 0.0) && shift == cplx(0.0, 0.0); }
};

using Shape = std::variant<Disk, Segment, Star, Polygon, PointSet, Union>;

struct CompactSetSpec {
    Shape shape;
    OracleKind oracle = OracleKind::none;
    Affine transform;
    std::string name;
};

// -- construction helpers ---------------------------------------------------

inline CompactSetSpec disk(cplx center = {0.0, 0.0}, double radius = 1.0)
{
    return {Disk{center, radius}, OracleKind::disk, {}, "disk"};
}

inline CompactSetSpec segment(cplx a = {-1.0, 0.0}, cplx b = {1.0, 0.0})
{
    return {Segment{a, b}, OracleKind::joukowski, {}, "segment"};
}

inline CompactSetSpec star(int n)
{
    return {Star{n}, OracleKind::star_pullback, {}, "star" + std::to_string(n)};
}

inline CompactSetSpec polygon(std::vector<cplx> vertices, bool filled = true)
{
    return {Polygon{std::move(vertices), filled}, OracleKind::none, {}, "polygon"};
}

inline CompactSetSpec points(std::vector<cplx> pts)
{
    return {PointSet{std::move(pts)}, OracleKind::none, {}, "points"};
}

inline CompactSetSpec union_of(std::vector<CompactSetSpec> members)
{
    return {Union{std::move(members)}, OracleKind::none, {}, "union"};
}

/// The closed unit disks centred at 1 and -1, touching at the origin.
inline CompactSetSpec tangent_disks()
{
    auto s = union_of({disk({1.0, 0.0}, 1.0), disk({-1.0, 0.0}, 1.0)});
    s.oracle = OracleKind::tangent_disks;
    s.name = "tangent_disks";
    return s;
}

inline CompactSetSpec affine_image(CompactSetSpec s, cplx scale, cplx shift)
{
    // compose: new(z) = scale * old(z) + shift
    s.transform.shift = scale * s.transform.shift + shift;
    s.transform.scale = scale * s.transform.scale;
    return s;
}

inline std::string oracle_name(OracleKind k)
{
    switch (k) {
    case OracleKind::disk: return "disk";
    case OracleKind::joukowski: return "joukowski";
    case OracleKind::star_pullback: return "star_pullback";
    case OracleKind::tangent_disks: return "tangent_disks";
    case OracleKind::none: break;
    }
    return "none";
}

// -- geometry lowering --------------------------------------------------------

/// Convex building block of a set after applying all affine maps.
struct Piece {
    enum class Kind { disk, segment, point } kind;
    cplx a;          // disk centre, segment start, or the point
    cplx b;          // segment end
    double r = 0.0;  // disk radius
};

/// Flat description of E: a union of convex pieces plus filled polygon
/// interiors.
struct Geometry {
    std::vector<Piece> pieces;
    std::vector<std::vector<cplx>> fills;
};

namespace detail {

inline void lower(const CompactSetSpec& s, const Affine& outer, Geometry& g)
{
    const Affine tr{outer.scale * s.transform.scale, outer.scale * s.transform.shift + outer.shift};
    std::visit(
        [&](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disk>) {
                g.pieces.push_back({Piece::Kind::disk, tr.apply(sh.center), {}, std::abs(tr.scale) * sh.radius});
            } else if constexpr (std::is_same_v<T, Segment>) {
                g.pieces.push_back({Piece::Kind::segment, tr.apply(sh.a), tr.apply(sh.b), 0.0});
            } else if constexpr (std::is_same_v<T, Star>) {
                for (int j = 1; j <= sh.n; ++j) {
                    const cplx tip = std::polar(1.0, 2.0 * pi * j / sh.n);
                    g.pieces.push_back({Piece::Kind::segment, tr.apply(0.0), tr.apply(tip), 0.0});
                }
            } else if constexpr (std::is_same_v<T, Polygon>) {
                const auto& v = sh.vertices;
                std::vector<cplx> mapped;
                for (auto z : v) mapped.push_back(tr.apply(z));
                for (std::size_t i = 0; i < mapped.size(); ++i)
                    g.pieces.push_back({Piece::Kind::segment, mapped[i], mapped[(i + 1) % mapped.size()], 0.0});
                if (sh.filled) g.fills.push_back(std::move(mapped));
            } else if constexpr (std::is_same_v<T, PointSet>) {
                for (auto z : sh.points) g.pieces.push_back({Piece::Kind::point, tr.apply(z), {}, 0.0});
            } else {
                for (const auto& m : sh.members) lower(m, tr, g);
            }
        },
        s.shape);
}

inline bool inside_polygon(const std::vector<cplx>& poly, cplx z)
{
    // even-odd crossing test
    bool in = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const cplx a = poly[i], b = poly[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
            if (z.real() < x) in = !in;
        }
    }
    return in;
}

} // namespace detail

/// Checks the structural invariants of a spec; throws rejection with a
/// diagnostic when they fail.
inline void validate(const CompactSetSpec& s)
{
    if (std::abs(s.transform.scale) == 0.0) throw rejection("affine scale must be nonzero");
    std::visit(
        [&](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disk>) {
                if (!(sh.radius > 0.0)) throw rejection("disk: radius must be positive");
            } else if constexpr (std::is_same_v<T, Segment>) {
                if (sh.a == sh.b) throw rejection("segment: endpoints must differ");
            } else if constexpr (std::is_same_v<T, Star>) {
                if (sh.n < 2) throw rejection("star: n must be at least 2");
            } else if constexpr (std::is_same_v<T, Polygon>) {
                if (sh.vertices.size() < 3) throw rejection("polygon: needs at least 3 vertices");
            } else if constexpr (std::is_same_v<T, PointSet>) {
                if (sh.points.empty()) throw rejection("points: empty point set");
            } else {
                if (sh.members.empty()) throw rejection("union: empty union");
                for (const auto& m : sh.members) validate(m);
            }
        },
        s.shape);

    auto is_unit_disk_at = [](const CompactSetSpec& m, double c) {
        const auto* d = std::get_if<Disk>(&m.shape);
        return d && m.transform.identity() && d->radius == 1.0 && d->center == cplx(c, 0.0);
    };
    switch (s.oracle) {
    case OracleKind::none: break;
    case OracleKind::disk:
        if (!std::holds_alternative<Disk>(s.shape)) throw rejection("disk oracle requires a disk");
        break;
    case OracleKind::joukowski:
        if (!std::holds_alternative<Segment>(s.shape)) throw rejection("joukowski oracle requires a segment");
        break;
    case OracleKind::star_pullback:
        if (!std::holds_alternative<Star>(s.shape)) throw rejection("star_pullback oracle requires a star");
        break;
    case OracleKind::tangent_disks: {
        const auto* u = std::get_if<Union>(&s.shape);
        const bool ok = u && u->members.size() == 2 &&
                        ((is_unit_disk_at(u->members[0], 1.0) && is_unit_disk_at(u->members[1], -1.0)) ||
                         (is_unit_disk_at(u->members[0], -1.0) && is_unit_disk_at(u->members[1], 1.0)));
        if (!ok) throw rejection("tangent_disks oracle requires the unit disks centred at 1 and -1");
        break;
    }
    }
}

inline Geometry lower(const CompactSetSpec& s)
{
    validate(s);
    Geometry g;
    detail::lower(s, Affine{}, g);
    return g;
}

inline double piece_distance(const Piece& p, cplx z)
{
    switch (p.kind) {
    case Piece::Kind::disk: return std::max(0.0, std::abs(z - p.a) - p.r);
    case Piece::Kind::segment: return segment_distance(p.a, p.b, z);
    case Piece::Kind::point: return std::abs(z - p.a);
    }
    return inf;
}

inline double distance(const Geometry& g, cplx z)
{
    for (const auto& f : g.fills)
        if (detail::inside_polygon(f, z)) return 0.0;
    double d = inf;
    for (const auto& p : g.pieces) d = std::min(d, piece_distance(p, z));
    return d;
}

/// Euclidean distance from z to E.
inline double distance(const CompactSetSpec& s, cplx z)
{
    return distance(lower(s), z);
}

/// sup over w in E of |z - w|.
inline double farthest(const Geometry& g, cplx z)
{
    double d = 0.0;
    for (const auto& p : g.pieces) {
        switch (p.kind) {
        case Piece::Kind::disk: d = std::max(d, std::abs(z - p.a) + p.r); break;
        case Piece::Kind::segment: d = std::max({d, std::abs(z - p.a), std::abs(z - p.b)}); break;
        case Piece::Kind::point: d = std::max(d, std::abs(z - p.a)); break;
        }
    }
    return d;
}

inline double diameter(const Geometry& g)
{
    double d = 0.0;
    for (const auto& p : g.pieces) {
        switch (p.kind) {
        case Piece::Kind::disk: d = std::max(d, farthest(g, p.a) + p.r); break;
        case Piece::Kind::segment: d = std::max({d, farthest(g, p.a), farthest(g, p.b)}); break;
        case Piece::Kind::point: d = std::max(d, farthest(g, p.a)); break;
        }
    }
    return d;
}

inline double diameter(const CompactSetSpec& s) { return diameter(lower(s)); }

struct Box {
    double xmin, xmax, ymin, ymax;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

inline Box bounding_box(const Geometry& g)
{
    Box b{inf, -inf, inf, -inf};
    auto add = [&](cplx z, double r) {
        b.xmin = std::min(b.xmin, z.real() - r);
        b.xmax = std::max(b.xmax, z.real() + r);
        b.ymin = std::min(b.ymin, z.imag() - r);
        b.ymax = std::max(b.ymax, z.imag() + r);
    };
    for (const auto& p : g.pieces) {
        add(p.a, p.kind == Piece::Kind::disk ? p.r : 0.0);
        if (p.kind == Piece::Kind::segment) add(p.b, 0.0);
    }
    return b;
}

/// Smallest positive piece size; 0 for sets made of points only.
inline double feature_size(const Geometry& g)
{
    double f = inf;
    for (const auto& p : g.pieces) {
        if (p.kind == Piece::Kind::disk) f = std::min(f, 2.0 * p.r);
        if (p.kind == Piece::Kind::segment) f = std::min(f, std::abs(p.b - p.a));
    }
    return std::isfinite(f) ? f : 0.0;
}

inline bool is_finite_point_set(const Geometry& g)
{
    return std::all_of(g.pieces.begin(), g.pieces.end(), [](const Piece& p) { return p.kind == Piece::Kind::point; });
}

/// Grid test for polynomial convexity: every cell of the complement that is
/// farther than one pitch from E must connect to the outside of the window.
inline bool is_polynomially_convex(const CompactSetSpec& s, double pitch = 0.0)
{
    const Geometry g = lower(s);
    const Box b = bounding_box(g);
    const double size = std::max({b.width(), b.height(), 1e-3});
    if (pitch <= 0.0) pitch = size / 200.0;
    const double x0 = b.xmin - 2 * pitch, y0 = b.ymin - 2 * pitch;
    const int nx = static_cast<int>(std::ceil((b.width() + 4 * pitch) / pitch)) + 1;
    const int ny = static_cast<int>(std::ceil((b.height() + 4 * pitch) / pitch)) + 1;
    std::vector<std::uint8_t> free(static_cast<std::size_t>(nx) * ny), seen(free.size(), 0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            free[static_cast<std::size_t>(j) * nx + i] = distance(g, {x0 + i * pitch, y0 + j * pitch}) > pitch;
    std::deque<std::pair<int, int>> queue;
    auto push = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= nx || j >= ny) return;
        const auto k = static_cast<std::size_t>(j) * nx + i;
        if (!free[k] || seen[k]) return;
        seen[k] = 1;
        queue.emplace_back(i, j);
    };
    for (int i = 0; i < nx; ++i) push(i, 0), push(i, ny - 1);
    for (int j = 0; j < ny; ++j) push(0, j), push(nx - 1, j);
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        push(i + 1, j), push(i - 1, j), push(i, j + 1), push(i, j - 1);
    }
    for (std::size_t k = 0; k < free.size(); ++k)
        if (free[k] && !seen[k]) return false;
    return true;
}

/// Canonical text form used for hashing and diagnostics.
inline std::string canonical(const CompactSetSpec& s)
{
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disk>) os << "disk(" << sh.center << "," << sh.radius << ")";
            else if constexpr (std::is_same_v<T, Segment>) os << "segment(" << sh.a << "," << sh.b << ")";
            else if constexpr (std::is_same_v<T, Star>) os << "star(" << sh.n << ")";
            else if constexpr (std::is_same_v<T, Polygon>) {
                os << "polygon(" << (sh.filled ? "filled" : "open");
                for (auto z : sh.vertices) os << "," << z;
                os << ")";
            } else if constexpr (std::is_same_v<T, PointSet>) {
                os << "points(";
                for (auto z : sh.points) os << z << ",";
                os << ")";
            } else {
                os << "union(";
                for (const auto& m : sh.members) os << canonical(m) << ";";
                os << ")";
            }
        },
        s.shape);
    if (!s.transform.identity()) os << "@" << s.transform.scale << "+" << s.transform.shift;
    os << "#" << oracle_name(s.oracle);
    return os.str();
}

} // namespace jackson::sets

#endif
