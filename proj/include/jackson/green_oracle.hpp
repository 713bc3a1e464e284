#ifndef JACKSON_GREEN_ORACLE_HPP
#define JACKSON_GREEN_ORACLE_HPP

#include <jackson/sets.hpp>

namespace jackson::sets {

namespace oracle {

/// Green's function of the complement of the segment [a,b], pole at
/// infinity. The branch of sqrt(w^2 - 1) is chosen so |w + sqrt| >= 1.
inline double segment(cplx a, cplx b, cplx z)
{
    const cplx w = (2.0 * z - a - b) / (b - a);
    const cplx s = std::sqrt(w - 1.0) * std::sqrt(w + 1.0);
    cplx u = w + s;
    if (std::abs(u) < 1.0) u = w - s;
    return std::max(0.0, std::log(std::abs(u)));
}

inline double disk(cplx c, double r, cplx z)
{
    return std::max(0.0, std::log(std::abs(z - c) / r));
}

/// g(z) = g_[0,1](z^n) / n: E(n) is the preimage of [0,1] under z^n.
inline double star(int n, cplx z)
{
    return segment(0.0, 1.0, std::pow(z, n)) / n;
}

/// Two closed unit disks tangent at 0. 1/z maps the complement onto the
/// strip |Re w| < 1/2, and tan(pi w / 2) maps the strip onto the unit disk,
/// so g = -log|tan(pi / (2z))|. Written via
///   |tan(x+iy)|^2 = (cosh 2y - cos 2x) / (cosh 2y + cos 2x)
/// so that exponentially small values near the tangency stay accurate.
inline double tangent_disks(cplx z)
{
    if (std::abs(z - 1.0) <= 1.0 || std::abs(z + 1.0) <= 1.0) return 0.0;
    const cplx u = pi / (2.0 * z);
    const double x2 = 2.0 * u.real();
    const double y2 = 2.0 * std::abs(u.imag());
    const double c = std::cos(x2);
    // cosh(y2) - c = e^{y2}/2 * (1 + e^{-2 y2} - 2 c e^{-y2})
    const double e = std::exp(-y2);
    const double ratio = 4.0 * c * e / (1.0 + e * e - 2.0 * c * e);
    return std::max(0.0, 0.5 * std::log1p(ratio));
}

} // namespace oracle

inline bool has_oracle(const CompactSetSpec& s) { return s.oracle != OracleKind::none; }

/// Closed-form Green's function g_E(z) with logarithmic pole at infinity,
/// extended by 0 on the polynomial hull.
inline double green_oracle(const CompactSetSpec& s, cplx z)
{
    validate(s);
    const cplx w = s.transform.invert(z);
    switch (s.oracle) {
    case OracleKind::disk: {
        const auto& d = std::get<Disk>(s.shape);
        return oracle::disk(d.center, d.radius, w);
    }
    case OracleKind::joukowski: {
        const auto& seg = std::get<Segment>(s.shape);
        return oracle::segment(seg.a, seg.b, w);
    }
    case OracleKind::star_pullback: return oracle::star(std::get<Star>(s.shape).n, w);
    case OracleKind::tangent_disks: return oracle::tangent_disks(w);
    case OracleKind::none: break;
    }
    throw rejection("set '" + s.name + "' has no closed-form Green oracle; use the nodal estimator");
}

} // namespace jackson::sets

#endif
