#ifndef JACKSON_APPROX_HPP
#define JACKSON_APPROX_HPP

#include <jackson/extremal.hpp>
#include <jackson/square_cover.hpp>

#include <sstream>

namespace jackson::approx {

using extremal::NodeSequence;
using sets::CompactSetSpec;
using sets::Mesh;

// -- test functions -------------------------------------------------------------

struct TestFunction {
    std::string name;
    std::function<cplx(cplx)> eval;
    bool holomorphic = true;
    std::optional<cplx> pole;

    cplx operator()(cplx z) const { return eval(z); }

    std::vector<cplx> sample(std::span<const cplx> pts) const
    {
        std::vector<cplx> out;
        out.reserve(pts.size());
        for (auto z : pts) out.push_back(eval(z));
        return out;
    }
};

/// f_zeta(z) = 1 / (zeta - z)
inline TestFunction cauchy(cplx zeta)
{
    std::ostringstream os;
    os << "cauchy(" << zeta.real() << "," << zeta.imag() << ")";
    return {os.str(), [zeta](cplx z) { return 1.0 / (zeta - z); }, true, zeta};
}

/// sum c_k z^k
inline TestFunction poly(std::vector<cplx> coeffs)
{
    return {"poly(" + std::to_string(coeffs.size()) + " coeffs)",
            [coeffs](cplx z) {
                cplx p = 0.0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * z + *it;
                return p;
            },
            true, std::nullopt};
}

inline TestFunction abs_fn()
{
    return {"abs", [](cplx z) { return cplx(std::abs(z), 0.0); }, false, std::nullopt};
}

inline TestFunction conj_fn()
{
    return {"conj", [](cplx z) { return std::conj(z); }, false, std::nullopt};
}

inline TestFunction constant_fn(cplx c)
{
    return {"constant", [c](cplx) { return c; }, true, std::nullopt};
}

// -- best approximation -----------------------------------------------------------

enum class Method { lawson, truncation, interpolation, runge, glue };

inline std::string method_name(Method m)
{
    switch (m) {
    case Method::lawson: return "lawson";
    case Method::truncation: return "truncation";
    case Method::interpolation: return "interpolation";
    case Method::runge: return "runge";
    case Method::glue: return "glue";
    }
    return "?";
}

struct ApproxResult {
    ComplexPoly approximant;
    double error = 0.0;       // sup over the mesh of |f - p|
    double lower = 0.0;       // certified lower bound on the mesh distance (lawson only)
    Method method = Method::lawson;
    int iterations = 0;
    bool stalled = false;
    std::vector<double> history;
};

inline double sup_error(const ComplexPoly& p, std::span<const cplx> pts, std::span<const cplx> f)
{
    double e = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) e = std::max(e, std::abs(f[i] - p(pts[i])));
    return e;
}

inline void check_samples(std::span<const cplx> f, std::size_t expected)
{
    if (f.size() != expected) throw rejection("sample count does not match the mesh");
    for (auto v : f)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw rejection("non-finite function sample");
}

/// Minimax polynomial of degree n on the mesh, in the Newton basis `basis`.
inline ApproxResult best_approx(const Mesh& mesh, std::span<const cplx> f, int n,
                                std::shared_ptr<const NewtonBasis> basis, MinimaxOptions opt = {})
{
    check_samples(f, mesh.size());
    if (n < 0) throw rejection("best_approx: negative degree");
    if (mesh.size() < 8 * static_cast<std::size_t>(std::max(n, 1)))
        throw rejection("best_approx: mesh needs at least 8n points");
    if (static_cast<std::size_t>(n) > basis->max_degree()) throw rejection("best_approx: basis too short");
    const Eigen::MatrixXcd v = basis->matrix(mesh.points, static_cast<std::size_t>(n));
    Eigen::VectorXcd b(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) b(static_cast<Eigen::Index>(i)) = f[i];
    const LawsonResult r = minimax(v, b, opt);
    ApproxResult out;
    std::vector<cplx> c(r.coefficients.data(), r.coefficients.data() + r.coefficients.size());
    out.approximant = ComplexPoly(basis, std::move(c));
    out.error = sup_error(out.approximant, mesh.points, f);
    out.lower = std::min(r.lower, out.error);
    out.iterations = r.iterations;
    out.stalled = r.stalled;
    out.history = r.history;
    return out;
}

inline ApproxResult best_approx(const Mesh& mesh, std::span<const cplx> f, int n, const NodeSequence& nodes)
{
    return best_approx(mesh, f, n, extremal::make_basis(nodes));
}

/// best_approx for n = 0..n_max; a degree-n result never reports a larger
/// error than degree n-1 (the lower-degree polynomial is kept when it wins).
inline std::vector<ApproxResult> best_approx_sequence(const Mesh& mesh, std::span<const cplx> f, int n_max,
                                                      std::shared_ptr<const NewtonBasis> basis)
{
    std::vector<ApproxResult> out;
    for (int n = 0; n <= n_max; ++n) {
        ApproxResult r = best_approx(mesh, f, n, basis);
        if (!out.empty() && r.error > out.back().error) {
            const double lower = std::max(r.lower, 0.0);
            r = out.back();
            r.lower = std::min(r.error, std::max(r.lower, lower));
        }
        out.push_back(std::move(r));
    }
    return out;
}

// -- Jackson norm -----------------------------------------------------------------

struct JacksonNormValue {
    double ell = 0.0;
    double value = 0.0;
    double sup_term = 0.0;
    int n_max = 0;
    int attained_at = 0;
    bool tail_flag = false;
};

/// ||f|| + max_{1<=n<=N} n^l dist(f, P_n) from precomputed distances
/// (dists[n] for n = 0..N).
inline JacksonNormValue jackson_norm_from(double fnorm, std::span<const double> dists, double ell)
{
    if (dists.size() < 5) throw rejection("jackson_norm: N_max must be at least 4");
    JacksonNormValue out;
    out.ell = ell;
    out.n_max = static_cast<int>(dists.size()) - 1;
    out.attained_at = 1;
    for (int n = 1; n <= out.n_max; ++n) {
        const double term = std::pow(static_cast<double>(n), ell) * dists[static_cast<std::size_t>(n)];
        if (term > out.sup_term) out.sup_term = term, out.attained_at = n;
    }
    // distances at rounding level count as zero
    if (out.sup_term <= 1e-12 * std::max(fnorm, 1e-300)) out.sup_term = 0.0, out.attained_at = 1;
    out.value = fnorm + out.sup_term;
    out.tail_flag = out.sup_term > 0.0 && out.attained_at == out.n_max;
    return out;
}

inline JacksonNormValue jackson_norm(const Mesh& mesh, std::span<const cplx> f, double ell, int n_max,
                                     const NodeSequence& nodes)
{
    if (n_max < 4) throw rejection("jackson_norm: N_max must be at least 4");
    check_samples(f, mesh.size());
    const auto seq = best_approx_sequence(mesh, f, n_max, extremal::make_basis(nodes));
    std::vector<double> d;
    for (const auto& r : seq) d.push_back(r.error);
    double fn = 0.0;
    for (auto v : f) fn = std::max(fn, std::abs(v));
    return jackson_norm_from(fn, d, ell);
}

// -- simple-fraction bracket --------------------------------------------------------

struct CauchyBracket {
    cplx zeta;
    int n = 0;
    double lower = 0.0;          // 1 / ((dist + diam) Phi_{n+1}(zeta))
    double upper = 0.0;          // 1 / (dist Phi_{n+1}(zeta))
    double measured = 0.0;       // attained mesh error of the minimax polynomial
    double measured_lower = 0.0; // certified lower bound on the mesh distance
    double phi = 0.0;            // Phi_{n+1}(zeta), witness value
    double phi_upper = 0.0;      // upper bound on Phi_{n+1}(zeta)

    /// lower <= dist <= upper (1 + tol), checked with the certified ends:
    /// the distance bracket from the minimax solve and the Phi bracket.
    bool holds(double tol = 1e-6) const { return lower <= measured_lower && measured <= upper * (1.0 + tol); }
};

/// Distances, diameter and Phi are those of the mesh, which is itself a
/// compact set; the strict ends of every bracket are used.
inline CauchyBracket cauchy_kernel_bracket(const extremal::ExtremalSolver& solver, cplx zeta, int n)
{
    const Mesh& mesh = solver.mesh();
    double dist = inf;
    for (auto z : mesh.points) dist = std::min(dist, std::abs(z - zeta));
    if (!(dist > 0.0)) throw rejection("cauchy_kernel_bracket: zeta lies on E");
    double diam = 0.0;
    const auto& p = mesh.points;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) diam = std::max(diam, std::abs(p[i] - p[j]));

    CauchyBracket out;
    out.zeta = zeta;
    out.n = n;
    const auto phi = solver.phi(n + 1, zeta);
    out.phi = phi.value;
    out.phi_upper = phi.upper;
    out.lower = 1.0 / ((dist + diam) * phi.value);
    out.upper = 1.0 / (dist * phi.upper);
    const auto f = cauchy(zeta).sample(mesh.points);
    const auto r = best_approx(mesh, f, n, solver.basis());
    out.measured = r.error;
    out.measured_lower = r.lower;
    return out;
}

/// The polynomial (q(zeta) - q(z)) / ((zeta - z) q(zeta)) of degree deg q - 1,
/// evaluated at z (z = zeta handled by the derivative limit through the basis).
inline cplx cauchy_conversion(const ComplexPoly& q, cplx zeta, cplx qzeta, cplx z)
{
    return (qzeta - q(z)) / ((zeta - z) * qzeta);
}

// -- Lagrange interpolation ---------------------------------------------------------

inline ComplexPoly interpolant(const NodeSequence& nodes, std::span<const cplx> values)
{
    return newton_interpolate(extremal::make_basis(nodes), values);
}

/// Value at z of the interpolant of the samples f(z_j) at the nodes.
inline cplx lagrange_interp(const NodeSequence& nodes, std::span<const cplx> f, cplx z)
{
    if (f.size() != nodes.nodes.size()) throw rejection("lagrange_interp: one sample per node required");
    return interpolant(nodes, f)(z);
}

/// L_n f_eta(z) = (omega(eta) - omega(z)) / (omega(eta) (eta - z)), with
/// omega(z)/omega(eta) formed as a product of ratios.
inline cplx lagrange_cauchy(const NodeSequence& nodes, cplx eta, cplx z)
{
    if (z == eta) throw rejection("lagrange_cauchy: z equals the pole");
    cplx ratio = 1.0;
    for (auto w : nodes.nodes) {
        if (w == eta) throw rejection("lagrange_cauchy: pole on a node");
        ratio *= (z - w) / (eta - w);
    }
    return (1.0 - ratio) / (eta - z);
}

// -- interpolation bound with the explicit constant ----------------------------------

struct Lemma33Result {
    double bound = 0.0;
    double measured = 0.0;
    double slack = 0.0;     // bound / measured
    double constant = 0.0;  // c = 2d + diam E
    double d = 0.0;         // max distance from E over C(E, ||Phi_E||_{E_1})
    double level_distance = 0.0; // dist(C(E, rho), E)
    double phi_zeta = 0.0;  // Phi_E(zeta)
    double phi_e1 = 0.0;    // ||Phi_E|| over the unit shell
};

/// Error bound for interpolating f_zeta at the nodes, with rho in
/// (1, Phi_E(zeta)]; level sets come from the Green function g.
inline Lemma33Result lemma33_bound(const CompactSetSpec& spec, const NodeSequence& nodes, cplx zeta, double rho,
                                   const extremal::GreenFn& g, double resolution = 0.01)
{
    const auto geo = sets::lower(spec);
    const double dz = sets::distance(geo, zeta);
    if (!(dz > 0.0)) throw rejection("lemma33_bound: zeta lies on E");
    Lemma33Result out;
    out.phi_zeta = std::exp(g(zeta));
    if (!(rho > 1.0) || rho > out.phi_zeta * (1 + 1e-12))
        throw rejection("lemma33_bound: rho must lie in (1, Phi_E(zeta)]");

    const Mesh unit_shell = sets::build_mesh(spec, sets::MeshRole::shell(1.0), resolution);
    double gmax = 0.0;
    for (auto z : unit_shell.points) gmax = std::max(gmax, g(z));
    out.phi_e1 = std::exp(gmax);
    const double pad = sets::diameter(geo) + 2.0 + std::max(0.0, out.phi_e1);
    const auto window = extremal::padded_box(spec, pad);
    out.d = extremal::level_set(spec, g, out.phi_e1, resolution, window).max_distance;
    out.level_distance = extremal::level_set(spec, g, rho, resolution, window).min_distance;
    out.constant = 2.0 * out.d + sets::diameter(geo);
    const double np1 = static_cast<double>(nodes.nodes.size());
    out.bound = np1 * out.constant / (out.level_distance * dz) * std::pow(rho / out.phi_zeta, np1);

    const Mesh& mesh = *nodes.source_mesh;
    for (auto z : mesh.points) out.measured = std::max(out.measured, std::abs(1.0 / (zeta - z) - lagrange_cauchy(nodes, zeta, z)));
    out.slack = out.measured > 0.0 ? out.bound / out.measured : inf;
    return out;
}

// -- contour approximant ----------------------------------------------------------

struct ContourPiece {
    cplx start, end, zeta, coeff;
};

struct ContourPartition {
    double delta = 0.0, b = 0.5;
    double h = 0.0;           // square side (1-b) delta / 4
    double delta_tilde = 0.0; // piece length
    int pieces_per_edge = 1;
    double length = 0.0;
    std::vector<ContourPiece> pieces;
};

struct RungeResult {
    ContourPartition contour;
    ApproxResult approx;
    double certified_bound = 0.0;
    double constant = 0.0;      // (28/pi)(2 + diam E)^2
    double f_norm = 0.0;        // ||f|| over the delta-neighbourhood mesh
    double phi = 0.0;           // phi_{n+1}(b delta)
    double rational_error = 0.0; // ||f - R|| over the mesh of E
    std::size_t witnesses = 0;
};

struct RungeOptions {
    double b = 0.5;
    double resolution = 0.02;       // shell and neighbourhood meshes
    std::size_t witness_budget = 400; // at most this many distinct phi_{n+1} witnesses
};

/// Contour integral approximant: R(z) = sum c_j / (zeta_j - z) over the
/// pieces of the boundary of K(E_{b delta}, (1-b) delta / 4), each simple
/// fraction replaced by a polynomial built from an extremal witness.
inline RungeResult runge_approximant(const CompactSetSpec& spec, const TestFunction& f, double delta, int n,
                                     const extremal::ExtremalSolver& solver, RungeOptions opt = {})
{
    if (!(delta > 0.0 && delta <= 1.0)) throw rejection("runge_approximant: delta must lie in (0, 1]");
    if (!(opt.b >= 0.5 && opt.b < 1.0)) throw rejection("runge_approximant: b must lie in [1/2, 1)");
    if (n < 0) throw rejection("runge_approximant: negative degree");
    const Mesh& emesh = solver.mesh();
    const auto geo = sets::lower(spec);
    RungeResult out;
    out.constant = 28.0 / pi * sqr(2.0 + sets::diameter(geo));
    const auto fe = f.sample(emesh.points);
    check_samples(fe, emesh.size());

    if (sets::is_finite_point_set(geo)) {
        std::vector<cplx> pts;
        for (const auto& pc : geo.pieces) pts.push_back(pc.a);
        if (pts.size() <= static_cast<std::size_t>(n) + 1) {
            // phi_{n+1} is infinite: interpolate at the points
            auto basis = std::make_shared<NewtonBasis>();
            basis->nodes = pts;
            std::vector<cplx> vals;
            for (auto z : pts) vals.push_back(f(z));
            out.approx.approximant = newton_interpolate(basis, vals);
            out.approx.method = Method::interpolation;
            out.approx.error = sup_error(out.approx.approximant, emesh.points, fe);
            out.phi = inf;
            return out;
        }
    }

    const double bd = opt.b * delta;
    const Mesh shell = sets::build_mesh(spec, sets::MeshRole::shell(bd), opt.resolution);
    const auto phi = solver.shell_inf(n + 1, shell);
    out.phi = phi.value;

    const Mesh nbhd = sets::build_mesh(spec, sets::MeshRole::neighborhood(delta), opt.resolution);
    for (auto z : nbhd.points) out.f_norm = std::max(out.f_norm, std::abs(f(z)));

    ContourPartition& cp = out.contour;
    cp.delta = delta;
    cp.b = opt.b;
    cp.h = (1.0 - opt.b) * delta / 4.0;
    cp.pieces_per_edge = static_cast<int>(std::ceil(out.phi - 1e-12));
    cp.delta_tilde = cp.h / cp.pieces_per_edge;
    const auto cover = sets::square_cover(spec, cp.h, bd);
    cp.length = cover.boundary_length();
    for (const auto& e : cover.edges)
        for (int k = 0; k < cp.pieces_per_edge; ++k) {
            const cplx s = e.start + (e.end - e.start) * (static_cast<double>(k) / cp.pieces_per_edge);
            const cplx t = e.start + (e.end - e.start) * (static_cast<double>(k + 1) / cp.pieces_per_edge);
            const cplx zeta = 0.5 * (s + t);
            cp.pieces.push_back({s, t, zeta, f(zeta) * (t - s) / (2.0 * pi * cplx(0, 1))});
        }

    // witnesses: one per edge, or one per piece when the budget allows
    const std::size_t per = cp.pieces.size() <= opt.witness_budget ? 1 : static_cast<std::size_t>(cp.pieces_per_edge);
    const auto& basis = solver.basis();
    const auto& nodes = basis->nodes;
    std::vector<cplx> pvals(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t g0 = 0; g0 < cp.pieces.size(); g0 += per) {
        const std::size_t g1 = std::min(cp.pieces.size(), g0 + per);
        const cplx centre = 0.5 * (cp.pieces[g0].start + cp.pieces[g1 - 1].end);
        const ComplexPoly q = solver.phi(n + 1, centre).witness;
        ++out.witnesses;
        for (std::size_t j = g0; j < g1; ++j) {
            const auto& pc = cp.pieces[j];
            const cplx qz = q(pc.zeta);
            for (int k = 0; k <= n; ++k)
                pvals[static_cast<std::size_t>(k)] += pc.coeff * cauchy_conversion(q, pc.zeta, qz, nodes[static_cast<std::size_t>(k)]);
        }
    }
    out.approx.approximant = newton_interpolate(basis, pvals);
    out.approx.method = Method::runge;
    out.approx.error = sup_error(out.approx.approximant, emesh.points, fe);
    for (std::size_t i = 0; i < emesh.size(); ++i) {
        cplx rz = 0.0;
        for (const auto& pc : cp.pieces) rz += pc.coeff / (pc.zeta - emesh.points[i]);
        out.rational_error = std::max(out.rational_error, std::abs(fe[i] - rz));
    }
    out.certified_bound = out.constant * out.f_norm / ((1.0 - opt.b) * delta * delta * out.phi);
    return out;
}

// -- gluing over a union of two disjoint sets ----------------------------------------

struct GlueOptions {
    double resolution = 2 * pi / 256;
    int n_max = 40;        // degrees for the decay fit and the Jackson norm
    int fit_from = 5;
    int q_degree_max = 60; // largest degree k n used for q_{kn}
    double ell = 1.0;
    double margin = 1.1;   // rho^k / x must exceed this
    int green_degree = 200;
};

struct GlueResult {
    std::vector<double> chi_dist; // dist over the union of chi_B from P_n, n = 0..n_max
    double rho_hat = 0.0;
    double r_squared = 0.0;
    double x = 0.0;               // ||Phi_A|| over B
    int k = 0;
    std::vector<int> degrees;     // n with k n <= q_degree_max
    std::vector<ComplexPoly> r;   // r_n = p_n (1 - q_{kn})
    std::vector<double> errors;   // ||f - r_n|| over the union mesh
    std::vector<double> p_errors; // ||f - p_n|| over A
    std::vector<double> q_errors; // dist of chi_B at degree k n
    std::vector<double> r_on_b;   // ||r_n|| over B
    std::vector<double> p_on_b;   // ||p_n|| over B
    double jackson_union = 0.0, jackson_a = 0.0, norm_ratio = 0.0;
};

struct LineFit {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    const auto m = static_cast<double>(x.size());
    if (x.size() < 2) throw rejection("fit_line: need two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i], syy += y[i] * y[i];
    }
    LineFit out;
    const double vx = sxx - sx * sx / m, vy = syy - sy * sy / m, cxy = sxy - sx * sy / m;
    out.slope = cxy / vx;
    out.intercept = (sy - out.slope * sx) / m;
    out.r_squared = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
    return out;
}

/// r_n = p_n (1 - q_{kn}) for f given on A and zero on B.
inline GlueResult glue_union_approx(const CompactSetSpec& a, const CompactSetSpec& b, const TestFunction& f,
                                    GlueOptions opt = {})
{
    const auto ga = sets::lower(a), gb = sets::lower(b);
    const Mesh ma = sets::build_mesh(a, sets::MeshRole::boundary(), opt.resolution);
    const Mesh mb = sets::build_mesh(b, sets::MeshRole::boundary(), opt.resolution);
    double gap = inf;
    for (auto z : mb.points) gap = std::min(gap, sets::distance(ga, z));
    if (!(gap > 0.0)) throw rejection("glue_union_approx: A and B must be disjoint");
    if (!sets::is_polynomially_convex(a) || !sets::is_polynomially_convex(b))
        throw rejection("glue_union_approx: A and B must be polynomially convex");

    std::vector<cplx> upts = ma.points;
    upts.insert(upts.end(), mb.points.begin(), mb.points.end());
    const Mesh mu = sets::mesh_from_points(upts, opt.resolution);
    const std::size_t na = ma.size();
    std::vector<bool> in_b(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) in_b[i] = sets::distance(gb, mu.points[i]) <= 1e-12;
    const int deg_u = std::max(opt.n_max, opt.q_degree_max);
    const auto nodes_u = extremal::leja_points(mu, std::min<int>(deg_u + opt.n_max + 1, static_cast<int>(mu.size()) - 1));
    const auto basis_u = extremal::make_basis(nodes_u);
    const auto nodes_a = extremal::leja_points(ma, std::min<int>(opt.green_degree, static_cast<int>(na) - 1));
    if (!std::isfinite(nodes_a.log_nodal_supnorm)) throw rejection("glue_union_approx: A looks polar");

    GlueResult out;
    // chi_B on the union; mu keeps the A points first
    std::vector<cplx> chi(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) chi[i] = in_b[i] ? 1.0 : 0.0;
    std::vector<ComplexPoly> qpoly;
    const auto seq = best_approx_sequence(mu, chi, deg_u, basis_u);
    for (const auto& r : seq) {
        out.chi_dist.push_back(r.error);
        qpoly.push_back(r.approximant);
    }
    std::vector<double> xs, ys;
    for (int n = opt.fit_from; n <= opt.n_max; ++n) {
        xs.push_back(n);
        ys.push_back(std::log(out.chi_dist[static_cast<std::size_t>(n)]));
    }
    const LineFit fit = fit_line(xs, ys);
    out.rho_hat = std::exp(-fit.slope);
    out.r_squared = fit.r_squared;
    if (!(out.rho_hat > 1.0) || fit.r_squared < 0.9) {
        std::ostringstream os;
        os << "glue_union_approx: decay of dist(chi_B, P_n) is not geometric (rho = " << out.rho_hat
           << ", R^2 = " << fit.r_squared << ")";
        throw rejection(os.str());
    }
    double gmax = 0.0;
    for (auto z : mb.points) gmax = std::max(gmax, extremal::green_estimate(nodes_a, z));
    out.x = std::exp(gmax);
    out.k = std::max(1, static_cast<int>(std::ceil(std::log(opt.margin * out.x) / std::log(out.rho_hat))));
    while (std::pow(out.rho_hat, out.k) / out.x <= opt.margin) ++out.k;

    // p_n on A in the union basis
    const auto fa = f.sample(ma.points);
    const auto fu = [&] {
        std::vector<cplx> v(mu.size(), 0.0);
        for (std::size_t i = 0; i < mu.size(); ++i)
            if (!in_b[i]) v[i] = f(mu.points[i]);
        return v;
    }();
    double fa_norm = 0.0;
    for (auto v : fa) fa_norm = std::max(fa_norm, std::abs(v));
    const auto nodes_pa = extremal::leja_points(ma, std::min<int>(opt.n_max, static_cast<int>(na) - 1));
    const auto basis_pa = extremal::make_basis(nodes_pa);
    const auto pseq = best_approx_sequence(ma, fa, std::min<int>(opt.n_max, static_cast<int>(na) / 8), basis_pa);

    for (int n = 1; n * out.k <= opt.q_degree_max && n < static_cast<int>(pseq.size()); ++n) {
        const ComplexPoly& p = pseq[static_cast<std::size_t>(n)].approximant;
        const ComplexPoly& q = qpoly[static_cast<std::size_t>(n * out.k)];
        const int deg = n + n * out.k;
        if (deg > nodes_u.degree()) break;
        const ComplexPoly r = newton_interpolate_fn(basis_u, static_cast<std::size_t>(deg),
                                                    [&](cplx z) { return p(z) * (1.0 - q(z)); });
        double err = 0.0, rb = 0.0, pb = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const cplx rv = r(mu.points[i]);
            err = std::max(err, std::abs(fu[i] - rv));
            if (in_b[i]) {
                rb = std::max(rb, std::abs(rv));
                pb = std::max(pb, std::abs(p(mu.points[i])));
            }
        }
        out.degrees.push_back(n);
        out.r.push_back(r);
        out.errors.push_back(err);
        out.p_errors.push_back(pseq[static_cast<std::size_t>(n)].error);
        out.q_errors.push_back(out.chi_dist[static_cast<std::size_t>(n * out.k)]);
        out.r_on_b.push_back(rb);
        out.p_on_b.push_back(pb);
    }

    // |f|_l over the union and over A
    const auto useq = best_approx_sequence(mu, fu, opt.n_max, basis_u);
    std::vector<double> du, da;
    for (const auto& r : useq) du.push_back(r.error);
    for (std::size_t n = 0; n < pseq.size(); ++n) da.push_back(pseq[n].error);
    double fu_norm = 0.0;
    for (auto v : fu) fu_norm = std::max(fu_norm, std::abs(v));
    out.jackson_union = jackson_norm_from(fu_norm, du, opt.ell).value;
    out.jackson_a = da.size() >= 5 ? jackson_norm_from(fa_norm, da, opt.ell).value : fa_norm;
    out.norm_ratio = out.jackson_a > 0.0 ? out.jackson_union / out.jackson_a : 1.0;
    return out;
}

} // namespace jackson::approx

#endif
