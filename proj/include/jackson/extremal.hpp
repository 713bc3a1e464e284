#ifndef JACKSON_EXTREMAL_HPP
#define JACKSON_EXTREMAL_HPP

#include <jackson/green_oracle.hpp>
#include <jackson/lawson.hpp>
#include <jackson/mesh.hpp>
#include <jackson/poly.hpp>

#include <functional>
#include <optional>

namespace jackson::extremal {

using sets::Mesh;

/// log prod |z - z_j| without forming the product; -inf when z is a node.
inline double log_abs_prod(cplx z, std::span<const cplx> nodes)
{
    double mant = 1.0;
    long long ex = 0;
    std::size_t k = 0;
    for (auto w : nodes) {
        const double d = std::norm(z - w);
        if (d == 0.0) return -inf;
        mant *= d;
        if (++k % 8 == 0) {
            int e = 0;
            mant = std::frexp(mant, &e);
            ex += e;
        }
    }
    return 0.5 * (std::log(mant) + static_cast<double>(ex) * std::numbers::ln2);
}

inline double log_nodal_supnorm(std::span<const cplx> mesh, std::span<const cplx> nodes)
{
    double m = -inf;
    for (auto z : mesh) m = std::max(m, log_abs_prod(z, nodes));
    return m;
}

enum class NodeKind { leja, fekete_exact };

/// Ordered node system z_0..z_n on a mesh together with log ||omega_n||
/// over that mesh, omega_n(z) = prod (z - z_j).
struct NodeSequence {
    std::vector<cplx> nodes;
    std::vector<std::size_t> mesh_index;
    NodeKind kind = NodeKind::leja;
    double log_nodal_supnorm = 0.0;
    std::shared_ptr<const Mesh> source_mesh;

    int degree() const { return static_cast<int>(nodes.size()) - 1; }

    /// Recomputes log ||omega||_mesh for the first k nodes.
    double prefix_log_supnorm(std::size_t k) const
    {
        return extremal::log_nodal_supnorm(source_mesh->points, std::span(nodes).first(k));
    }

    /// exp(log ||omega_n|| / (n+1)): a capacity estimate, used as Newton scale.
    double capacity_estimate() const
    {
        return std::exp(log_nodal_supnorm / static_cast<double>(nodes.size()));
    }
};

inline std::shared_ptr<const NewtonBasis> make_basis(const NodeSequence& seq)
{
    auto b = std::make_shared<NewtonBasis>();
    b->nodes = seq.nodes;
    const double cap = seq.capacity_estimate();
    b->scale = (std::isfinite(cap) && cap > 0.0) ? cap : 1.0;
    return b;
}

namespace detail {

/// First index whose value is within a relative 1e-12 of the maximum.
inline std::size_t first_argmax(const std::vector<double>& v, const std::vector<bool>& skip)
{
    double best = -inf;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!skip[i]) best = std::max(best, v[i]);
    const double tol = 1e-12 * std::max(1.0, std::abs(best));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!skip[i] && v[i] >= best - tol) return i;
    return v.size();
}

} // namespace detail

/// Greedy Leja sequence on a mesh: z_0 is the point of largest modulus and
/// z_m maximises prod_{j<m} |z - z_j| over the remaining points. Ties go to
/// the smallest mesh index.
inline NodeSequence leja_points(const Mesh& mesh, int n)
{
    if (n < 0) throw rejection("leja_points: negative degree");
    const std::size_t m = mesh.size();
    if (m <= static_cast<std::size_t>(n)) throw rejection("leja_points: mesh exhausted (" + std::to_string(m) +
                                                         " points for degree " + std::to_string(n) + ")");
    NodeSequence seq;
    seq.kind = NodeKind::leja;
    seq.source_mesh = std::make_shared<const Mesh>(mesh);
    std::vector<double> score(m);
    std::vector<bool> chosen(m, false);
    for (std::size_t i = 0; i < m; ++i) score[i] = std::abs(mesh.points[i]);
    std::size_t pick = detail::first_argmax(score, chosen);
    std::fill(score.begin(), score.end(), 0.0);
    for (int k = 0; k <= n; ++k) {
        chosen[pick] = true;
        const cplx z = mesh.points[pick];
        seq.nodes.push_back(z);
        seq.mesh_index.push_back(pick);
        for (std::size_t i = 0; i < m; ++i) {
            const double d = std::abs(mesh.points[i] - z);
            score[i] += d > 0.0 ? std::log(d) : -inf;
        }
        if (k < n) pick = detail::first_argmax(score, chosen);
    }
    double sup = -inf;
    for (std::size_t i = 0; i < m; ++i)
        if (!chosen[i]) sup = std::max(sup, score[i]);
    seq.log_nodal_supnorm = sup;
    return seq;
}

inline double log_vandermonde(std::span<const cplx> nodes)
{
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) s += std::log(std::abs(nodes[i] - nodes[j]));
    return s;
}

/// Exhaustive search for the (n+1)-subset of the mesh maximising
/// prod_{i<j} |z_i - z_j|. Test oracle only.
inline NodeSequence fekete_points_exact(const Mesh& mesh, int n)
{
    if (n < 0 || n > 6) throw rejection("fekete_points_exact: degree must be in [0, 6]");
    const std::size_t m = mesh.size();
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    if (m < k) throw rejection("fekete_points_exact: mesh too small");
    double combos = 1.0;
    for (std::size_t i = 0; i < k; ++i) combos = combos * static_cast<double>(m - i) / static_cast<double>(i + 1);
    if (combos > 1e7) throw rejection("fekete_points_exact: C(|mesh|, n+1) exceeds 1e7");

    std::vector<double> ld(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            ld[i * m + j] = i == j ? -inf : std::log(std::abs(mesh.points[i] - mesh.points[j]));

    std::vector<std::size_t> cur, best;
    double best_val = -inf;
    std::function<void(std::size_t, double)> rec = [&](std::size_t start, double acc) {
        if (cur.size() == k) {
            if (acc > best_val) best_val = acc, best = cur;
            return;
        }
        for (std::size_t i = start; i + (k - cur.size()) <= m; ++i) {
            double add = 0.0;
            for (auto j : cur) add += ld[i * m + j];
            cur.push_back(i);
            rec(i + 1, acc + add);
            cur.pop_back();
        }
    };
    rec(0, 0.0);

    NodeSequence seq;
    seq.kind = NodeKind::fekete_exact;
    seq.source_mesh = std::make_shared<const Mesh>(mesh);
    seq.mesh_index = best;
    for (auto i : best) seq.nodes.push_back(mesh.points[i]);
    seq.log_nodal_supnorm = log_nodal_supnorm(mesh.points, seq.nodes);
    return seq;
}

/// (1/(n+1)) (log|omega_n(z)| - log||omega_n||_E), clamped at 0.
/// Lower-biased; converges to g_E as n grows.
inline double green_estimate(const NodeSequence& seq, cplx z)
{
    const double l = log_abs_prod(z, seq.nodes);
    if (!std::isfinite(l)) return 0.0;
    return std::max(0.0, (l - seq.log_nodal_supnorm) / static_cast<double>(seq.nodes.size()));
}

using GreenFn = std::function<double(cplx)>;

inline GreenFn oracle_green(const sets::CompactSetSpec& spec)
{
    sets::validate(spec);
    if (!sets::has_oracle(spec)) throw rejection("set '" + spec.name + "' has no closed-form Green oracle");
    return [spec](cplx z) { return sets::green_oracle(spec, z); };
}

inline GreenFn nodal_green(std::shared_ptr<const NodeSequence> seq)
{
    return [seq = std::move(seq)](cplx z) { return green_estimate(*seq, z); };
}

// -- n-th extremal function ---------------------------------------------------

enum class Certificate { converged, lower_witness, upper_feasible };

inline std::string certificate_name(Certificate c)
{
    switch (c) {
    case Certificate::converged: return "converged";
    case Certificate::lower_witness: return "lower-witness";
    case Certificate::upper_feasible: return "upper-feasible";
    }
    return "?";
}

/// Estimate of Phi_n(z) = sup{|p(z)| : p in P_n, ||p||_mesh <= 1}.
/// `value` is attained by `witness`; `upper` bounds Phi_n(z) on the mesh
/// from above (inf when no bound is available).
struct ExtremalValue {
    int n = 0;
    cplx z;
    double value = 1.0;
    double upper = 1.0;
    Certificate certificate = Certificate::converged;
    double residual = 0.0; // relative bracket width (upper - value) / upper
    int iterations = 0;
    ComplexPoly witness;
    Eigen::VectorXd weights; // final Lawson weights, for warm starts
};

struct ShellInfimum {
    int n = 0;
    double t = 0.0;
    double value = 1.0;  // min over evaluated shell points of the witness values
    double upper = 1.0;  // min over evaluated shell points of the upper bounds
    cplx argmin;
    std::size_t evaluated = 0;
};

/// Candidate search used by ExtremalSolver::shell_inf.
struct ShellSearch {
    double gap_tolerance = 1e-7;
    int lawson_iterations = 12;
    std::size_t exhaustive_below = 64; // solve at every sample of smaller shells
    std::size_t proxy_candidates = 16;
    std::size_t spaced_candidates = 24;
    std::size_t descents = 3;
};

/// Holds a mesh of E with its Leja sequence and Newton basis, and solves
/// min{||p||_mesh : p(z) = 1, p in P_n} by Lawson iteration.
class ExtremalSolver {
public:
    ExtremalSolver(const Mesh& mesh, int max_degree)
        : nodes_(std::make_shared<NodeSequence>(leja_points(mesh, max_degree)))
    {
        basis_ = make_basis(*nodes_);
        vmat_ = basis_->matrix(mesh.points, static_cast<std::size_t>(max_degree));
        const auto& pts = mesh.points;
        cplx c = 0.0;
        for (auto z : pts) c += z;
        centre_ = c / static_cast<double>(pts.size());
        for (auto z : pts) radius_ = std::max(radius_, std::abs(z - centre_));
    }

    const Mesh& mesh() const { return *nodes_->source_mesh; }
    const NodeSequence& nodes() const { return *nodes_; }
    std::shared_ptr<const NodeSequence> node_ptr() const { return nodes_; }
    const std::shared_ptr<const NewtonBasis>& basis() const { return basis_; }
    int max_degree() const { return nodes_->degree(); }

    ExtremalValue phi(int n, cplx z, MinimaxOptions opt = {}) const
    {
        const auto& pts = mesh().points;
        if (n < 0) throw rejection("phi_n: negative degree");
        if (n > max_degree()) throw rejection("phi_n: degree exceeds solver capacity");
        if (pts.size() < 8 * static_cast<std::size_t>(std::max(n, 1)))
            throw rejection("phi_n: mesh needs at least 8n points (" + std::to_string(pts.size()) + " for n = " +
                            std::to_string(n) + ")");
        ExtremalValue out;
        out.n = n;
        out.z = z;
        if (n == 0 || on_set(z)) {
            out.witness = ComplexPoly::constant(basis_, 1.0);
            return out;
        }
        if (std::abs(z - centre_) > 10.0 * 2.0 * radius_) return nodal_lower(n, z);

        // eliminate the coefficient of the basis function largest at z:
        // with gamma = N_k(z), gamma p = N_k - sum_{j != k} a_j (N_k N_j(z) - gamma N_j)
        const auto m = static_cast<Eigen::Index>(pts.size());
        const Eigen::MatrixXcd vz = basis_->matrix(std::span(&z, 1), static_cast<std::size_t>(n));
        Eigen::Index kstar = 0;
        vz.row(0).cwiseAbs().maxCoeff(&kstar);
        const cplx gamma = vz(0, kstar);
        Eigen::MatrixXcd a(m, n);
        for (Eigen::Index j = 0, col = 0; j <= n; ++j) {
            if (j == kstar) continue;
            a.col(col++) = vmat_.col(kstar) * vz(0, j) - gamma * vmat_.col(j);
        }
        const Eigen::VectorXcd b = vmat_.col(kstar);
        const LawsonResult r = minimax(a, b, opt);
        if (r.rank < n)
            throw rejection("phi_n: ill-conditioned basis at degree " + std::to_string(n) + "; achieved degree " +
                            std::to_string(r.rank));
        const double e = r.upper;
        out.value = std::abs(gamma) / e;
        out.upper = r.lower > 0.0 ? std::abs(gamma) / r.lower : inf;
        out.residual = r.gap();
        out.iterations = r.iterations;
        out.certificate = r.converged ? Certificate::converged : Certificate::lower_witness;
        out.weights = r.weights;
        // witness = residual / e: unit mesh norm, modulus |gamma| / e at z
        std::vector<cplx> vals;
        vals.reserve(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            const auto row = static_cast<Eigen::Index>(nodes_->mesh_index[static_cast<std::size_t>(k)]);
            vals.push_back(r.residual(row) / e);
        }
        out.witness = newton_interpolate(basis_, vals);
        return out;
    }

    /// phi_n(t) = inf over the shell of Phi_n, taken over shell samples.
    /// Small shells are solved at every sample; otherwise candidates are
    /// evenly spaced samples plus those ranked first by the nodal proxy
    /// |omega_n|, refined by descent over nearest shell neighbours.
    /// `seeds` adds candidates.
    ShellInfimum shell_inf(int n, const Mesh& shell, std::span<const cplx> seeds = {}, ShellSearch search = {}) const
    {
        if (shell.role.kind != sets::MeshRole::Kind::shell) throw rejection("phi_shell_inf: mesh is not a shell");
        if (shell.parent && mesh().parent && sets::canonical(*shell.parent) != sets::canonical(*mesh().parent))
            throw rejection("phi_shell_inf: shell belongs to a different set");
        ShellInfimum out;
        out.n = n;
        out.t = shell.role.param;
        out.value = inf;
        out.upper = inf;
        const auto& pts = shell.points;
        std::vector<double> val(pts.size(), -1.0);
        Eigen::VectorXd warm;
        auto eval = [&](std::size_t i) {
            if (val[i] >= 0.0) return val[i];
            MinimaxOptions opt;
            opt.gap_tolerance = search.gap_tolerance;
            opt.lawson_iterations = search.lawson_iterations;
            if (warm.size() == static_cast<Eigen::Index>(mesh().size())) opt.initial_weights = warm;
            const auto v = phi(n, pts[i], opt);
            if (v.weights.size() > 0) warm = v.weights.cwiseMax(1e-6 * v.weights.maxCoeff());
            ++out.evaluated;
            out.upper = std::min(out.upper, v.upper);
            if (v.value < out.value) out.value = v.value, out.argmin = pts[i];
            return val[i] = v.value;
        };
        if (pts.size() <= search.exhaustive_below) {
            for (std::size_t i = 0; i < pts.size(); ++i) eval(i);
            return out;
        }
        const auto first = std::span<const cplx>(nodes_->nodes).first(static_cast<std::size_t>(n));
        std::vector<std::pair<double, std::size_t>> proxy;
        proxy.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) proxy.emplace_back(log_abs_prod(pts[i], first), i);
        std::sort(proxy.begin(), proxy.end());
        auto nearest = [&](cplx z) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < pts.size(); ++i)
                if (std::abs(pts[i] - z) < std::abs(pts[best] - z)) best = i;
            return best;
        };
        std::vector<std::size_t> starts;
        for (std::size_t j = 0; j < std::min(search.proxy_candidates, proxy.size()); ++j) starts.push_back(proxy[j].second);
        for (std::size_t j = 0; j < search.spaced_candidates; ++j) starts.push_back(j * pts.size() / search.spaced_candidates);
        for (auto z : seeds) starts.push_back(nearest(z));
        std::sort(starts.begin(), starts.end());
        starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
        for (auto i : starts) eval(i);
        std::stable_sort(starts.begin(), starts.end(), [&](auto x, auto y) { return val[x] < val[y]; });
        for (std::size_t s = 0; s < std::min(search.descents, starts.size()); ++s) {
            std::size_t cur = starts[s];
            for (int step = 0; step < 60; ++step) {
                std::vector<std::pair<double, std::size_t>> near;
                for (std::size_t i = 0; i < pts.size(); ++i)
                    if (i != cur) near.emplace_back(std::abs(pts[i] - pts[cur]), i);
                const auto k = std::min<std::ptrdiff_t>(6, std::ssize(near));
                std::partial_sort(near.begin(), near.begin() + k, near.end());
                std::size_t next = cur;
                for (std::ptrdiff_t j = 0; j < k; ++j) {
                    const auto i = near[static_cast<std::size_t>(j)].second;
                    if (eval(i) < val[next]) next = i;
                }
                if (next == cur) break;
                cur = next;
            }
        }
        return out;
    }

    bool on_set(cplx z) const
    {
        const auto& m = mesh();
        if (m.parent) return sets::distance(*m.parent, z) <= 1e-12;
        for (auto w : m.points)
            if (std::abs(w - z) <= 1e-12) return true;
        return false;
    }

private:
    ExtremalValue nodal_lower(int n, cplx z) const
    {
        ExtremalValue out;
        out.n = n;
        out.z = z;
        const auto first = std::span<const cplx>(nodes_->nodes).first(static_cast<std::size_t>(n));
        const double lsup = nodes_->prefix_log_supnorm(static_cast<std::size_t>(n));
        out.value = std::exp(log_abs_prod(z, first) - lsup);
        out.upper = inf;
        out.certificate = Certificate::lower_witness;
        out.residual = 1.0;
        const double s = std::exp(-lsup);
        out.witness = newton_interpolate_fn(basis_, static_cast<std::size_t>(n), [&](cplx x) {
            return std::exp(log_abs_prod(x, first)) * s;
        });
        return out;
    }

    std::shared_ptr<NodeSequence> nodes_;
    std::shared_ptr<const NewtonBasis> basis_;
    Eigen::MatrixXcd vmat_;
    cplx centre_{0.0, 0.0};
    double radius_ = 0.0;
};

inline ExtremalValue phi_n(const Mesh& mesh_e, int n, cplx z)
{
    return ExtremalSolver(mesh_e, std::max(n, 1)).phi(n, z);
}

inline ShellInfimum phi_shell_inf(const Mesh& mesh_e, int n, double t, const Mesh& shell)
{
    if (shell.role.kind != sets::MeshRole::Kind::shell || std::abs(shell.role.param - t) > 1e-12 * t)
        throw rejection("phi_shell_inf: shell mesh does not have role shell(t)");
    return ExtremalSolver(mesh_e, std::max(n, 1)).shell_inf(n, shell);
}

// -- level sets ----------------------------------------------------------------

struct LevelSet {
    double rho = 1.0;
    std::vector<std::pair<cplx, cplx>> segments;
    double min_distance = inf; // dist(C(E, rho), E)
    double max_distance = 0.0; // max over C(E, rho) of dist(z, E)
    sets::Box window;
};

inline sets::Box padded_box(const sets::CompactSetSpec& spec, double pad)
{
    auto b = sets::bounding_box(sets::lower(spec));
    return {b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad};
}

/// Contour {g = log rho} by marching squares on a grid of pitch `resolution`.
inline LevelSet level_set(const sets::CompactSetSpec& spec, const GreenFn& g, double rho, double resolution,
                          std::optional<sets::Box> window = std::nullopt)
{
    if (!(rho > 1.0)) throw rejection("level_set: rho must exceed 1");
    if (!(resolution > 0.0)) throw rejection("level_set: resolution must be positive");
    const sets::Geometry geo = sets::lower(spec);
    const double pad0 = sets::diameter(geo) + 1.0;
    const sets::Box w = window ? *window : padded_box(spec, pad0);
    const double level = std::log(rho);
    const int nx = static_cast<int>(std::ceil(w.width() / resolution));
    const int ny = static_cast<int>(std::ceil(w.height() / resolution));
    const double hx = w.width() / nx, hy = w.height() / ny;
    std::vector<double> v(static_cast<std::size_t>(nx + 1) * (ny + 1));
    auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j) * (nx + 1) + i]; };
    auto pt = [&](int i, int j) { return cplx(w.xmin + i * hx, w.ymin + j * hy); };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) at(i, j) = g(pt(i, j)) - level;
    for (int i = 0; i <= nx; ++i)
        for (int j : {0, ny})
            if (at(i, j) <= 0.0) {
                const double pad = std::max(w.width(), w.height());
                throw rejection("level_set: level set exits the window; try padding the set's bounding box by " +
                                std::to_string(pad));
            }
    for (int j = 0; j <= ny; ++j)
        for (int i : {0, nx})
            if (at(i, j) <= 0.0)
                throw rejection("level_set: level set exits the window; try padding the set's bounding box by " +
                                std::to_string(std::max(w.width(), w.height())));

    LevelSet out;
    out.rho = rho;
    out.window = w;
    auto cross = [&](int i0, int j0, int i1, int j1) {
        const double a = at(i0, j0), b = at(i1, j1);
        const double s = a / (a - b);
        return pt(i0, j0) + s * (pt(i1, j1) - pt(i0, j0));
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int c[4][2] = {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}};
            std::vector<cplx> hits;
            for (int e = 0; e < 4; ++e) {
                const auto [i0, j0] = std::pair{c[e][0], c[e][1]};
                const auto [i1, j1] = std::pair{c[(e + 1) % 4][0], c[(e + 1) % 4][1]};
                if ((at(i0, j0) > 0.0) != (at(i1, j1) > 0.0)) hits.push_back(cross(i0, j0, i1, j1));
            }
            if (hits.size() == 2) out.segments.emplace_back(hits[0], hits[1]);
            else if (hits.size() == 4) {
                out.segments.emplace_back(hits[0], hits[1]);
                out.segments.emplace_back(hits[2], hits[3]);
            }
            for (auto z : hits) {
                const double d = sets::distance(geo, z);
                out.min_distance = std::min(out.min_distance, d);
                out.max_distance = std::max(out.max_distance, d);
            }
        }
    if (out.segments.empty()) throw rejection("level_set: no contour found in the window");
    return out;
}

inline LevelSet level_set(const sets::CompactSetSpec& spec, const NodeSequence& nodes, double rho, double resolution,
                          std::optional<sets::Box> window = std::nullopt)
{
    auto seq = std::make_shared<const NodeSequence>(nodes);
    return level_set(spec, nodal_green(seq), rho, resolution, window);
}

} // namespace jackson::extremal

#endif
