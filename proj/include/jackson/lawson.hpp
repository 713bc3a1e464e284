#ifndef JACKSON_LAWSON_HPP
#define JACKSON_LAWSON_HPP

#include <jackson/common.hpp>

#include <Eigen/Dense>

#include <numeric>

namespace jackson {

struct LawsonOptions {
    int max_iterations = 200;
    double gap_tolerance = 1e-10;    // stop when (upper - lower) / upper falls below
    double change_tolerance = 1e-10; // or when the dual bound stops moving
    double weight_floor = 1e-14;
    Eigen::VectorXd initial_weights; // optional warm start (size M)
};

/// Result of the discrete complex Chebyshev problem min_c max_i |b_i - (A c)_i|.
struct LawsonResult {
    Eigen::VectorXcd coefficients;
    Eigen::VectorXcd residual;      // b - A c for the returned coefficients
    double upper = inf;             // max |residual|: attained, so an upper bound on the optimum
    double lower = 0.0;             // weighted least-squares error: a lower bound on the optimum
    int iterations = 0;
    bool converged = false;
    bool stalled = false;
    int rank = 0;
    Eigen::VectorXd weights;
    std::vector<double> history;    // upper bound after each iteration

    double gap() const { return upper > 0.0 ? (upper - lower) / upper : 0.0; }
};

/// Lawson's iteratively reweighted least squares. Every weighted solve gives
/// a lower bound sqrt(sum w |r|^2) on the minimax error (the weights sum to
/// one), and the best iterate gives an attained upper bound.
inline LawsonResult lawson(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b, const LawsonOptions& opt = {})
{
    const Eigen::Index m = a.rows(), n = a.cols();
    LawsonResult res;
    if (m == 0) throw rejection("lawson: empty sample set");
    if (!b.allFinite() || !a.allFinite()) throw rejection("lawson: non-finite input");

    if (n == 0) {
        res.coefficients.resize(0);
        res.residual = b;
        res.upper = b.cwiseAbs().maxCoeff();
        res.lower = res.upper;
        res.converged = true;
        return res;
    }

    // column equilibration
    Eigen::VectorXd colscale(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double s = a.col(k).norm();
        colscale(k) = s > 0.0 ? 1.0 / s : 1.0;
    }
    const Eigen::MatrixXcd as = a * colscale.asDiagonal();

    Eigen::VectorXd w = opt.initial_weights.size() == m ? opt.initial_weights : Eigen::VectorXd::Constant(m, 1.0);
    w /= w.sum();
    double floor = opt.weight_floor;
    bool restarted = false;
    double prev_lower = 0.0;
    const double bnorm = b.cwiseAbs().maxCoeff();

    std::vector<Eigen::Index> rows(static_cast<std::size_t>(m));
    for (int it = 0; it < opt.max_iterations; ++it) {
        // rows with negligible weight do not influence the solve
        const double wmax = w.maxCoeff();
        rows.clear();
        for (Eigen::Index i = 0; i < m; ++i)
            if (w(i) > 1e-13 * wmax) rows.push_back(i);
        if (static_cast<Eigen::Index>(rows.size()) < 2 * n) {
            rows.resize(static_cast<std::size_t>(m));
            std::iota(rows.begin(), rows.end(), Eigen::Index{0});
        }
        const auto k = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXcd wa(k, n);
        Eigen::VectorXcd wb(k);
        double wsum = 0.0;
        for (Eigen::Index r = 0; r < k; ++r) {
            const double sw = std::sqrt(w(rows[static_cast<std::size_t>(r)]));
            wa.row(r) = sw * as.row(rows[static_cast<std::size_t>(r)]);
            wb(r) = sw * b(rows[static_cast<std::size_t>(r)]);
            wsum += w(rows[static_cast<std::size_t>(r)]);
        }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(wa);
        const Eigen::VectorXcd c = qr.solve(wb);
        if (it == 0) {
            const auto diag = qr.matrixQR().diagonal().cwiseAbs();
            const double dmax = diag.maxCoeff();
            res.rank = 0;
            for (Eigen::Index j = 0; j < n; ++j)
                if (diag(j) > 1e-13 * dmax) ++res.rank;
        }
        const Eigen::VectorXcd r = b - as * c;
        const Eigen::VectorXd ar = r.cwiseAbs();
        const double up = ar.maxCoeff();
        // the dual bound needs weights summing to one over the rows used
        double ls = 0.0;
        for (Eigen::Index i : rows) ls += w(i) * ar(i) * ar(i);
        const double lo = std::sqrt(ls / wsum);

        res.iterations = it + 1;
        res.lower = std::max(res.lower, lo);
        if (up < res.upper) {
            res.upper = up;
            res.coefficients = colscale.asDiagonal() * c;
            res.residual = r;
        }
        res.history.push_back(res.upper);

        if (res.upper <= 1e-15 * bnorm || res.gap() < opt.gap_tolerance) {
            res.converged = true;
            break;
        }
        // stalled: neither bound has moved for a while
        const bool flat_lower = it > 0 && std::abs(lo - prev_lower) <= opt.change_tolerance * std::max(lo, 1e-300);
        const std::size_t h = res.history.size();
        const bool flat_upper = h > 25 && res.history[h - 26] - res.upper <= opt.change_tolerance * res.upper;
        if (flat_lower && flat_upper) {
            if (!restarted && res.gap() > 1e-6) {
                restarted = true;
                floor *= 2.0;
            } else {
                res.stalled = res.gap() > 1e-6;
                res.converged = !res.stalled;
                break;
            }
        }
        prev_lower = lo;

        w = w.cwiseProduct(ar);
        const double s = w.sum();
        if (!(s > 0.0)) break;
        w /= s;
        w = w.cwiseMax(floor * w.maxCoeff());
        w /= w.sum();
    }
    res.lower = std::min(res.lower, res.upper);
    res.weights = w;
    return res;
}

/// sqrt(min_c sum w_i |b_i - (A c)_i|^2) for weights normalised to sum one:
/// a lower bound on min_c max_i |b_i - (A c)_i| for any w >= 0.
inline double weighted_ls_bound(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b, const Eigen::VectorXd& w)
{
    const double s = w.sum();
    if (!(s > 0.0)) return 0.0;
    const Eigen::VectorXd sw = (w / s).cwiseSqrt();
    const Eigen::MatrixXcd wa = sw.asDiagonal() * a;
    const Eigen::VectorXcd wb = sw.asDiagonal() * b;
    const Eigen::VectorXcd c = wa.householderQr().solve(wb);
    return (wb - wa * c).norm();
}

/// Log-barrier Newton method for min t s.t. |b_i - (A c)_i| <= t, started
/// from a strictly feasible point. Polishes a Lawson iterate when Lawson
/// converges slowly.
inline void barrier_polish(const Eigen::MatrixXcd& a0, const Eigen::VectorXcd& b0, Eigen::VectorXcd& c,
                           double gap_tolerance, LawsonResult& res, const Eigen::VectorXd& colscale)
{
    // rescaled so that the optimal value is close to one
    const double unit = res.upper;
    const Eigen::MatrixXcd as = a0 / unit;
    const Eigen::VectorXcd b = b0 / unit;
    const Eigen::Index m = as.rows(), n = as.cols(), dim = 2 * n + 1;
    Eigen::VectorXcd r = b - as * c;
    double t = 1.05 * r.cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd ac = as.conjugate();
    double tau = 2.0 * static_cast<double>(m) / std::max(1.0 - res.lower / unit, 1e-12);
    auto slack = [](double tt, cplx ri) {
        const double ar = std::abs(ri);
        return tt > ar ? (tt - ar) * (tt + ar) : -1.0;
    };

    // barrier value; with `guard`, also refuses steps that cut any slack
    // below 5% of its current value
    Eigen::VectorXd sinv(m);
    auto barrier = [&](const Eigen::VectorXcd& rr, double tt, double& f, bool guard) {
        f = tau * tt;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double si = slack(tt, rr(i));
            if (!(si > 0.0) || (guard && si * sinv(i) < 0.05)) return false;
            f -= std::log(si);
        }
        return true;
    };

    for (int stage = 0; stage < 30; ++stage) {
        for (int newton = 0; newton < 60; ++newton) {
            for (Eigen::Index i = 0; i < m; ++i) sinv(i) = 1.0 / slack(t, r(i));
            // exact gradient
            const Eigen::VectorXcd gc = ac.transpose() * (2.0 * sinv.cwiseProduct(r.real()).cast<cplx>() +
                                                          2.0 * cplx(0, 1) * sinv.cwiseProduct(r.imag()).cast<cplx>());
            Eigen::VectorXd grad(dim);
            grad.head(n) = -gc.real();
            grad.segment(n, n) = -gc.imag();
            grad(2 * n) = tau - 2.0 * t * sinv.sum();
            // Hessian from the rows that matter; dropped rows are positive
            // semidefinite terms, so the model stays convex
            const double smax = sinv.maxCoeff();
            std::vector<Eigen::Index> keep;
            for (Eigen::Index i = 0; i < m; ++i)
                if (sinv(i) >= 1e-8 * smax) keep.push_back(i);
            const auto mk = static_cast<Eigen::Index>(keep.size());
            Eigen::MatrixXd jac(mk, dim);
            Eigen::MatrixXcd ak(mk, n);
            Eigen::VectorXd dk(mk);
            double tt = 0.0;
            for (Eigen::Index q = 0; q < mk; ++q) {
                const Eigen::Index i = keep[static_cast<std::size_t>(q)];
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx u = ac(i, k) * r(i);
                    jac(q, k) = 2.0 * u.real() * sinv(i);
                    jac(q, n + k) = 2.0 * u.imag() * sinv(i);
                }
                jac(q, 2 * n) = 2.0 * t * sinv(i);
                ak.row(q) = as.row(i);
                dk(q) = 2.0 * sinv(i);
                tt += 2.0 * sinv(i);
            }
            Eigen::MatrixXd h(dim, dim);
            h.setZero();
            h.selfadjointView<Eigen::Lower>().rankUpdate(jac.transpose());
            h.triangularView<Eigen::StrictlyUpper>() = h.transpose();
            const Eigen::MatrixXcd k = ak.adjoint() * dk.asDiagonal() * ak;
            h.topLeftCorner(n, n) += k.real();
            h.block(n, n, n, n) += k.real();
            h.block(0, n, n, n) -= k.imag();
            h.block(n, 0, n, n) += k.imag();
            h(2 * n, 2 * n) -= tt;
            const Eigen::VectorXd step = h.ldlt().solve(-grad);
            if (!step.allFinite()) return;
            const double dec = -grad.dot(step);
            if (dec < 1e-6) break;
            Eigen::VectorXcd dc(n);
            for (Eigen::Index j = 0; j < n; ++j) dc(j) = cplx(step(j), step(n + j));
            const Eigen::VectorXcd dr = -(as * dc);
            double f0 = 0.0, f1 = 0.0;
            barrier(r, t, f0, false);
            double alpha = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
                const Eigen::VectorXcd r1 = r + alpha * dr;
                const double t1 = t + alpha * step(2 * n);
                if (barrier(r1, t1, f1, true) && f1 <= f0 - 0.25 * alpha * dec) {
                    c += alpha * dc;
                    r = r1;
                    t = t1;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        const double up = r.cwiseAbs().maxCoeff() * unit;
        if (up < res.upper) {
            res.upper = up;
            res.coefficients = colscale.asDiagonal() * c;
            res.residual = r * unit;
        }
        res.lower = std::max(res.lower, weighted_ls_bound(a0, b0, sinv));
        ++res.iterations;
        if (res.gap() < gap_tolerance) {
            res.converged = true;
            res.stalled = false;
            res.weights = sinv / sinv.sum();
            return;
        }
        tau *= 8.0;
    }
}

struct MinimaxOptions {
    int lawson_iterations = 40;
    double gap_tolerance = 1e-9;
    Eigen::VectorXd initial_weights;
};

/// Discrete complex Chebyshev problem: Lawson iterations, then barrier
/// Newton steps if the bracket is still open.
inline LawsonResult minimax(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b, const MinimaxOptions& opt = {})
{
    LawsonOptions lo;
    lo.max_iterations = std::max(1, opt.lawson_iterations);
    lo.gap_tolerance = opt.gap_tolerance;
    lo.initial_weights = opt.initial_weights;
    LawsonResult res = lawson(a, b, lo);
    if (res.converged && res.gap() < opt.gap_tolerance) return res;
    if (a.cols() == 0 || res.upper <= 0.0) return res;
    Eigen::VectorXd colscale(a.cols());
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        const double s = a.col(k).norm();
        colscale(k) = s > 0.0 ? 1.0 / s : 1.0;
    }
    const Eigen::MatrixXcd as = a * colscale.asDiagonal();
    Eigen::VectorXcd c = colscale.cwiseInverse().asDiagonal() * res.coefficients;
    barrier_polish(as, b, c, opt.gap_tolerance, res, colscale);
    res.lower = std::min(res.lower, res.upper);
    return res;
}

} // namespace jackson

#endif
