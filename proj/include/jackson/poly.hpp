#ifndef JACKSON_POLY_HPP
#define JACKSON_POLY_HPP

#include <jackson/common.hpp>

#include <Eigen/Dense>

#include <memory>
#include <span>

namespace jackson {

/// Scaled Newton basis on an ordered node list:
///   N_0 = 1,  N_k(x) = N_{k-1}(x) * (x - z_{k-1}) / scale.
/// With Leja-ordered nodes and scale close to the capacity of the set the
/// basis stays well conditioned at high degree.
struct NewtonBasis {
    std::vector<cplx> nodes;
    double scale = 1.0;

    std::size_t max_degree() const { return nodes.size(); }

    /// Matrix of N_0..N_{degree} at the given points.
    Eigen::MatrixXcd matrix(std::span<const cplx> pts, std::size_t degree) const
    {
        if (degree > nodes.size()) throw rejection("NewtonBasis: degree exceeds the available nodes");
        Eigen::MatrixXcd v(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(degree + 1));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cplx nk = 1.0;
            const auto r = static_cast<Eigen::Index>(i);
            v(r, 0) = nk;
            for (std::size_t k = 1; k <= degree; ++k) {
                nk *= (pts[i] - nodes[k - 1]) / scale;
                v(r, static_cast<Eigen::Index>(k)) = nk;
            }
        }
        return v;
    }
};

/// Polynomial stored by its coefficients in a shared Newton basis.
class ComplexPoly {
public:
    ComplexPoly() = default;
    ComplexPoly(std::shared_ptr<const NewtonBasis> basis, std::vector<cplx> coeffs)
        : basis_(std::move(basis)), coeffs_(std::move(coeffs))
    {
        if (!coeffs_.empty() && coeffs_.size() - 1 > basis_->nodes.size())
            throw rejection("ComplexPoly: degree exceeds the number of basis nodes");
    }

    static ComplexPoly constant(std::shared_ptr<const NewtonBasis> basis, cplx c) { return {std::move(basis), {c}}; }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    const std::shared_ptr<const NewtonBasis>& basis() const { return basis_; }
    bool empty() const { return coeffs_.empty(); }

    /// Horner scheme on the Newton form.
    cplx operator()(cplx z) const
    {
        if (coeffs_.empty()) return 0.0;
        cplx p = coeffs_.back();
        for (int k = degree() - 1; k >= 0; --k)
            p = coeffs_[static_cast<std::size_t>(k)] + p * (z - basis_->nodes[static_cast<std::size_t>(k)]) / basis_->scale;
        return p;
    }

    std::vector<cplx> evaluate(std::span<const cplx> pts) const
    {
        std::vector<cplx> out;
        out.reserve(pts.size());
        for (auto z : pts) out.push_back((*this)(z));
        return out;
    }

    double sup_norm(std::span<const cplx> pts) const
    {
        double m = 0.0;
        for (auto z : pts) m = std::max(m, std::abs((*this)(z)));
        return m;
    }

private:
    std::shared_ptr<const NewtonBasis> basis_;
    std::vector<cplx> coeffs_;
};

/// Interpolates values given at the first values.size() basis nodes;
/// divided differences with the basis scale folded into every division.
inline ComplexPoly newton_interpolate(std::shared_ptr<const NewtonBasis> basis, std::span<const cplx> values)
{
    const std::size_t m = values.size();
    if (m == 0) throw rejection("newton_interpolate: no values");
    if (m > basis->nodes.size())
        throw rejection("newton_interpolate: more values than basis nodes");
    std::vector<cplx> d(values.begin(), values.end());
    const auto& z = basis->nodes;
    for (std::size_t k = 1; k < m; ++k)
        for (std::size_t i = m - 1; i >= k; --i) {
            d[i] = (d[i] - d[i - 1]) / ((z[i] - z[i - k]) / basis->scale);
            if (i == k) break;
        }
    return {std::move(basis), std::move(d)};
}

/// Interpolates a callable at the first degree+1 basis nodes.
template <typename F>
ComplexPoly newton_interpolate_fn(std::shared_ptr<const NewtonBasis> basis, std::size_t degree, F&& f)
{
    std::vector<cplx> vals;
    vals.reserve(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) vals.push_back(f(basis->nodes[k]));
    return newton_interpolate(std::move(basis), vals);
}

} // namespace jackson

#endif
