#include "opstar/triple.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace opstar {

Element triple_product(const Element& a, const Element& b, const Element& c) {
    if (a.shape() != b.shape() || a.shape() != c.shape())
        throw std::invalid_argument("triple_product: shape mismatch");
    const Element bs = adjoint(b);
    return scale(0.5, a * bs * c + c * bs * a);
}

Element odd_triple_power(const Element& a, int m) {
    if (m < 1 || m % 2 == 0)
        throw std::invalid_argument("odd_triple_power: exponent must be odd and >= 1");
    Element p = a;
    for (int k = 1; k < m; k += 2) p = triple_product(a, a, p);
    return p;
}

PolarData polar(const Element& a, const Tolerances& tol) {
    tol.validate();
    const int nb = a.blocks();
    std::vector<Eigen::JacobiSVD<Matrix>> svds;
    svds.reserve(nb);
    double sig_max = 0.0;
    for (int b = 0; b < nb; ++b) {
        svds.emplace_back(a.block(b), Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svds.back().singularValues().size() > 0)
            sig_max = std::max(sig_max, svds.back().singularValues()(0));
    }
    const double cut = tol.rank_tol * sig_max;

    PolarData out;
    out.ranks.resize(nb);
    std::vector<Matrix> us, abss;
    us.reserve(nb);
    abss.reserve(nb);
    for (int b = 0; b < nb; ++b) {
        const auto& svd = svds[b];
        const auto& s = svd.singularValues();
        int r = 0;
        while (r < s.size() && s(r) > cut) ++r;
        out.ranks[b] = r;
        const Matrix ur = svd.matrixU().leftCols(r);
        const Matrix vr = svd.matrixV().leftCols(r);
        us.push_back(Matrix(ur * vr.adjoint()));
        abss.push_back(Matrix(vr * s.head(r).asDiagonal() * vr.adjoint()));
    }
    out.u = Element(a.shape(), std::move(us));
    out.abs = Element(a.shape(), std::move(abss));
    return out;
}

Element triple_functional_calculus(const Element& a,
                                   const std::function<double(double)>& f,
                                   const Tolerances& tol) {
    if (std::abs(f(0.0)) > 1e-14)
        throw std::invalid_argument("triple_functional_calculus: f(0) must vanish");
    const PolarData p = polar(a, tol);
    std::vector<Matrix> fb;
    fb.reserve(a.blocks());
    for (int b = 0; b < a.blocks(); ++b) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(p.abs.block(b));
        Eigen::VectorXd mu = es.eigenvalues().cwiseMax(0.0);
        for (int k = 0; k < mu.size(); ++k) mu(k) = f(mu(k));
        fb.push_back(Matrix(es.eigenvectors() * mu.asDiagonal() *
                            es.eigenvectors().adjoint()));
    }
    return p.u * Element(a.shape(), std::move(fb));
}

Element cubic_root(const Element& a, const Tolerances& tol) {
    return triple_functional_calculus(a, [](double t) { return std::cbrt(t); }, tol);
}

CubicRootLimit cubic_root_limit(const Element& a, int n_steps, const Tolerances& tol) {
    if (n_steps < 0)
        throw std::invalid_argument("cubic_root_limit: n_steps must be >= 0");
    Element it = a;
    for (int k = 0; k < n_steps; ++k) it = cubic_root(it, tol);
    const Element target = polar(a, tol).u;
    return CubicRootLimit{it, frobenius_norm(it - target), n_steps};
}

Element peirce_projection(const Element& e, int j, const Element& x,
                          const Tolerances& tol) {
    if (j < 0 || j > 2)
        throw std::invalid_argument("peirce_projection: index must be 0, 1 or 2");
    if (e.shape() != x.shape())
        throw std::invalid_argument("peirce_projection: shape mismatch");
    if (!classify(e, tol).partial_isometry)
        throw std::invalid_argument("peirce_projection: e is not a partial isometry");

    const Element one = Element::identity(e.shape());
    const Element p = e * adjoint(e);   // range projection
    const Element q = adjoint(e) * e;   // domain projection
    switch (j) {
        case 2: return p * x * q;
        case 1: return (one - p) * x * q + p * x * (one - q);
        default: return (one - p) * x * (one - q);
    }
}

HomotopeTag::HomotopeTag(Element r_, const Tolerances& tol) : r(std::move(r_)) {
    if (!classify(r, tol).unitary)
        throw std::invalid_argument("HomotopeTag: r must be unitary");
}

Element homotope_product(const Element& x, const Element& y, const HomotopeTag& tag) {
    if (x.shape() != tag.r.shape() || y.shape() != tag.r.shape())
        throw std::invalid_argument("homotope_product: shape mismatch");
    return x * adjoint(tag.r) * y;
}

Element homotope_involution(const Element& x, const HomotopeTag& tag) {
    if (x.shape() != tag.r.shape())
        throw std::invalid_argument("homotope_involution: shape mismatch");
    return tag.r * adjoint(x) * tag.r;
}

std::vector<Element> homotope_center(const HomotopeTag& tag) {
    std::vector<Element> out;
    for (const Element& z : center_basis(tag.r.shape())) out.push_back(tag.r * z);
    return out;
}

}  // namespace opstar
