#include "opstar/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <numbers>

namespace opstar {

namespace {

void require_same_shape(const Element& a, const Element& b, const char* who) {
    if (a.shape() != b.shape())
        throw std::invalid_argument(std::string(who) + ": shape mismatch " +
                                    a.shape().str() + " vs " + b.shape().str());
}

template <typename F>
Element blockwise(const Element& a, F&& f) {
    std::vector<Matrix> out;
    out.reserve(a.blocks());
    for (int b = 0; b < a.blocks(); ++b) out.push_back(f(a.block(b)));
    return Element(a.shape(), std::move(out));
}

template <typename F>
Element blockwise2(const Element& a, const Element& b, F&& f) {
    std::vector<Matrix> out;
    out.reserve(a.blocks());
    for (int i = 0; i < a.blocks(); ++i) out.push_back(f(a.block(i), b.block(i)));
    return Element(a.shape(), std::move(out));
}

}  // namespace

Element add(const Element& a, const Element& b) {
    require_same_shape(a, b, "add");
    return blockwise2(a, b, [](const Matrix& x, const Matrix& y) { return Matrix(x + y); });
}

Element sub(const Element& a, const Element& b) {
    require_same_shape(a, b, "sub");
    return blockwise2(a, b, [](const Matrix& x, const Matrix& y) { return Matrix(x - y); });
}

Element mul(const Element& a, const Element& b) {
    require_same_shape(a, b, "mul");
    return blockwise2(a, b, [](const Matrix& x, const Matrix& y) { return Matrix(x * y); });
}

Element scale(Complex c, const Element& a) {
    return blockwise(a, [c](const Matrix& x) { return Matrix(c * x); });
}

Element adjoint(const Element& a) {
    return blockwise(a, [](const Matrix& x) { return Matrix(x.adjoint()); });
}

Element neg(const Element& a) {
    return blockwise(a, [](const Matrix& x) { return Matrix(-x); });
}

Element jordan_product(const Element& a, const Element& b) {
    require_same_shape(a, b, "jordan_product");
    return blockwise2(a, b, [](const Matrix& x, const Matrix& y) {
        return Matrix(0.5 * (x * y + y * x));
    });
}

Element commutator(const Element& a, const Element& b) {
    require_same_shape(a, b, "commutator");
    return blockwise2(a, b, [](const Matrix& x, const Matrix& y) {
        return Matrix(x * y - y * x);
    });
}

Element inverse(const Element& a, const Tolerances& tol) {
    tol.validate();
    for (int b = 0; b < a.blocks(); ++b) {
        Eigen::JacobiSVD<Matrix> svd(a.block(b));
        const auto& s = svd.singularValues();
        if (s(0) <= 0.0 || s(s.size() - 1) <= tol.rank_tol * s(0))
            throw std::invalid_argument("inverse: block " + std::to_string(b) +
                                        " is singular");
    }
    return blockwise(a, [](const Matrix& x) { return Matrix(x.inverse()); });
}

Element elem_exp(const Element& a) {
    return blockwise(a, [](const Matrix& x) { return Matrix(x.exp()); });
}

Complex trace(const Element& a) {
    Complex t = 0;
    for (int b = 0; b < a.blocks(); ++b) t += a.block(b).trace();
    return t;
}

double operator_norm(const Element& a) {
    double n = 0.0;
    for (int b = 0; b < a.blocks(); ++b) {
        Eigen::JacobiSVD<Matrix> svd(a.block(b));
        n = std::max(n, svd.singularValues()(0));
    }
    return n;
}

double frobenius_norm(const Element& a) {
    double sq = 0.0;
    for (int b = 0; b < a.blocks(); ++b) sq += a.block(b).squaredNorm();
    return std::sqrt(sq);
}

double rel_residual(const Element& a, const Element& b) {
    require_same_shape(a, b, "rel_residual");
    return frobenius_norm(a - b) / (1.0 + frobenius_norm(a) + frobenius_norm(b));
}

ElementClass classify(const Element& a, const Tolerances& tol) {
    tol.validate();
    ElementClass c;
    const Element astar = adjoint(a);
    const Element one = Element::identity(a.shape());

    c.hermitian = rel_residual(a, astar) <= tol.eq_tol;
    c.skew = rel_residual(a, neg(astar)) <= tol.eq_tol;
    c.normal = rel_residual(a * astar, astar * a) <= tol.eq_tol;
    c.unitary = rel_residual(a * astar, one) <= tol.eq_tol &&
                rel_residual(astar * a, one) <= tol.eq_tol;
    c.projection = c.hermitian && rel_residual(a * a, a) <= tol.eq_tol;
    c.partial_isometry = rel_residual(a * astar * a, a) <= tol.eq_tol;

    double sig_max = 0.0, sig_min = std::numeric_limits<double>::infinity();
    for (int b = 0; b < a.blocks(); ++b) {
        Eigen::JacobiSVD<Matrix> svd(a.block(b));
        const auto& s = svd.singularValues();
        sig_max = std::max(sig_max, s(0));
        sig_min = std::min(sig_min, s(s.size() - 1));
    }
    c.invertible = sig_max > 0.0 && sig_min > tol.rank_tol * sig_max;

    if (c.hermitian) {
        double lo = 0.0;
        for (int b = 0; b < a.blocks(); ++b) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(a.block(b), Eigen::EigenvaluesOnly);
            lo = std::min(lo, es.eigenvalues().minCoeff());
        }
        c.positive = lo >= -tol.eq_tol * (1.0 + sig_max);
    }

    c.central = center_distance(a) <= tol.eq_tol;
    return c;
}

std::vector<Element> matrix_unit_basis(const AlgebraShape& shape) {
    std::vector<Element> basis;
    basis.reserve(shape.total_dim());
    for (int k = 0; k < shape.total_dim(); ++k) {
        Vector v = Vector::Zero(shape.total_dim());
        v(k) = Complex(1, 0);
        basis.push_back(Element::devectorize(shape, v));
    }
    return basis;
}

std::vector<Element> center_basis(const AlgebraShape& shape) {
    std::vector<Element> cb;
    cb.reserve(shape.blocks());
    for (int b = 0; b < shape.blocks(); ++b) {
        Element e = Element::zero(shape);
        e.block(b) = Matrix::Identity(shape.dims[b], shape.dims[b]);
        cb.push_back(std::move(e));
    }
    return cb;
}

double center_distance(const Element& a) {
    // The center is spanned by the block identities; the orthogonal (HS)
    // projection onto it keeps tr(block)/n per block.
    Element proj = Element::zero(a.shape());
    for (int b = 0; b < a.blocks(); ++b) {
        const int n = a.shape().dims[b];
        proj.block(b) = (a.block(b).trace() / double(n)) * Matrix::Identity(n, n);
    }
    return rel_residual(a, proj);
}

double Rng::uniform() {
    return (gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    has_spare_ = true;
    return mag * std::cos(ang);
}

Complex Rng::cnormal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

int Rng::uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    // rejection sampling to avoid modulo bias
    const std::uint64_t nn = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % nn);
    std::uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return static_cast<int>(x % nn);
}

namespace {

Matrix gaussian_matrix(int n, Rng& rng) {
    Matrix g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.cnormal();
    return g;
}

}  // namespace

Element random_sample(const AlgebraShape& shape, SampleKind kind, Rng& rng) {
    std::vector<Matrix> bs;
    bs.reserve(shape.dims.size());
    for (int n : shape.dims) {
        Matrix g = gaussian_matrix(n, rng);
        switch (kind) {
            case SampleKind::generic:
                bs.push_back(std::move(g));
                break;
            case SampleKind::hermitian:
                bs.push_back(Matrix(0.5 * (g + g.adjoint())));
                break;
            case SampleKind::positive:
                bs.push_back(Matrix(g.adjoint() * g));
                break;
            case SampleKind::unitary: {
                Eigen::HouseholderQR<Matrix> qr(g);
                Matrix q = qr.householderQ() * Matrix::Identity(n, n);
                bs.push_back(std::move(q));
                break;
            }
            case SampleKind::projection: {
                Matrix h = 0.5 * (g + g.adjoint());
                Eigen::SelfAdjointEigenSolver<Matrix> es(h);
                Matrix p = Matrix::Zero(n, n);
                const double median = es.eigenvalues()((n - 1) / 2);
                for (int k = 0; k < n; ++k)
                    if (es.eigenvalues()(k) > median || n == 1)
                        p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
                bs.push_back(std::move(p));
                break;
            }
        }
    }
    return Element(shape, std::move(bs));
}

Element random_sample(const AlgebraShape& shape, SampleKind kind, std::uint64_t seed) {
    Rng rng(seed);
    return random_sample(shape, kind, rng);
}

}  // namespace opstar
