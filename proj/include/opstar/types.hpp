#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace opstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Shape of a finite-dimensional C*-algebra: a direct sum of full complex
/// matrix blocks M_{n_1} (+) ... (+) M_{n_k}.  dims holds the block sizes.
struct AlgebraShape {
    std::vector<int> dims;

    AlgebraShape() = default;
    explicit AlgebraShape(std::vector<int> d) : dims(std::move(d)) {
        if (dims.empty())
            throw std::invalid_argument("AlgebraShape: need at least one block");
        for (int n : dims)
            if (n < 1)
                throw std::invalid_argument("AlgebraShape: block sizes must be >= 1");
    }

    int blocks() const { return static_cast<int>(dims.size()); }

    /// Dimension of the algebra as a complex vector space: sum of n_i^2.
    int total_dim() const {
        int t = 0;
        for (int n : dims) t += n * n;
        return t;
    }

    /// Offset of block b in the column-stacked coordinate vector.
    int block_offset(int b) const {
        int off = 0;
        for (int i = 0; i < b; ++i) off += dims[i] * dims[i];
        return off;
    }

    bool operator==(const AlgebraShape& o) const { return dims == o.dims; }
    bool operator!=(const AlgebraShape& o) const { return dims != o.dims; }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < dims.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(dims[i]);
        }
        return s + "]";
    }
};

/// Element of a block algebra: one dense complex matrix per block.
class Element {
public:
    Element() = default;
    Element(AlgebraShape shape, std::vector<Matrix> blocks)
        : shape_(std::move(shape)), blocks_(std::move(blocks)) {
        if (static_cast<int>(blocks_.size()) != shape_.blocks())
            throw std::invalid_argument("Element: block count mismatch");
        for (int b = 0; b < shape_.blocks(); ++b)
            if (blocks_[b].rows() != shape_.dims[b] || blocks_[b].cols() != shape_.dims[b])
                throw std::invalid_argument("Element: block " + std::to_string(b) +
                                            " has wrong dimensions");
    }

    static Element zero(const AlgebraShape& shape) {
        std::vector<Matrix> bs;
        bs.reserve(shape.dims.size());
        for (int n : shape.dims) bs.push_back(Matrix::Zero(n, n));
        return Element(shape, std::move(bs));
    }

    static Element identity(const AlgebraShape& shape) {
        std::vector<Matrix> bs;
        bs.reserve(shape.dims.size());
        for (int n : shape.dims) bs.push_back(Matrix::Identity(n, n));
        return Element(shape, std::move(bs));
    }

    const AlgebraShape& shape() const { return shape_; }
    int blocks() const { return shape_.blocks(); }
    const Matrix& block(int b) const { return blocks_.at(b); }
    Matrix& block(int b) { return blocks_.at(b); }
    const std::vector<Matrix>& block_list() const { return blocks_; }

    /// Column-stacked coordinates: blocks in order, each column-major.
    Vector vectorize() const {
        Vector v(shape_.total_dim());
        int off = 0;
        for (const Matrix& m : blocks_) {
            const int sz = static_cast<int>(m.size());
            v.segment(off, sz) = Eigen::Map<const Vector>(m.data(), sz);
            off += sz;
        }
        return v;
    }

    static Element devectorize(const AlgebraShape& shape, const Vector& v) {
        if (v.size() != shape.total_dim())
            throw std::invalid_argument("devectorize: coordinate length mismatch");
        std::vector<Matrix> bs;
        bs.reserve(shape.dims.size());
        int off = 0;
        for (int n : shape.dims) {
            bs.push_back(Eigen::Map<const Matrix>(v.data() + off, n, n));
            off += n * n;
        }
        return Element(shape, std::move(bs));
    }

private:
    AlgebraShape shape_;
    std::vector<Matrix> blocks_;
};

/// Numerical policy shared across modules.  rank_tol must stay strictly
/// below eq_tol so rank decisions never flip an equality verdict.
struct Tolerances {
    double eq_tol = 1e-9;    // identity checks, relative residuals
    double rank_tol = 1e-10; // singular value cutoffs (relative to sigma_max)
    double exp_tol = 1e-12;  // matrix exponential quality checks

    void validate() const {
        if (!(rank_tol < eq_tol))
            throw std::invalid_argument("Tolerances: rank_tol must be < eq_tol");
        if (eq_tol <= 0 || rank_tol <= 0 || exp_tol <= 0)
            throw std::invalid_argument("Tolerances: all tolerances must be positive");
    }
};

/// Named residuals attached to a verdict-style report.
using ResidualMap = std::map<std::string, double>;

}  // namespace opstar
