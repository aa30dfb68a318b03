#pragma once

#include "opstar/algebra.hpp"

#include <functional>

namespace opstar {

/// Linear map between block algebras, stored as a dense matrix over the
/// column-stacked coordinates (see Element::vectorize).
class SuperOp {
public:
    SuperOp() = default;
    SuperOp(AlgebraShape dom, AlgebraShape cod, Matrix mat)
        : dom_(std::move(dom)), cod_(std::move(cod)), mat_(std::move(mat)) {
        if (mat_.rows() != cod_.total_dim() || mat_.cols() != dom_.total_dim())
            throw std::invalid_argument("SuperOp: matrix is " +
                                        std::to_string(mat_.rows()) + "x" +
                                        std::to_string(mat_.cols()) +
                                        ", expected " + std::to_string(cod_.total_dim()) +
                                        "x" + std::to_string(dom_.total_dim()));
    }

    static SuperOp identity(const AlgebraShape& shape) {
        return SuperOp(shape, shape,
                       Matrix::Identity(shape.total_dim(), shape.total_dim()));
    }

    static SuperOp zero(const AlgebraShape& dom, const AlgebraShape& cod) {
        return SuperOp(dom, cod, Matrix::Zero(cod.total_dim(), dom.total_dim()));
    }

    /// Build from any linear action by probing the matrix-unit basis.
    static SuperOp from_function(const AlgebraShape& dom, const AlgebraShape& cod,
                                 const std::function<Element(const Element&)>& f);

    const AlgebraShape& dom() const { return dom_; }
    const AlgebraShape& cod() const { return cod_; }
    const Matrix& mat() const { return mat_; }

    Element apply(const Element& x) const {
        if (x.shape() != dom_)
            throw std::invalid_argument("SuperOp::apply: element shape " +
                                        x.shape().str() + " does not match domain " +
                                        dom_.str());
        return Element::devectorize(cod_, mat_ * x.vectorize());
    }

    Element operator()(const Element& x) const { return apply(x); }

private:
    AlgebraShape dom_, cod_;
    Matrix mat_;
};

/// compose(A, B) = A after B.
SuperOp compose(const SuperOp& a, const SuperOp& b);

SuperOp add(const SuperOp& a, const SuperOp& b);
SuperOp sub(const SuperOp& a, const SuperOp& b);
SuperOp scale(Complex c, const SuperOp& a);

inline SuperOp operator*(const SuperOp& a, const SuperOp& b) { return compose(a, b); }
inline SuperOp operator+(const SuperOp& a, const SuperOp& b) { return add(a, b); }
inline SuperOp operator-(const SuperOp& a, const SuperOp& b) { return sub(a, b); }
inline SuperOp operator*(Complex c, const SuperOp& a) { return scale(c, a); }
inline SuperOp operator*(double c, const SuperOp& a) { return scale(Complex(c, 0), a); }

/// Operator norm of the coordinate matrix (Frobenius-to-Frobenius).
double op_norm(const SuperOp& t);

/// Relative distance between two superoperators (Frobenius, scale-aware).
double rel_residual(const SuperOp& a, const SuperOp& b);

// ---------------------------------------------------------------------------
// builders

SuperOp left_mult(const Element& a);                       // x -> a x
SuperOp right_mult(const Element& a);                      // x -> x a
SuperOp jordan_mult(const Element& a);                     // x -> (ax + xa)/2
SuperOp box_operator(const Element& a, const Element& b);  // x -> {a, b, x}
SuperOp inner_derivation(const Element& z);                // x -> z x - x z

/// Block triple automorphism: target block j receives
///   u_j * op(x_{source[j]}) * v_j^*,  op = transpose when transposed[j].
/// source must be a permutation pairing blocks of equal size; u_j, v_j must
/// be unitary of the target block size.
struct BlockAutoSpec {
    std::vector<Matrix> u;            // one unitary per target block
    std::vector<Matrix> v;            // one unitary per target block
    std::vector<int> source;          // source block index per target block
    std::vector<bool> transposed;     // transpose the source block first
};

SuperOp block_triple_auto(const AlgebraShape& shape, const BlockAutoSpec& spec,
                          const Tolerances& tol = {});

/// Random unital Jordan-*-automorphism: u = v per block, random transposes,
/// random size-preserving block permutation.
SuperOp random_jordan_star_auto(const AlgebraShape& shape, Rng& rng,
                                const Tolerances& tol = {});
SuperOp random_jordan_star_auto(const AlgebraShape& shape, std::uint64_t seed,
                                const Tolerances& tol = {});

/// Matrix exponential exp(t R), dom = cod required.
SuperOp exp(const SuperOp& r, double t, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// property checks

enum class OpProperty {
    symmetric_map,       // T(x*) = T(x)*
    jordan_star_hom,     // symmetric + T(x o y) = T(x) o T(y)
    triple_hom,          // T{x,y,z} = {Tx,Ty,Tz}
    derivation,          // D(xy) = D(x) y + x D(y)
    star_derivation,     // derivation + symmetric
    triple_derivation,   // D{x,y,z} = {Dx,y,z} + {x,Dy,z} + {x,y,Dz}
    surjective_isometry  // bijective triple homomorphism
};

std::string property_name(OpProperty p);

struct PropertyReport {
    std::string property;
    bool verdict = false;
    double worst_residual = 0.0;
    bool exhaustive = true;    // decided over a spanning set of probes
    std::string witness;       // coordinates of the worst probe
    ResidualMap residuals;
};

/// Decide the property over the matrix-unit basis (and basis pairs/triples
/// for the (bi/tri)linear identities).  Both sides of every identity are
/// multilinear or conjugate-multilinear in each slot, so agreement on basis
/// tuples decides agreement everywhere; reports are exhaustive.
PropertyReport property_check(const SuperOp& t, OpProperty prop,
                              const Tolerances& tol = {});

}  // namespace opstar
