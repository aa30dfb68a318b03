#pragma once

#include "opstar/types.hpp"

#include <cstdint>
#include <random>

namespace opstar {

// ---------------------------------------------------------------------------
// elementwise arithmetic

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element mul(const Element& a, const Element& b);
Element scale(Complex c, const Element& a);
Element adjoint(const Element& a);
Element neg(const Element& a);

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator-(const Element& a, const Element& b) { return sub(a, b); }
inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }
inline Element operator*(Complex c, const Element& a) { return scale(c, a); }
inline Element operator*(double c, const Element& a) { return scale(Complex(c, 0), a); }
inline Element operator-(const Element& a) { return neg(a); }

/// Jordan product a o b = (ab + ba)/2.
Element jordan_product(const Element& a, const Element& b);

/// Commutator [a, b] = ab - ba.
Element commutator(const Element& a, const Element& b);

/// Blockwise inverse.  Throws std::invalid_argument if any block is singular
/// at the rank_tol cutoff.
Element inverse(const Element& a, const Tolerances& tol = {});

/// Blockwise matrix exponential.
Element elem_exp(const Element& a);

/// Trace across all blocks.
Complex trace(const Element& a);

// ---------------------------------------------------------------------------
// norms and residuals

/// C*-norm: max over blocks of the largest singular value.
double operator_norm(const Element& a);

/// Hilbert-Schmidt norm across all blocks.
double frobenius_norm(const Element& a);

/// Scale-aware comparison residual ||a-b||_F / (1 + ||a||_F + ||b||_F).
double rel_residual(const Element& a, const Element& b);

inline bool approx_equal(const Element& a, const Element& b, const Tolerances& tol = {}) {
    return rel_residual(a, b) <= tol.eq_tol;
}

// ---------------------------------------------------------------------------
// structure

/// Predicate bundle for a single element.  Each flag is decided by a relative
/// residual against eq_tol (rank decisions use rank_tol).
struct ElementClass {
    bool hermitian = false;        // a = a*
    bool skew = false;             // a = -a*
    bool positive = false;         // a = a*, spectrum >= -eq_tol * scale
    bool normal = false;           // a a* = a* a
    bool unitary = false;          // a a* = a* a = 1
    bool projection = false;       // a = a* = a^2
    bool partial_isometry = false; // a a* a = a
    bool invertible = false;       // sigma_min > rank_tol * sigma_max
    bool central = false;          // commutes with every matrix unit
};

ElementClass classify(const Element& a, const Tolerances& tol = {});

/// Ordered matrix-unit basis of the algebra.  basis[k] = devectorize(e_k),
/// i.e. the k-th coordinate of vectorize() corresponds exactly to basis[k].
std::vector<Element> matrix_unit_basis(const AlgebraShape& shape);

/// Basis of the center: one block identity per block.
std::vector<Element> center_basis(const AlgebraShape& shape);

/// Membership test: distance from a to span(center_basis), relative.
double center_distance(const Element& a);

// ---------------------------------------------------------------------------
// sampling

enum class SampleKind { generic, hermitian, positive, unitary, projection };

/// Deterministic PRNG for reproducible sampling.  Gaussian variates come from
/// Box-Muller over mt19937_64 so streams are identical across platforms
/// (std::normal_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform();                 // [0, 1)
    double normal();                  // standard normal
    Complex cnormal();                // complex normal, E|z|^2 = 1
    int uniform_int(int n);           // {0, ..., n-1}
    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Random element of the requested class.  generic: iid complex Gaussian
/// entries; hermitian: (G+G*)/2; positive: G*G (entrywise-Gaussian G);
/// unitary: QR orthonormalization of G; projection: spectral projection of a
/// random hermitian onto its top half spectrum.
Element random_sample(const AlgebraShape& shape, SampleKind kind, Rng& rng);
Element random_sample(const AlgebraShape& shape, SampleKind kind, std::uint64_t seed);

}  // namespace opstar
