#pragma once

#include "opstar/superop.hpp"
#include "opstar/triple.hpp"

#include <optional>
#include <utility>

namespace opstar {

// ---------------------------------------------------------------------------
// orthogonality

struct OrthogonalityResult {
    bool orthogonal = false;
    double residual = 0.0;  // max(||ab*||, ||b*a||) / (1 + ||a|| ||b||), operator norms
};

OrthogonalityResult orthogonal(const Element& a, const Element& b,
                               const Tolerances& tol = {});

enum class PairKind { matrix_unit, spectral_hermitian, spectral_positive };

/// Deterministic families of orthogonal pairs.
///   matrix_unit:        (E_ij, E_kl) with i != k, j != l within a block,
///                       plus cross-block unit pairs;
///   spectral_hermitian: signed spectral split of a random hermitian at a
///                       threshold between its eigenvalues;
///   spectral_positive:  positive/negative parts of a shifted hermitian
///                       (two orthogonal positive elements).
/// count <= 0 returns the full matrix_unit family; for the spectral kinds
/// count is the number of random splits.
std::vector<std::pair<Element, Element>> orthogonal_pairs(const AlgebraShape& shape,
                                                          PairKind kind, int count,
                                                          std::uint64_t seed);

/// Randomized orthogonality-preservation check: feeds orthogonal pairs
/// through T and tests orthogonality of the images.  verdict=false comes with
/// a witness; verdict=true only means no counterexample was found
/// (exhaustive=false).  `restrict_kind` limits the pair family.
PropertyReport is_op_randomized(const SuperOp& t, int count, std::uint64_t seed,
                                const Tolerances& tol = {},
                                std::optional<PairKind> restrict_kind = {});

// ---------------------------------------------------------------------------
// structure decomposition

/// Canonical factorization data of a bijective orthogonality preserver:
/// T(x) = h r* S(x) = S(x) r* h with h = T(1), r the range partial isometry
/// of h, and S = L_r . (h^{-1} T) a triple isomorphism with S(1) = r.
struct Decomposition {
    Element h;
    Element r;
    SuperOp s;
    ResidualMap residuals;
    bool verdict = false;
    std::string note;
};

/// Factor a bijective map and test the seven identities that characterize
/// orthogonality preservation:
///   (i)   h* S(x) = S(x*)* h
///   (ii)  h S(x*)* = S(x) h*
///   (iii) h r* S(x) = S(x) r* h
///   (iv)  T(x) = h r* S(x) = S(x) r* h
///   (v)   S is a triple homomorphism
///   (vi)  r is unitary
///   (vii) h r* is central
/// For bijective T the verdict is an exact decision.  A non-bijective T or a
/// singular h yields verdict=false with note "not OP-decomposable" (no throw).
Decomposition decompose(const SuperOp& t, const Tolerances& tol = {});

/// T(x) = h r* S(x).
SuperOp assemble_op(const Element& h, const Element& r, const SuperOp& s);
SuperOp assemble_op(const Decomposition& dec);

/// Seeded construction of a bijective orthogonality preserver together with
/// its canonical factors: r a random block unitary, h = r z for a central z
/// with positive block coefficients in [1/2, 2), S = L_r . S0 with S0 a
/// random unital Jordan-*-automorphism (so S(1) = r).
struct OpConstruction {
    Element h;
    Element r;
    SuperOp s;
    SuperOp t;
};

OpConstruction random_op_construction(const AlgebraShape& shape, std::uint64_t seed,
                                      const Tolerances& tol = {});

/// Residual of the transfer identity {Ta, Tb, Tc} = h^[3] r* S({a,b,c}) over
/// all basis triples plus `samples` random triples.
PropertyReport triple_transfer_check(const SuperOp& t, const Decomposition& dec,
                                     int samples, std::uint64_t seed = 0,
                                     const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// kernel and quotient

struct KernelReport {
    std::vector<int> kernel_blocks;
    int kernel_dim = 0;               // numerical nullity of the coordinate matrix
    bool kernel_is_block_ideal = false;
    AlgebraShape quotient_shape;
    SuperOp quotient_op;
    Decomposition quotient_decomposition;
    bool verdict = false;
    std::string note;
};

/// For surjective T: identify the annihilated blocks, verify the kernel is
/// exactly their span (a closed ideal), restrict T to the surviving blocks
/// and decompose the induced bijection.  Throws std::invalid_argument if T
/// is not surjective.
KernelReport kernel_quotient(const SuperOp& t, const Tolerances& tol = {});

/// Agreement of the three randomized orthogonality criteria (matrix-unit
/// pairs, hermitian splits, positive splits): verdict = all three runs reach
/// the same conclusion.  Residuals carry the per-family worst values.
PropertyReport op_agreement(const SuperOp& t, std::uint64_t seed,
                            int count_per_kind = 200, const Tolerances& tol = {});

}  // namespace opstar
