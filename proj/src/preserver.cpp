#include "opstar/preserver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace opstar {

OrthogonalityResult orthogonal(const Element& a, const Element& b,
                               const Tolerances& tol) {
    if (a.shape() != b.shape())
        throw std::invalid_argument("orthogonal: shape mismatch");
    const Element bs = adjoint(b);
    const double num = std::max(operator_norm(a * bs), operator_norm(bs * a));
    const double res = num / (1.0 + operator_norm(a) * operator_norm(b));
    return OrthogonalityResult{res <= tol.eq_tol, res};
}

namespace {

struct EigenEntry {
    int block;
    int index;
    double value;
};

// Spectral data of a random hermitian plus a threshold strictly between two
// eigenvalues (or below all of them when the spectrum is a single point).
struct SpectralSplit {
    Element h;
    std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eig;
    double theta;
};

SpectralSplit spectral_split(const AlgebraShape& shape, Rng& rng) {
    SpectralSplit sp{random_sample(shape, SampleKind::hermitian, rng), {}, 0.0};
    std::vector<double> vals;
    for (int b = 0; b < shape.blocks(); ++b) {
        sp.eig.emplace_back(sp.h.block(b));
        for (int k = 0; k < shape.dims[b]; ++k) vals.push_back(sp.eig[b].eigenvalues()(k));
    }
    std::sort(vals.begin(), vals.end());
    const size_t n = vals.size();
    size_t cut = n / 2;
    if (cut == 0) cut = 1;
    if (cut >= n) cut = n - 1;
    if (n >= 2 && vals[cut - 1] < vals[cut]) {
        sp.theta = 0.5 * (vals[cut - 1] + vals[cut]);
    } else {
        // walk outward to any separated adjacent pair
        sp.theta = vals[0] - 1.0;
        for (size_t k = 1; k < n; ++k)
            if (vals[k - 1] < vals[k]) {
                sp.theta = 0.5 * (vals[k - 1] + vals[k]);
                break;
            }
    }
    return sp;
}

Element spectral_part(const SpectralSplit& sp, bool upper, bool positive_shift) {
    const AlgebraShape& shape = sp.h.shape();
    std::vector<Matrix> out;
    out.reserve(shape.blocks());
    for (int b = 0; b < shape.blocks(); ++b) {
        const auto& es = sp.eig[b];
        Matrix m = Matrix::Zero(shape.dims[b], shape.dims[b]);
        for (int k = 0; k < shape.dims[b]; ++k) {
            const double lam = es.eigenvalues()(k);
            const bool in_side = upper ? lam > sp.theta : lam <= sp.theta;
            if (!in_side) continue;
            const double weight = positive_shift ? std::abs(lam - sp.theta) : lam;
            m += weight * (es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint());
        }
        out.push_back(std::move(m));
    }
    return Element(shape, std::move(out));
}

}  // namespace

std::vector<std::pair<Element, Element>> orthogonal_pairs(const AlgebraShape& shape,
                                                          PairKind kind, int count,
                                                          std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<Element, Element>> pairs;

    if (kind == PairKind::matrix_unit) {
        const auto basis = matrix_unit_basis(shape);
        const int nb = shape.blocks();
        // same-block pairs (E_ij, E_kl), i != k, j != l
        for (int b = 0; b < nb; ++b) {
            const int n = shape.dims[b];
            const int off = shape.block_offset(b);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    for (int l = 0; l < n; ++l)
                        for (int k = 0; k < n; ++k)
                            if (i != k && j != l)
                                pairs.emplace_back(basis[off + j * n + i],
                                                   basis[off + l * n + k]);
        }
        // cross-block pairs
        for (int b = 0; b < nb; ++b)
            for (int c = b + 1; c < nb; ++c) {
                const int offb = shape.block_offset(b), offc = shape.block_offset(c);
                for (int x = 0; x < shape.dims[b] * shape.dims[b]; ++x)
                    for (int y = 0; y < shape.dims[c] * shape.dims[c]; ++y)
                        pairs.emplace_back(basis[offb + x], basis[offc + y]);
            }
        // deterministic shuffle, then truncate
        for (int j = static_cast<int>(pairs.size()) - 1; j > 0; --j)
            std::swap(pairs[j], pairs[rng.uniform_int(j + 1)]);
        if (count > 0 && static_cast<int>(pairs.size()) > count) pairs.resize(count);
        return pairs;
    }

    const int n_splits = count > 0 ? count : 16;
    for (int c = 0; c < n_splits; ++c) {
        const SpectralSplit sp = spectral_split(shape, rng);
        const bool shifted = kind == PairKind::spectral_positive;
        pairs.emplace_back(spectral_part(sp, true, shifted),
                           spectral_part(sp, false, shifted));
    }
    return pairs;
}

PropertyReport is_op_randomized(const SuperOp& t, int count, std::uint64_t seed,
                                const Tolerances& tol,
                                std::optional<PairKind> restrict_kind) {
    tol.validate();
    PropertyReport rep;
    rep.property = "orthogonality_preserving";
    rep.exhaustive = false;

    std::vector<std::pair<Element, Element>> pairs;
    const auto feed = [&pairs](std::vector<std::pair<Element, Element>>&& p) {
        for (auto& q : p) pairs.push_back(std::move(q));
    };
    if (restrict_kind) {
        feed(orthogonal_pairs(t.dom(), *restrict_kind, count, seed));
    } else {
        const int share = std::max(1, count / 3);
        feed(orthogonal_pairs(t.dom(), PairKind::matrix_unit, share, seed));
        feed(orthogonal_pairs(t.dom(), PairKind::spectral_hermitian, share, seed + 1));
        feed(orthogonal_pairs(t.dom(), PairKind::spectral_positive,
                              count - 2 * share, seed + 2));
    }

    int tested = 0;
    double worst = 0.0;
    for (size_t k = 0; k < pairs.size(); ++k) {
        const auto& [a, b] = pairs[k];
        if (frobenius_norm(a) == 0.0 || frobenius_norm(b) == 0.0) continue;
        ++tested;
        const OrthogonalityResult ort = orthogonal(t.apply(a), t.apply(b), tol);
        worst = std::max(worst, ort.residual);
        if (!ort.orthogonal) {
            rep.verdict = false;
            rep.worst_residual = ort.residual;
            rep.witness = "pair #" + std::to_string(k) + " of " +
                          std::to_string(pairs.size()) + " (images not orthogonal)";
            rep.residuals["pairs_tested"] = tested;
            return rep;
        }
    }
    rep.verdict = true;
    rep.worst_residual = worst;
    rep.witness = "no counterexample in " + std::to_string(tested) + " pairs";
    rep.residuals["pairs_tested"] = tested;
    return rep;
}

namespace {

// sigma_min / sigma_max, 0 for the zero matrix
double inv_margin(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (!s.size() || s(0) <= 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

double elem_inv_margin(const Element& a) {
    double m = std::numeric_limits<double>::infinity();
    double smax = 0.0;
    for (int b = 0; b < a.blocks(); ++b) {
        Eigen::JacobiSVD<Matrix> svd(a.block(b));
        const auto& s = svd.singularValues();
        smax = std::max(smax, s(0));
        m = std::min(m, s(s.size() - 1));
    }
    return smax > 0.0 ? m / smax : 0.0;
}

}  // namespace

Decomposition decompose(const SuperOp& t, const Tolerances& tol) {
    tol.validate();
    Decomposition dec;
    dec.h = t.apply(Element::identity(t.dom()));
    dec.r = polar(dec.h, tol).u;
    dec.s = SuperOp::zero(t.dom(), t.cod());

    const double t_margin = inv_margin(t.mat());
    const double h_margin = elem_inv_margin(dec.h);
    dec.residuals["T_invertible_margin"] = t_margin;
    dec.residuals["h_invertible_margin"] = h_margin;

    const bool square = t.dom().total_dim() == t.cod().total_dim();
    if (!square || t_margin <= tol.rank_tol) {
        dec.verdict = false;
        dec.note = "not OP-decomposable: map is not bijective";
        return dec;
    }
    if (h_margin <= tol.rank_tol) {
        dec.verdict = false;
        dec.note = "not OP-decomposable: h not invertible";
        return dec;
    }

    const Element hinv = inverse(dec.h, tol);
    dec.s = compose(left_mult(dec.r * hinv), t);

    const auto basis = matrix_unit_basis(t.dom());
    const Element one = Element::identity(t.cod());
    const Element hs = adjoint(dec.h);
    const Element rs = adjoint(dec.r);
    const Element hrs = dec.h * rs;

    double sym_i = 0, sym_ii = 0, intertwine = 0, factor = 0;
    for (const Element& x : basis) {
        const Element sx = dec.s.apply(x);
        const Element sxs = adjoint(dec.s.apply(adjoint(x)));
        const Element tx = t.apply(x);
        sym_i = std::max(sym_i, rel_residual(hs * sx, sxs * dec.h));
        sym_ii = std::max(sym_ii, rel_residual(dec.h * sxs, sx * hs));
        intertwine = std::max(intertwine, rel_residual(hrs * sx, sx * rs * dec.h));
        factor = std::max(factor, rel_residual(tx, hrs * sx));
        factor = std::max(factor, rel_residual(tx, sx * rs * dec.h));
    }
    const double central = center_distance(hrs);
    const PropertyReport hom = property_check(dec.s, OpProperty::triple_hom, tol);
    const double unitary =
        std::max(rel_residual(dec.r * rs, one), rel_residual(rs * dec.r, one));
    const double unital = rel_residual(dec.s.apply(one), dec.r);

    dec.residuals["sym_i"] = sym_i;
    dec.residuals["sym_ii"] = sym_ii;
    dec.residuals["intertwine_iii"] = intertwine;
    dec.residuals["factor_iv"] = factor;
    dec.residuals["triple_hom_v"] = hom.worst_residual;
    dec.residuals["unitary_vi"] = unitary;
    dec.residuals["central_vii"] = central;
    dec.residuals["unital_S"] = unital;

    double worst = 0.0;
    for (const char* key : {"sym_i", "sym_ii", "intertwine_iii", "factor_iv",
                            "triple_hom_v", "unitary_vi", "central_vii", "unital_S"})
        worst = std::max(worst, dec.residuals[key]);

    dec.verdict = worst <= tol.eq_tol;
    dec.note = dec.verdict ? "orthogonality preserving"
                           : "identity residuals exceed tolerance";
    return dec;
}

SuperOp assemble_op(const Element& h, const Element& r, const SuperOp& s) {
    if (h.shape() != s.cod() || r.shape() != s.cod())
        throw std::invalid_argument("assemble_op: factor shape mismatch");
    return compose(left_mult(h * adjoint(r)), s);
}

SuperOp assemble_op(const Decomposition& dec) {
    return assemble_op(dec.h, dec.r, dec.s);
}

OpConstruction random_op_construction(const AlgebraShape& shape, std::uint64_t seed,
                                      const Tolerances& tol) {
    Rng rng(seed);
    OpConstruction oc;
    oc.r = random_sample(shape, SampleKind::unitary, rng);

    Element z = Element::zero(shape);
    for (int b = 0; b < shape.blocks(); ++b) {
        const double c = 0.5 + 1.5 * rng.uniform();
        z.block(b) = c * Matrix::Identity(shape.dims[b], shape.dims[b]);
    }
    oc.h = oc.r * z;
    oc.s = compose(left_mult(oc.r), random_jordan_star_auto(shape, rng, tol));
    oc.t = assemble_op(oc.h, oc.r, oc.s);
    return oc;
}

PropertyReport triple_transfer_check(const SuperOp& t, const Decomposition& dec,
                                     int samples, std::uint64_t seed,
                                     const Tolerances& tol) {
    tol.validate();
    PropertyReport rep;
    rep.property = "triple_transfer";
    rep.exhaustive = true;

    const Element h3 = odd_triple_power(dec.h, 3);
    const Element push = h3 * adjoint(dec.r);
    const auto lhs_rhs = [&](const Element& a, const Element& b, const Element& c) {
        const Element lhs = triple_product(t.apply(a), t.apply(b), t.apply(c));
        const Element rhs = push * dec.s.apply(triple_product(a, b, c));
        return rel_residual(lhs, rhs);
    };

    const auto basis = matrix_unit_basis(t.dom());
    const int n = static_cast<int>(basis.size());
    double worst = 0.0;
    std::string witness;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = i; k < n; ++k) {
                const double r = lhs_rhs(basis[i], basis[j], basis[k]);
                if (r > worst) {
                    worst = r;
                    witness = "(e" + std::to_string(i) + ",e" + std::to_string(j) +
                              ",e" + std::to_string(k) + ")";
                }
            }

    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const Element a = random_sample(t.dom(), SampleKind::generic, rng);
        const Element b = random_sample(t.dom(), SampleKind::generic, rng);
        const Element c = random_sample(t.dom(), SampleKind::generic, rng);
        const double r = lhs_rhs(a, b, c);
        if (r > worst) {
            worst = r;
            witness = "random sample #" + std::to_string(s);
        }
    }

    rep.worst_residual = worst;
    rep.witness = witness;
    rep.verdict = worst <= tol.eq_tol;
    rep.residuals["basis_triples"] = double(n) * n * (n + 1) / 2;
    rep.residuals["random_triples"] = samples;
    return rep;
}

KernelReport kernel_quotient(const SuperOp& t, const Tolerances& tol) {
    tol.validate();
    KernelReport kr;
    kr.quotient_op = t;
    kr.quotient_shape = t.dom();

    Eigen::JacobiSVD<Matrix> svd(t.mat());
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    int rank = 0;
    while (rank < s.size() && s(rank) > tol.rank_tol * smax) ++rank;
    if (rank < t.cod().total_dim())
        throw std::invalid_argument("kernel_quotient: map is not surjective");

    kr.kernel_dim = t.dom().total_dim() - rank;

    const double scale = 1.0 + op_norm(t);
    int killed_dim = 0;
    for (int b = 0; b < t.dom().blocks(); ++b) {
        const int off = t.dom().block_offset(b);
        const int sz = t.dom().dims[b] * t.dom().dims[b];
        const double colnorm = t.mat().middleCols(off, sz).norm();
        if (colnorm <= tol.eq_tol * scale) {
            kr.kernel_blocks.push_back(b);
            killed_dim += sz;
        }
    }
    kr.kernel_is_block_ideal = killed_dim == kr.kernel_dim;

    if (!kr.kernel_is_block_ideal) {
        kr.verdict = false;
        kr.note = "kernel is not a union of blocks (not an ideal): "
                  "map is not orthogonality preserving";
        return kr;
    }

    std::vector<int> keep_dims;
    std::vector<int> keep_cols;
    for (int b = 0; b < t.dom().blocks(); ++b) {
        if (std::find(kr.kernel_blocks.begin(), kr.kernel_blocks.end(), b) !=
            kr.kernel_blocks.end())
            continue;
        keep_dims.push_back(t.dom().dims[b]);
        const int off = t.dom().block_offset(b);
        for (int k = 0; k < t.dom().dims[b] * t.dom().dims[b]; ++k)
            keep_cols.push_back(off + k);
    }
    if (keep_dims.empty())
        throw std::invalid_argument("kernel_quotient: map annihilates every block");

    kr.quotient_shape = AlgebraShape(keep_dims);
    Matrix qm(t.cod().total_dim(), static_cast<int>(keep_cols.size()));
    for (size_t k = 0; k < keep_cols.size(); ++k) qm.col(k) = t.mat().col(keep_cols[k]);
    kr.quotient_op = SuperOp(kr.quotient_shape, t.cod(), std::move(qm));

    kr.quotient_decomposition = decompose(kr.quotient_op, tol);
    kr.verdict = kr.quotient_decomposition.verdict;
    kr.note = kr.kernel_blocks.empty() ? "kernel is trivial"
                                       : "kernel is the span of the listed blocks";
    return kr;
}

PropertyReport op_agreement(const SuperOp& t, std::uint64_t seed, int count_per_kind,
                            const Tolerances& tol) {
    PropertyReport rep;
    rep.property = "op_criteria_agreement";
    rep.exhaustive = false;

    const PropertyReport mu =
        is_op_randomized(t, count_per_kind, seed, tol, PairKind::matrix_unit);
    const PropertyReport he =
        is_op_randomized(t, count_per_kind, seed + 101, tol, PairKind::spectral_hermitian);
    const PropertyReport po =
        is_op_randomized(t, count_per_kind, seed + 202, tol, PairKind::spectral_positive);

    rep.residuals["matrix_unit"] = mu.worst_residual;
    rep.residuals["hermitian_split"] = he.worst_residual;
    rep.residuals["positive_split"] = po.worst_residual;
    rep.residuals["matrix_unit_verdict"] = mu.verdict ? 1.0 : 0.0;
    rep.residuals["hermitian_split_verdict"] = he.verdict ? 1.0 : 0.0;
    rep.residuals["positive_split_verdict"] = po.verdict ? 1.0 : 0.0;

    rep.verdict = mu.verdict == he.verdict && he.verdict == po.verdict;
    rep.worst_residual = std::max({mu.worst_residual, he.worst_residual,
                                   po.worst_residual});
    std::ostringstream os;
    os << "matrix_unit:" << (mu.verdict ? "pass" : "fail")
       << " hermitian:" << (he.verdict ? "pass" : "fail")
       << " positive:" << (po.verdict ? "pass" : "fail");
    rep.witness = os.str();
    return rep;
}

}  // namespace opstar
