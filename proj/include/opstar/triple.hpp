#pragma once

#include "opstar/algebra.hpp"

#include <functional>

namespace opstar {

/// Triple product {a, b, c} = (a b* c + c b* a) / 2.  Linear in the outer
/// slots, conjugate-linear in the middle one.
Element triple_product(const Element& a, const Element& b, const Element& c);

/// Odd triple power a^[m] for odd m >= 1, via a^[k+2] = {a, a, a^[k]}.
Element odd_triple_power(const Element& a, int m);

/// Polar data a = u |a| with u the range partial isometry (zero on the
/// kernel of |a|) and abs = |a| = (a* a)^(1/2).  Singular values below
/// rank_tol * sigma_max (global across blocks) are treated as zero.
struct PolarData {
    Element u;
    Element abs;
    std::vector<int> ranks;  // numerical rank per block
};

PolarData polar(const Element& a, const Tolerances& tol = {});

/// Odd functional calculus f_t(a) = u f(|a|) for continuous f with f(0) = 0
/// (f is applied to the spectrum of |a|; the constraint keeps the result
/// independent of the kernel).  Throws if |f(0)| > 1e-14.
Element triple_functional_calculus(const Element& a,
                                   const std::function<double(double)>& f,
                                   const Tolerances& tol = {});

/// Cube root in the triple sense: u |a|^(1/3).
Element cubic_root(const Element& a, const Tolerances& tol = {});

/// Iterated cube roots a, a^[1/3], a^[1/9], ..., n_steps of them; the limit
/// is the range partial isometry of a.  Returns the final iterate together
/// with ||iterate - polar(a).u||_F.
struct CubicRootLimit {
    Element iterate;
    double residual;
    int steps;
};

CubicRootLimit cubic_root_limit(const Element& a, int n_steps, const Tolerances& tol = {});

/// Peirce projection of x relative to a partial isometry e, j in {0, 1, 2}:
///   P2(e) x = (ee*) x (e*e)
///   P1(e) x = (1-ee*) x (e*e) + (ee*) x (1-e*e)
///   P0(e) x = (1-ee*) x (1-e*e)
/// Throws std::invalid_argument if e is not a partial isometry.
Element peirce_projection(const Element& e, int j, const Element& x,
                          const Tolerances& tol = {});

/// r-homotope structure on the same underlying space: product x r* y and
/// involution r x* r.  r must be unitary for the involution to be isometric.
struct HomotopeTag {
    Element r;

    HomotopeTag(Element r_, const Tolerances& tol = {});
};

Element homotope_product(const Element& x, const Element& y, const HomotopeTag& tag);
Element homotope_involution(const Element& x, const HomotopeTag& tag);

/// Center of the r-homotope: r * Z(A), returned as a basis (one element
/// r * 1_b per block).
std::vector<Element> homotope_center(const HomotopeTag& tag);

}  // namespace opstar
