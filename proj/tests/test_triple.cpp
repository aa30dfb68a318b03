#include "opstar/triple.hpp"

#include <doctest.h>

using namespace opstar;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Element el2(Complex a, Complex b, Complex c, Complex d) {
    return Element(AlgebraShape({2}), {m2(a, b, c, d)});
}

}  // namespace

TEST_CASE("triple product formula and symmetry") {
    Rng rng(21);
    AlgebraShape s({2, 3});
    for (int k = 0; k < 5; ++k) {
        Element a = random_sample(s, SampleKind::generic, rng);
        Element b = random_sample(s, SampleKind::generic, rng);
        Element c = random_sample(s, SampleKind::generic, rng);
        Element direct = 0.5 * (a * adjoint(b) * c + c * adjoint(b) * a);
        CHECK(frobenius_norm(triple_product(a, b, c) - direct) == 0.0);
        // outer symmetry holds bitwise: the two summands just swap
        CHECK(frobenius_norm(triple_product(a, b, c) - triple_product(c, b, a)) == 0.0);
    }
    Element e = el2(1, 0, 0, 0);
    CHECK(frobenius_norm(triple_product(e, e, e) - e) == 0.0);
}

TEST_CASE("odd triple powers of a hermitian element") {
    Element a = el2(2, 0, 0, -1);
    CHECK(frobenius_norm(odd_triple_power(a, 3) - el2(8, 0, 0, -1)) == 0.0);
    CHECK(frobenius_norm(odd_triple_power(a, 5) - el2(32, 0, 0, -1)) == 0.0);
    CHECK(frobenius_norm(odd_triple_power(a, 1) - a) == 0.0);
    CHECK_THROWS_AS(odd_triple_power(a, 2), std::invalid_argument);
    CHECK_THROWS_AS(odd_triple_power(a, -1), std::invalid_argument);
}

TEST_CASE("polar decomposition") {
    Element a = el2(0, 2, 0, 0);
    PolarData p = polar(a);
    CHECK(frobenius_norm(p.u - el2(0, 1, 0, 0)) < 1e-14);
    CHECK(frobenius_norm(p.abs - el2(0, 0, 0, 2)) < 1e-14);
    REQUIRE(p.ranks.size() == 1);
    CHECK(p.ranks[0] == 1);
    CHECK(classify(p.u).partial_isometry);
    CHECK(rel_residual(p.u * p.abs, a) < 1e-14);

    Rng rng(5);
    for (int k = 0; k < 5; ++k) {
        Element x = random_sample(AlgebraShape({3, 2}), SampleKind::generic, rng);
        PolarData q = polar(x);
        CHECK(rel_residual(q.u * q.abs, x) < 1e-13);
        CHECK(classify(q.u).partial_isometry);
        CHECK(classify(q.abs).positive);
    }
}

TEST_CASE("functional calculus needs f(0) = 0") {
    Element a = el2(0, 2, 0, 0);
    Element cube = triple_functional_calculus(a, [](double x) { return x * x * x; });
    CHECK(rel_residual(cube, odd_triple_power(a, 3)) < 1e-13);
    Element same = triple_functional_calculus(a, [](double x) { return x; });
    CHECK(rel_residual(same, a) < 1e-13);
    CHECK_THROWS_AS(
        triple_functional_calculus(a, [](double x) { return x + 1.0; }),
        std::invalid_argument);
}

TEST_CASE("cubic roots walk toward the range isometry") {
    Element a = el2(8, 0, 0, 27);
    CHECK(rel_residual(cubic_root(a), el2(2, 0, 0, 3)) < 1e-13);

    Element b = el2(8, 0, 0, -27);
    CubicRootLimit lim = cubic_root_limit(b, 20);
    CHECK(lim.steps == 20);
    CHECK(lim.residual < 1e-7);
    CHECK(frobenius_norm(lim.iterate - el2(1, 0, 0, -1)) < 1e-7);

    // each iterate keeps the same range isometry, so the residual is monotone
    CubicRootLimit early = cubic_root_limit(b, 5);
    CHECK(early.residual >= lim.residual);
}

TEST_CASE("peirce projections split along a partial isometry") {
    AlgebraShape s({2});
    Element e(s, {m2(1, 0, 0, 0)});
    Element x(s, {m2(1, 2, 3, 4)});
    CHECK(frobenius_norm(peirce_projection(e, 2, x) - el2(1, 0, 0, 0)) < 1e-14);
    CHECK(frobenius_norm(peirce_projection(e, 1, x) - el2(0, 2, 3, 0)) < 1e-14);
    CHECK(frobenius_norm(peirce_projection(e, 0, x) - el2(0, 0, 0, 4)) < 1e-14);

    Element sum = peirce_projection(e, 2, x) + peirce_projection(e, 1, x) +
                  peirce_projection(e, 0, x);
    CHECK(rel_residual(sum, x) < 1e-14);

    CHECK_THROWS_AS(peirce_projection(e, 3, x), std::invalid_argument);
    CHECK_THROWS_AS(peirce_projection(x, 1, x), std::invalid_argument);  // not a p.i.

    Rng rng(17);
    for (int k = 0; k < 4; ++k) {
        Element u = random_sample(s, SampleKind::unitary, rng);
        Element y = random_sample(s, SampleKind::generic, rng);
        for (int j = 0; j <= 2; ++j) {
            Element pj = peirce_projection(u, j, y);
            CHECK(rel_residual(peirce_projection(u, j, pj), pj) < 1e-12);
        }
    }
}

TEST_CASE("homotope structure at a unitary") {
    AlgebraShape s({2, 1});
    Rng rng(9);
    Element r = random_sample(s, SampleKind::unitary, rng);
    Element x = random_sample(s, SampleKind::generic, rng);
    Element y = random_sample(s, SampleKind::generic, rng);
    HomotopeTag tag(r);

    CHECK(rel_residual(homotope_product(x, y, tag), x * adjoint(r) * y) == 0.0);
    CHECK(rel_residual(homotope_involution(x, tag), r * adjoint(x) * r) == 0.0);
    // r itself is the homotope unit
    CHECK(rel_residual(homotope_product(r, y, tag), y) < 1e-14);
    CHECK(rel_residual(homotope_product(x, r, tag), x) < 1e-14);

    std::vector<Element> hc = homotope_center(tag);
    REQUIRE(hc.size() == 2);
    for (const Element& c : hc) {
        // central for the homotope product: c r* y = y r* c for all y
        CHECK(rel_residual(homotope_product(c, y, tag), homotope_product(y, c, tag)) <
              1e-13);
    }

    Element notu = Element::zero(s);
    CHECK_THROWS_AS(HomotopeTag{notu}, std::invalid_argument);
}
