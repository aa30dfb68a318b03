#include "opstar/preserver.hpp"

#include <doctest.h>

#include <cmath>

using namespace opstar;

namespace {

const AlgebraShape kS2({2});
const AlgebraShape kS21({2, 1});

Element unit2(int i, int j) {
    Element e = Element::zero(kS2);
    Matrix blk = e.block(0);
    blk(i, j) = 1.0;
    return Element(kS2, {blk});
}

}  // namespace

TEST_CASE("orthogonality of elements") {
    OrthogonalityResult good = orthogonal(unit2(0, 0), unit2(1, 1));
    CHECK(good.orthogonal);
    CHECK(good.residual == 0.0);

    // E11 E21 = 0 but E21 E11 != 0: one-sided is not enough
    OrthogonalityResult bad = orthogonal(unit2(0, 0), unit2(0, 1));
    CHECK_FALSE(bad.orthogonal);
    CHECK(bad.residual == doctest::Approx(0.5));

    CHECK(orthogonal(Element::zero(kS2), unit2(0, 0)).orthogonal);
}

TEST_CASE("orthogonal pair generators produce orthogonal pairs") {
    for (PairKind kind : {PairKind::matrix_unit, PairKind::spectral_hermitian,
                          PairKind::spectral_positive}) {
        auto pairs = orthogonal_pairs(kS21, kind, 40, 1234);
        CHECK(!pairs.empty());
        for (const auto& [a, b] : pairs) {
            OrthogonalityResult r = orthogonal(a, b);
            CHECK(r.residual < 1e-12);
        }
        auto again = orthogonal_pairs(kS21, kind, 40, 1234);
        REQUIRE(again.size() == pairs.size());
        CHECK(frobenius_norm(again[0].first - pairs[0].first) == 0.0);
    }
}

TEST_CASE("randomized preservation probing") {
    SuperOp id = SuperOp::identity(kS21);
    PropertyReport ok = is_op_randomized(id, 200, 9);
    CHECK(ok.verdict);
    CHECK_FALSE(ok.exhaustive);
    CHECK(ok.residuals.at("pairs_tested") > 0);

    // invertible but mixing coordinates across a product: caught quickly
    Matrix m = Matrix::Identity(5, 5);
    m(0, 4) = 0.3;
    PropertyReport caught = is_op_randomized(SuperOp(kS21, kS21, m), 200, 9);
    CHECK_FALSE(caught.verdict);
    CHECK(!caught.witness.empty());
}

TEST_CASE("decompose the identity") {
    Decomposition d = decompose(SuperOp::identity(kS21));
    CHECK(d.verdict);
    CHECK(rel_residual(d.h, Element::identity(kS21)) == 0.0);
    CHECK(rel_residual(d.r, Element::identity(kS21)) < 1e-14);
    CHECK(rel_residual(d.s, SuperOp::identity(kS21)) < 1e-14);
    for (const auto& [name, value] : d.residuals)
        if (name.find("margin") == std::string::npos) CHECK(value < 1e-12);
}

TEST_CASE("decompose a phased unitary conjugation") {
    // T(x) = e^{i pi/4} u x u*; the canonical triple factor keeps the phase
    const Complex phase = std::polar(1.0, std::acos(-1.0) / 4.0);
    const double th = 0.3;
    Matrix u(2, 2);
    u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Element ue(kS2, {u});
    SuperOp t = SuperOp::from_function(kS2, kS2, [&](const Element& x) {
        return phase * (ue * x * adjoint(ue));
    });

    Decomposition d = decompose(t);
    REQUIRE(d.verdict);
    CHECK(rel_residual(d.h, phase * Element::identity(kS2)) < 1e-13);
    CHECK(rel_residual(d.r, phase * Element::identity(kS2)) < 1e-13);
    SuperOp s_expected = SuperOp::from_function(kS2, kS2, [&](const Element& x) {
        return phase * (ue * x * adjoint(ue));
    });
    CHECK(rel_residual(d.s, s_expected) < 1e-13);
    CHECK(rel_residual(d.s.apply(Element::identity(kS2)), d.r) < 1e-13);
    CHECK(rel_residual(assemble_op(d), t) < 1e-13);
}

TEST_CASE("decompose rejects a bijection with singular image of 1") {
    // bijective on coordinates, but T(1) = E22 has no inverse
    SuperOp t = SuperOp::from_function(kS2, kS2, [&](const Element& x) {
        Matrix b = x.block(0);
        Matrix out(2, 2);
        // E11 -> E11, E22 -> E22 - E11, off-diagonals fixed: bijective,
        // but 1 -> E22
        out(0, 0) = b(0, 0) - b(1, 1);
        out(0, 1) = b(0, 1);
        out(1, 0) = b(1, 0);
        out(1, 1) = b(1, 1);
        return Element(kS2, {out});
    });
    Decomposition d = decompose(t);
    CHECK_FALSE(d.verdict);
    CHECK(d.note.find("h not invertible") != std::string::npos);

    Decomposition d2 = decompose(SuperOp::zero(kS2, kS2));
    CHECK_FALSE(d2.verdict);
    CHECK(d2.note.find("not bijective") != std::string::npos);
}

TEST_CASE("constructed preservers round trip") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        OpConstruction c = random_op_construction(kS21, seed);
        Decomposition d = decompose(c.t);
        REQUIRE(d.verdict);
        CHECK(rel_residual(d.h, c.h) < 1e-12);
        CHECK(rel_residual(d.r, c.r) < 1e-12);
        CHECK(rel_residual(d.s, c.s) < 1e-11);

        PropertyReport push = triple_transfer_check(c.t, d, 20, seed);
        CHECK(push.verdict);
        CHECK(push.worst_residual < 1e-11);
    }
}

TEST_CASE("kernel and quotient of a block-killing surjection") {
    AlgebraShape dom({2, 1, 2});
    AlgebraShape cod({2, 2});
    Rng rng(55);
    Element u0 = random_sample(AlgebraShape({2}), SampleKind::unitary, rng);
    SuperOp t = SuperOp::from_function(dom, cod, [&](const Element& x) {
        Matrix b0 = x.block(0);
        Matrix b2 = u0.block(0) * x.block(2) * u0.block(0).adjoint();
        return Element(cod, {b0, b2});
    });

    KernelReport k = kernel_quotient(t);
    CHECK(k.verdict);
    CHECK(k.kernel_blocks == std::vector<int>{1});
    CHECK(k.kernel_dim == 1);
    CHECK(k.kernel_is_block_ideal);
    CHECK(k.quotient_shape == AlgebraShape({2, 2}));
    CHECK(k.quotient_decomposition.verdict);
    CHECK(rel_residual(k.quotient_decomposition.h, Element::identity(cod)) < 1e-12);

    // not surjective: everything to the first block
    SuperOp bad = SuperOp::from_function(dom, cod, [&](const Element& x) {
        return Element(cod, {x.block(0), Matrix::Zero(2, 2)});
    });
    CHECK_THROWS_AS(kernel_quotient(bad), std::invalid_argument);
}

TEST_CASE("the three pair families agree") {
    PropertyReport agree = op_agreement(SuperOp::identity(kS21), 77);
    CHECK(agree.verdict);

    OpConstruction c = random_op_construction(kS21, 78);
    CHECK(op_agreement(c.t, 78).verdict);

    Matrix m = Matrix::Identity(5, 5);
    m(1, 3) = 0.4;
    PropertyReport rej = op_agreement(SuperOp(kS21, kS21, m), 79);
    CHECK(rej.verdict);  // agreement: all three families reject
    CHECK(rej.residuals.at("matrix_unit_verdict") == 0.0);
    CHECK(rej.residuals.at("hermitian_split_verdict") == 0.0);
    CHECK(rej.residuals.at("positive_split_verdict") == 0.0);
}
