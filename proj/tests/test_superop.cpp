#include "opstar/superop.hpp"
#include "opstar/triple.hpp"

#include <doctest.h>

using namespace opstar;

namespace {

const AlgebraShape kS21({2, 1});

}  // namespace

TEST_CASE("from_function, apply, and composition") {
    Rng rng(31);
    Element a = random_sample(kS21, SampleKind::generic, rng);
    Element b = random_sample(kS21, SampleKind::generic, rng);
    Element x = random_sample(kS21, SampleKind::generic, rng);

    SuperOp la = left_mult(a);
    SuperOp rb = right_mult(b);
    CHECK(rel_residual(la.apply(x), a * x) < 1e-15);
    CHECK(rel_residual(rb.apply(x), x * b) < 1e-15);
    CHECK(rel_residual(compose(la, rb).apply(x), a * x * b) < 1e-14);
    CHECK(rel_residual((la * rb).apply(x), compose(la, rb).apply(x)) == 0.0);

    SuperOp id = SuperOp::identity(kS21);
    CHECK(op_norm(id) == doctest::Approx(1.0));
    CHECK(rel_residual(id.apply(x), x) == 0.0);
    CHECK(op_norm(SuperOp::zero(kS21, kS21)) == 0.0);

    SuperOp jm = jordan_mult(a);
    CHECK(rel_residual(jm.apply(x), jordan_product(a, x)) < 1e-14);

    SuperOp probed = SuperOp::from_function(
        kS21, kS21, [&](const Element& y) { return a * y * b; });
    CHECK(rel_residual(probed, compose(la, rb)) < 1e-14);
}

TEST_CASE("box operator and inner derivation") {
    Rng rng(33);
    Element a = random_sample(kS21, SampleKind::generic, rng);
    Element b = random_sample(kS21, SampleKind::generic, rng);
    Element x = random_sample(kS21, SampleKind::generic, rng);
    CHECK(rel_residual(box_operator(a, b).apply(x), triple_product(a, b, x)) < 1e-14);

    Element z = random_sample(kS21, SampleKind::generic, rng);
    CHECK(rel_residual(inner_derivation(z).apply(x), commutator(z, x)) < 1e-15);
    CHECK(property_check(inner_derivation(z), OpProperty::derivation).verdict);
}

TEST_CASE("exponentials of superoperators") {
    SuperOp zero = SuperOp::zero(kS21, kS21);
    CHECK(rel_residual(exp(zero, 1.0), SuperOp::identity(kS21)) == 0.0);

    Rng rng(37);
    Element z = random_sample(kS21, SampleKind::generic, rng);
    z = 0.5 * (z - adjoint(z));  // skew
    SuperOp flow = exp(inner_derivation(z), 1.0);
    Element x = random_sample(kS21, SampleKind::generic, rng);
    Element w = elem_exp(z);
    CHECK(rel_residual(flow.apply(x), w * x * inverse(w)) < 1e-12);

    // group law in t
    CHECK(rel_residual(exp(inner_derivation(z), 0.7),
                       compose(exp(inner_derivation(z), 0.4),
                               exp(inner_derivation(z), 0.3))) < 1e-13);
}

TEST_CASE("structural automorphisms") {
    BlockAutoSpec spec;
    spec.source = {1, 0};
    spec.transposed = {false, true};
    Rng rng(41);
    AlgebraShape s({2, 2});
    spec.u = {random_sample(AlgebraShape({2}), SampleKind::unitary, rng).block(0),
              random_sample(AlgebraShape({2}), SampleKind::unitary, rng).block(0)};
    spec.v = spec.u;
    SuperOp t = block_triple_auto(s, spec);

    CHECK(property_check(t, OpProperty::triple_hom).verdict);
    PropertyReport iso = property_check(t, OpProperty::surjective_isometry);
    CHECK(iso.verdict);
    CHECK(iso.residuals.count("norm_preservation_sampled") == 1);

    SuperOp j = random_jordan_star_auto(s, 4242);
    CHECK(property_check(j, OpProperty::jordan_star_hom).verdict);
    CHECK(property_check(j, OpProperty::symmetric_map).verdict);
    CHECK(property_check(j, OpProperty::triple_hom).verdict);

    // same seed, same map
    CHECK(rel_residual(j, random_jordan_star_auto(s, 4242)) == 0.0);

    BlockAutoSpec bad = spec;
    bad.source = {0, 0};  // not a permutation
    CHECK_THROWS_AS(block_triple_auto(s, bad), std::invalid_argument);
}

TEST_CASE("property checks report witnesses") {
    // scaling breaks the triple identity cubically
    SuperOp twice = 2.0 * SuperOp::identity(kS21);
    PropertyReport rep = property_check(twice, OpProperty::triple_hom);
    CHECK_FALSE(rep.verdict);
    CHECK(rep.exhaustive);
    CHECK(rep.worst_residual > 0.1);
    CHECK(!rep.witness.empty());

    // ad_z is a *-derivation only for skew z
    Element e11 = Element::devectorize(
        kS21, [] { Vector v = Vector::Zero(5); v(0) = 1.0; return v; }());
    PropertyReport star = property_check(inner_derivation(e11), OpProperty::star_derivation);
    CHECK_FALSE(star.verdict);
    CHECK(property_check(inner_derivation(Complex(0, 1) * e11),
                         OpProperty::star_derivation)
              .verdict);

    // iL(a,a) is a triple derivation
    Rng rng(43);
    Element a = random_sample(kS21, SampleKind::generic, rng);
    SuperOp d = Complex(0, 1) * box_operator(a, a);
    CHECK(property_check(d, OpProperty::triple_derivation).verdict);
    CHECK_FALSE(property_check(d, OpProperty::derivation).verdict);
}

TEST_CASE("shape guards") {
    AlgebraShape s2({2});
    SuperOp id2 = SuperOp::identity(s2);
    SuperOp id21 = SuperOp::identity(kS21);
    CHECK_THROWS_AS(compose(id2, id21), std::invalid_argument);
    CHECK_THROWS_AS(id2 + id21, std::invalid_argument);
    Rng rng(47);
    Element x21 = random_sample(kS21, SampleKind::generic, rng);
    CHECK_THROWS_AS(id2.apply(x21), std::invalid_argument);
    CHECK_THROWS_AS(SuperOp(s2, s2, Matrix::Zero(3, 4)), std::invalid_argument);
}
