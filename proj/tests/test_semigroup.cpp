#include "opstar/semigroup.hpp"

#include <doctest.h>

#include <cmath>

using namespace opstar;

namespace {

const AlgebraShape kS2({2});
const AlgebraShape kS21({2, 1});

Element skew_sample(const AlgebraShape& s, std::uint64_t seed) {
    Element z = random_sample(s, SampleKind::generic, seed);
    return 0.5 * (z - adjoint(z));
}

std::vector<double> grid5() { return {-1.0, -0.5, 0.0, 0.5, 1.0}; }

}  // namespace

TEST_CASE("default time grid") {
    std::vector<double> g = default_time_grid();
    CHECK(g == std::vector<double>{-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0});
    std::vector<double> g2 = default_time_grid({0.1, -0.5, 2.0});
    CHECK(g2.front() == -1.0);
    CHECK(g2.back() == 2.0);
    CHECK(std::count(g2.begin(), g2.end(), -0.5) == 1);  // deduplicated
    CHECK(g2.size() == 9);
}

TEST_CASE("generator spec validation") {
    CHECK_THROWS_AS(GeneratorSpec(SuperOp::zero(kS2, kS21), "rect"),
                    std::invalid_argument);
    GeneratorSpec z(SuperOp::zero(kS2, kS2), "zero");
    CHECK(z.label == "zero");
}

TEST_CASE("scan of the zero generator is constant identity") {
    SemigroupScan sc = scan(GeneratorSpec(SuperOp::zero(kS21, kS21), "zero"),
                            default_time_grid());
    CHECK(sc.records.size() == 7);
    CHECK(sc.all_decomposed());
    for (const ScanRecord& rec : sc.records) {
        CHECK(rec.verdict);
        CHECK(rel_residual(rec.t_op, SuperOp::identity(kS21)) == 0.0);
        CHECK(rel_residual(rec.h, Element::identity(kS21)) == 0.0);
    }
    const ScanRecord* at = sc.find(0.25);
    REQUIRE(at != nullptr);
    CHECK(at->t == 0.25);
    CHECK(sc.find(0.33) == nullptr);

    CHECK(check_semigroup_law(sc).verdict);
    PropertyReport co = check_cocycles(sc);
    CHECK(co.verdict);
    CHECK(co.residuals.at("equivalence_agrees") == 1.0);
}

TEST_CASE("law implies cocycles on a 5x5 grid") {
    // triple-derivation flows and weighted symmetric flows alike
    std::vector<GeneratorSpec> gens;
    gens.push_back(GeneratorSpec(inner_derivation(skew_sample(kS21, 61)), "inner"));
    Element a = random_sample(kS21, SampleKind::generic, 62);
    gens.push_back(GeneratorSpec(Complex(0, 1) * box_operator(a, a), "box"));
    {
        Rng rng(63);
        std::vector<Element> cb = center_basis(kS21);
        Element hc = Element::zero(kS21);
        for (const Element& c : cb) hc = hc + (0.5 + rng.uniform()) * c;
        gens.push_back(central_symmetric_generator(hc, skew_sample(kS21, 64)));
    }

    for (const GeneratorSpec& g : gens) {
        SemigroupScan sc = scan(g, grid5());
        PropertyReport law = check_semigroup_law(sc);
        PropertyReport co = check_cocycles(sc);
        CHECK(law.verdict);
        CHECK(law.worst_residual <= 1e-9);
        CHECK(co.verdict);
        CHECK(co.worst_residual <= 1e-9);
    }
}

TEST_CASE("families assembled pointwise from the factors satisfy the law") {
    GeneratorSpec g = central_symmetric_generator(
        [&] {
            std::vector<Element> cb = center_basis(kS21);
            return 0.8 * cb[0] - 0.3 * cb[1];
        }(),
        skew_sample(kS21, 65));

    auto assembled = [&](double t) { return assemble_op(decompose(exp(g.r, t))); };
    SemigroupScan sc = scan_family(kS21, assembled, grid5(), "assembled");
    PropertyReport law = check_semigroup_law(sc);
    CHECK(law.verdict);
    CHECK(law.worst_residual <= 1e-9);
}

TEST_CASE("a corrupted family fails the law and the cocycles") {
    GeneratorSpec g(inner_derivation(skew_sample(kS21, 66)), "inner");
    auto warped = [&](double t) { return exp(g.r, t * t); };
    SemigroupScan sc = scan_family(kS21, warped, grid5(), "warped");
    PropertyReport law = check_semigroup_law(sc);
    CHECK_FALSE(law.verdict);
    CHECK(law.worst_residual > 1e-3);
    CHECK(!law.witness.empty());
    PropertyReport co = check_cocycles(sc);
    CHECK_FALSE(co.verdict);
}

TEST_CASE("cocycle check refuses a scan with a failed decomposition") {
    // not bijective at t != 0: kills the off-diagonal coordinates
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 1.0;
    auto collapse = [&](double t) {
        Matrix f = Matrix::Identity(4, 4) + t * (m - Matrix::Identity(4, 4));
        return SuperOp(kS2, kS2, f);
    };
    SemigroupScan sc = scan_family(kS2, collapse, {0.0, 1.0}, "collapse");
    CHECK_FALSE(sc.all_decomposed());
    PropertyReport co = check_cocycles(sc);
    CHECK_FALSE(co.verdict);
    CHECK(co.witness.find("decompos") != std::string::npos);
}

TEST_CASE("continuity at zero") {
    GeneratorSpec g = box_example_generator();
    double prev = 1e9;
    for (double t : {1e-1, 1e-2, 1e-3}) {
        double dev = op_norm(exp(g.r, t) - SuperOp::identity(g.r.dom()));
        CHECK(dev < prev + 1e-9);
        prev = dev;
    }
    CHECK(prev < 1e-3 + 1e-9);
}

TEST_CASE("commutative algebras only carry the trivial flow") {
    AlgebraShape line5({1, 1, 1, 1, 1});
    Element z = skew_sample(line5, 67);
    SuperOp d = inner_derivation(z);
    CHECK(op_norm(d) == 0.0);  // commutators vanish identically
    SemigroupScan sc = scan(GeneratorSpec(d, "inner"), default_time_grid());
    for (const ScanRecord& rec : sc.records)
        CHECK(op_norm(rec.t_op - SuperOp::identity(line5)) == 0.0);
}

TEST_CASE("splitting an isometry generator") {
    Element a = random_sample(kS21, SampleKind::generic, 68);
    SuperOp r = Complex(0, 1) * box_operator(a, a) +
                inner_derivation(skew_sample(kS21, 69));
    GeneratorSplit sp = split_isometry_generator(GeneratorSpec(r, "mixed"));
    REQUIRE(sp.report.verdict);
    CHECK(classify(sp.z0).skew);
    CHECK(sp.report.residuals.at("z0_skew") <= 1e-10);
    CHECK(sp.report.residuals.at("d_star_derivation") <= 1e-9);
    CHECK(sp.report.residuals.at("d1_star_derivation") <= 1e-9);
    CHECK(sp.report.residuals.at("variant_reconstruction") <= 1e-12);
    CHECK(rel_residual(sp.z1, sp.z0) == 0.0);

    // frozen small case: z0 = i/2 for the shift generator on M2
    GeneratorSplit shift = split_isometry_generator(shift_example_generator());
    CHECK(rel_residual(shift.z0, Complex(0, 0.5) * Element::identity(kS2)) < 1e-14);

    // weighted flows are not isometric: report, not throw
    GeneratorSplit no = split_isometry_generator(central_symmetric_generator(
        Element::identity(kS21), Element::zero(kS21)));
    CHECK_FALSE(no.report.verdict);
    CHECK(no.report.witness.find("isometry") != std::string::npos);
}

TEST_CASE("symmetric generators: build, scan, extract") {
    std::vector<Element> cb = center_basis(kS21);
    Element h = 2.0 * cb[0] - 1.0 * cb[1];  // block weights 2 and -1
    GeneratorSpec g = central_symmetric_generator(h, Element::zero(kS21));
    SemigroupScan sc = scan(g, default_time_grid());

    for (const ScanRecord& rec : sc.records) {
        Element expect_h(kS21, {std::exp(2.0 * rec.t) * Matrix::Identity(2, 2),
                                std::exp(-rec.t) * Matrix::Identity(1, 1)});
        CHECK(rel_residual(rec.h, expect_h) < 1e-12);
        CHECK(rel_residual(rec.r, Element::identity(kS21)) < 1e-12);
    }

    SymmetricExtract ex = extract_symmetric_form(sc);
    REQUIRE(ex.report.verdict);
    CHECK(rel_residual(ex.h, h) < 1e-9);
    CHECK(ex.report.residuals.at("h_central") <= 1e-10);
    CHECK(ex.report.residuals.at("h_selfadjoint") <= 1e-10);
    CHECK(ex.report.residuals.at("weight_exponential") <= 1e-9);
    CHECK(ex.report.residuals.at("h_group_law") <= 1e-9);
    CHECK(ex.report.residuals.at("r_group_law") <= 1e-9);
    CHECK(ex.report.residuals.count("log_vs_finite_difference") == 1);

    CHECK_THROWS_AS(central_symmetric_generator(
                        random_sample(kS21, SampleKind::generic, 70),
                        Element::zero(kS21)),
                    std::invalid_argument);  // h not central self-adjoint
    CHECK_THROWS_AS(central_symmetric_generator(
                        Element::zero(kS21),
                        random_sample(kS21, SampleKind::hermitian, 71)),
                    std::invalid_argument);  // z not skew

    // a box flow is not symmetric: reported on the extract
    SemigroupScan nb = scan(box_example_generator(), default_time_grid());
    SymmetricExtract bad = extract_symmetric_form(nb);
    CHECK_FALSE(bad.report.verdict);
}

TEST_CASE("the four group-weight conditions") {
    PedersenReport shift = pedersen_conditions(shift_example_generator(),
                                               default_time_grid());
    CHECK(shift.isometry_generator);
    CHECK(shift.c1);
    CHECK(shift.c2);
    CHECK(shift.c3);
    CHECK(shift.c4);
    CHECK(shift.agreement);
    CHECK(shift.verdict);
    CHECK(shift.defect_norm <= 1e-12);

    PedersenReport box = pedersen_conditions(box_example_generator(),
                                             default_time_grid());
    CHECK(box.isometry_generator);
    CHECK_FALSE(box.c1);
    CHECK_FALSE(box.c2);
    CHECK_FALSE(box.c3);
    CHECK_FALSE(box.c4);
    CHECK(box.agreement);
    CHECK(box.verdict);
    CHECK(box.defect_norm == doctest::Approx(0.125));

    PedersenReport zero = pedersen_conditions(
        GeneratorSpec(SuperOp::zero(kS2, kS2), "zero"), default_time_grid());
    CHECK((zero.c1 && zero.c2 && zero.c3 && zero.c4));
    CHECK(zero.defect_norm == 0.0);

    // weighted flows are rejected by the precondition, in-band
    PedersenReport no = pedersen_conditions(
        central_symmetric_generator(Element::identity(kS21), Element::zero(kS21)),
        default_time_grid());
    CHECK_FALSE(no.isometry_generator);
    CHECK_FALSE(no.verdict);
    CHECK(!no.note.empty());
}

TEST_CASE("box scenario closed forms") {
    BoxExampleRecord rec = box_example(2.0 * std::acos(-1.0), 0.5);
    CHECK(rec.verdict);
    CHECK(rec.flow_vs_peirce < 1e-12);
    CHECK(rec.weight_vs_formula < 1e-12);
    CHECK(rec.defect_vs_formula < 1e-12);
    CHECK(rec.weight_equals_isometry < 1e-12);
    // x = e^{it/2} = -1 at t = 2pi
    Matrix h2pi(2, 2);
    h2pi << 0, -1, 1, 0;
    CHECK(rel_residual(box_example_weight(2.0 * std::acos(-1.0)),
                       Element(kS2, {h2pi})) < 1e-12);
    CHECK(rel_residual(box_example_weight(0.0), Element::identity(kS2)) == 0.0);

    BoxExampleRecord pi_pi = box_example(std::acos(-1.0), std::acos(-1.0));
    CHECK(pi_pi.defect_vs_formula <= 1e-10);
    CHECK(pi_pi.shift_weight_vs_formula <= 1e-12);
    CHECK(pi_pi.shift_defect_norm <= 1e-12);
    CHECK(pi_pi.defect_norm > 1e-3);  // the weights genuinely fail to be a group
}
