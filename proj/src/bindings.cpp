#include "opstar/acceptance.hpp"
#include "opstar/semigroup.hpp"
#include "opstar/serialize.hpp"
#include "opstar/version.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace opstar;

namespace {

Element element_from_blocks(const std::vector<int>& dims,
                            const std::vector<Matrix>& blocks) {
    return Element(AlgebraShape(dims), blocks);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "block C*-algebra orthogonality-preserver toolkit";
    m.attr("__version__") = kVersion;

    py::class_<AlgebraShape>(m, "AlgebraShape")
        .def(py::init<std::vector<int>>())
        .def_readonly("dims", &AlgebraShape::dims)
        .def("total_dim", &AlgebraShape::total_dim)
        .def("blocks", &AlgebraShape::blocks)
        .def("__eq__", [](const AlgebraShape& a, const AlgebraShape& b) { return a == b; })
        .def("__repr__", [](const AlgebraShape& s) { return "AlgebraShape(" + s.str() + ")"; });

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("eq_tol", &Tolerances::eq_tol)
        .def_readwrite("rank_tol", &Tolerances::rank_tol)
        .def_readwrite("exp_tol", &Tolerances::exp_tol);

    py::class_<Element>(m, "Element")
        .def(py::init(&element_from_blocks), py::arg("dims"), py::arg("blocks"))
        .def_static("zero", &Element::zero)
        .def_static("identity", &Element::identity)
        .def_property_readonly("shape", &Element::shape)
        .def("block", [](const Element& e, int b) -> Matrix { return e.block(b); })
        .def("blocks", [](const Element& e) { return e.block_list(); })
        .def("vectorize", &Element::vectorize)
        .def("__add__", [](const Element& a, const Element& b) { return a + b; })
        .def("__sub__", [](const Element& a, const Element& b) { return a - b; })
        .def("__matmul__", [](const Element& a, const Element& b) { return a * b; })
        .def("__mul__", [](const Element& a, Complex c) { return c * a; })
        .def("__rmul__", [](const Element& a, Complex c) { return c * a; })
        .def("__neg__", [](const Element& a) { return -a; });

    m.def("adjoint", py::overload_cast<const Element&>(&adjoint));
    m.def("jordan_product", &jordan_product);
    m.def("commutator", &commutator);
    m.def("inverse", &inverse, py::arg("a"), py::arg("tol") = Tolerances{});
    m.def("elem_exp", &elem_exp);
    m.def("operator_norm", &operator_norm);
    m.def("frobenius_norm", &frobenius_norm);
    m.def("rel_residual",
          py::overload_cast<const Element&, const Element&>(&rel_residual));
    m.def("center_basis", &center_basis);
    m.def("center_distance", &center_distance);
    m.def("matrix_unit_basis", &matrix_unit_basis);

    py::class_<ElementClass>(m, "ElementClass")
        .def_readonly("hermitian", &ElementClass::hermitian)
        .def_readonly("skew", &ElementClass::skew)
        .def_readonly("positive", &ElementClass::positive)
        .def_readonly("normal", &ElementClass::normal)
        .def_readonly("unitary", &ElementClass::unitary)
        .def_readonly("projection", &ElementClass::projection)
        .def_readonly("partial_isometry", &ElementClass::partial_isometry)
        .def_readonly("invertible", &ElementClass::invertible)
        .def_readonly("central", &ElementClass::central);
    m.def("classify", &classify, py::arg("a"), py::arg("tol") = Tolerances{});

    py::enum_<SampleKind>(m, "SampleKind")
        .value("generic", SampleKind::generic)
        .value("hermitian", SampleKind::hermitian)
        .value("positive", SampleKind::positive)
        .value("unitary", SampleKind::unitary)
        .value("projection", SampleKind::projection);
    m.def("random_sample",
          py::overload_cast<const AlgebraShape&, SampleKind, std::uint64_t>(
              &random_sample),
          py::arg("shape"), py::arg("kind"), py::arg("seed"));

    // triple structure
    m.def("triple_product", &triple_product);
    m.def("odd_triple_power", &odd_triple_power);
    py::class_<PolarData>(m, "PolarData")
        .def_readonly("u", &PolarData::u)
        .def_readonly("abs", &PolarData::abs)
        .def_readonly("ranks", &PolarData::ranks);
    m.def("polar", &polar, py::arg("a"), py::arg("tol") = Tolerances{});
    m.def("triple_functional_calculus", &triple_functional_calculus, py::arg("a"),
          py::arg("f"), py::arg("tol") = Tolerances{});
    m.def("cubic_root", &cubic_root, py::arg("a"), py::arg("tol") = Tolerances{});
    py::class_<CubicRootLimit>(m, "CubicRootLimit")
        .def_readonly("iterate", &CubicRootLimit::iterate)
        .def_readonly("residual", &CubicRootLimit::residual)
        .def_readonly("steps", &CubicRootLimit::steps);
    m.def("cubic_root_limit", &cubic_root_limit, py::arg("a"), py::arg("n_steps"),
          py::arg("tol") = Tolerances{});
    m.def("peirce_projection", &peirce_projection, py::arg("e"), py::arg("j"),
          py::arg("x"), py::arg("tol") = Tolerances{});

    py::class_<HomotopeTag>(m, "HomotopeTag")
        .def(py::init<Element, const Tolerances&>(), py::arg("r"),
             py::arg("tol") = Tolerances{})
        .def_readonly("r", &HomotopeTag::r);
    m.def("homotope_product", &homotope_product);
    m.def("homotope_involution", &homotope_involution);
    m.def("homotope_center", &homotope_center);

    // superoperators
    py::class_<SuperOp>(m, "SuperOp")
        .def(py::init<AlgebraShape, AlgebraShape, Matrix>(), py::arg("dom"),
             py::arg("cod"), py::arg("mat"))
        .def_static("identity", &SuperOp::identity)
        .def_static("zero", &SuperOp::zero)
        .def_static("from_function", &SuperOp::from_function)
        .def_property_readonly("dom", &SuperOp::dom)
        .def_property_readonly("cod", &SuperOp::cod)
        .def_property_readonly("mat", &SuperOp::mat)
        .def("apply", &SuperOp::apply)
        .def("__call__", &SuperOp::apply)
        .def("__mul__", [](const SuperOp& a, const SuperOp& b) { return a * b; })
        .def("__add__", [](const SuperOp& a, const SuperOp& b) { return a + b; })
        .def("__sub__", [](const SuperOp& a, const SuperOp& b) { return a - b; });
    m.def("compose", &compose);
    m.def("op_norm", &op_norm);
    m.def("op_rel_residual",
          py::overload_cast<const SuperOp&, const SuperOp&>(&rel_residual));
    m.def("left_mult", &left_mult);
    m.def("right_mult", &right_mult);
    m.def("jordan_mult", &jordan_mult);
    m.def("box_operator", &box_operator);
    m.def("inner_derivation", &inner_derivation);
    m.def("exp_op", [](const SuperOp& r, double t) { return exp(r, t); }, py::arg("r"),
          py::arg("t"));

    py::enum_<OpProperty>(m, "OpProperty")
        .value("symmetric_map", OpProperty::symmetric_map)
        .value("jordan_star_hom", OpProperty::jordan_star_hom)
        .value("triple_hom", OpProperty::triple_hom)
        .value("derivation", OpProperty::derivation)
        .value("star_derivation", OpProperty::star_derivation)
        .value("triple_derivation", OpProperty::triple_derivation)
        .value("surjective_isometry", OpProperty::surjective_isometry);

    py::class_<PropertyReport>(m, "PropertyReport")
        .def_readonly("property", &PropertyReport::property)
        .def_readonly("verdict", &PropertyReport::verdict)
        .def_readonly("worst_residual", &PropertyReport::worst_residual)
        .def_readonly("exhaustive", &PropertyReport::exhaustive)
        .def_readonly("witness", &PropertyReport::witness)
        .def_readonly("residuals", &PropertyReport::residuals);
    m.def("property_check", &property_check, py::arg("t"), py::arg("prop"),
          py::arg("tol") = Tolerances{});

    // preservation
    py::class_<OrthogonalityResult>(m, "OrthogonalityResult")
        .def_readonly("orthogonal", &OrthogonalityResult::orthogonal)
        .def_readonly("residual", &OrthogonalityResult::residual);
    m.def("orthogonal", &orthogonal, py::arg("a"), py::arg("b"),
          py::arg("tol") = Tolerances{});

    py::enum_<PairKind>(m, "PairKind")
        .value("matrix_unit", PairKind::matrix_unit)
        .value("spectral_hermitian", PairKind::spectral_hermitian)
        .value("spectral_positive", PairKind::spectral_positive);
    m.def("orthogonal_pairs", &orthogonal_pairs, py::arg("shape"), py::arg("kind"),
          py::arg("count"), py::arg("seed"));
    m.def("is_op_randomized", &is_op_randomized, py::arg("t"), py::arg("count"),
          py::arg("seed"), py::arg("tol") = Tolerances{},
          py::arg("restrict_kind") = std::optional<PairKind>{});

    py::class_<Decomposition>(m, "Decomposition")
        .def_readonly("h", &Decomposition::h)
        .def_readonly("r", &Decomposition::r)
        .def_readonly("s", &Decomposition::s)
        .def_readonly("residuals", &Decomposition::residuals)
        .def_readonly("verdict", &Decomposition::verdict)
        .def_readonly("note", &Decomposition::note);
    m.def("decompose", &decompose, py::arg("t"), py::arg("tol") = Tolerances{});
    m.def("assemble_op",
          py::overload_cast<const Element&, const Element&, const SuperOp&>(
              &assemble_op));
    m.def("assemble_op", py::overload_cast<const Decomposition&>(&assemble_op));

    py::class_<OpConstruction>(m, "OpConstruction")
        .def_readonly("h", &OpConstruction::h)
        .def_readonly("r", &OpConstruction::r)
        .def_readonly("s", &OpConstruction::s)
        .def_readonly("t", &OpConstruction::t);
    m.def("random_op_construction", &random_op_construction, py::arg("shape"),
          py::arg("seed"), py::arg("tol") = Tolerances{});
    m.def("triple_transfer_check", &triple_transfer_check, py::arg("t"), py::arg("dec"),
          py::arg("samples"), py::arg("seed") = 0, py::arg("tol") = Tolerances{});

    py::class_<KernelReport>(m, "KernelReport")
        .def_readonly("kernel_blocks", &KernelReport::kernel_blocks)
        .def_readonly("kernel_dim", &KernelReport::kernel_dim)
        .def_readonly("kernel_is_block_ideal", &KernelReport::kernel_is_block_ideal)
        .def_readonly("quotient_shape", &KernelReport::quotient_shape)
        .def_readonly("quotient_op", &KernelReport::quotient_op)
        .def_readonly("quotient_decomposition", &KernelReport::quotient_decomposition)
        .def_readonly("verdict", &KernelReport::verdict)
        .def_readonly("note", &KernelReport::note);
    m.def("kernel_quotient", &kernel_quotient, py::arg("t"),
          py::arg("tol") = Tolerances{});
    m.def("op_agreement", &op_agreement, py::arg("t"), py::arg("seed"),
          py::arg("count_per_kind") = 200, py::arg("tol") = Tolerances{});

    // semigroups
    py::class_<GeneratorSpec>(m, "GeneratorSpec")
        .def(py::init<SuperOp, std::string>(), py::arg("r"), py::arg("label"))
        .def_readonly("r", &GeneratorSpec::r)
        .def_readonly("label", &GeneratorSpec::label);

    py::class_<ScanRecord>(m, "ScanRecord")
        .def_readonly("t", &ScanRecord::t)
        .def_readonly("t_op", &ScanRecord::t_op)
        .def_readonly("h", &ScanRecord::h)
        .def_readonly("r", &ScanRecord::r)
        .def_readonly("s", &ScanRecord::s)
        .def_readonly("verdict", &ScanRecord::verdict)
        .def_readonly("dec", &ScanRecord::dec);

    py::class_<SemigroupScan>(m, "SemigroupScan")
        .def_readonly("shape", &SemigroupScan::shape)
        .def_readonly("label", &SemigroupScan::label)
        .def_readonly("times", &SemigroupScan::times)
        .def_readonly("records", &SemigroupScan::records)
        .def("all_decomposed", &SemigroupScan::all_decomposed);

    m.def("default_time_grid", &default_time_grid,
          py::arg("extra") = std::vector<double>{});
    m.def("scan", &scan, py::arg("gen"), py::arg("times"),
          py::arg("tol") = Tolerances{});
    m.def("scan_family", &scan_family, py::arg("shape"), py::arg("family"),
          py::arg("times"), py::arg("label"), py::arg("tol") = Tolerances{});
    m.def("check_semigroup_law", &check_semigroup_law);
    m.def("check_cocycles", &check_cocycles);

    py::class_<GeneratorSplit>(m, "GeneratorSplit")
        .def_readonly("z0", &GeneratorSplit::z0)
        .def_readonly("d", &GeneratorSplit::d)
        .def_readonly("z1", &GeneratorSplit::z1)
        .def_readonly("d1", &GeneratorSplit::d1)
        .def_readonly("report", &GeneratorSplit::report);
    m.def("split_isometry_generator", &split_isometry_generator, py::arg("gen"),
          py::arg("tol") = Tolerances{});
    m.def("central_symmetric_generator", &central_symmetric_generator, py::arg("h"),
          py::arg("z"), py::arg("tol") = Tolerances{});

    py::class_<SymmetricExtract>(m, "SymmetricExtract")
        .def_readonly("h", &SymmetricExtract::h)
        .def_readonly("d", &SymmetricExtract::d)
        .def_readonly("generator_log", &SymmetricExtract::generator_log)
        .def_readonly("generator_fd", &SymmetricExtract::generator_fd)
        .def_readonly("report", &SymmetricExtract::report);
    m.def("extract_symmetric_form", &extract_symmetric_form, py::arg("scan"),
          py::arg("tol") = Tolerances{});

    py::class_<PedersenReport>(m, "PedersenReport")
        .def_readonly("c1", &PedersenReport::c1)
        .def_readonly("c2", &PedersenReport::c2)
        .def_readonly("c3", &PedersenReport::c3)
        .def_readonly("c4", &PedersenReport::c4)
        .def_readonly("r1", &PedersenReport::r1)
        .def_readonly("r2", &PedersenReport::r2)
        .def_readonly("r3", &PedersenReport::r3)
        .def_readonly("r4", &PedersenReport::r4)
        .def_readonly("defect_norm", &PedersenReport::defect_norm)
        .def_readonly("agreement", &PedersenReport::agreement)
        .def_readonly("isometry_generator", &PedersenReport::isometry_generator)
        .def_readonly("verdict", &PedersenReport::verdict)
        .def_readonly("note", &PedersenReport::note);
    m.def("pedersen_conditions", &pedersen_conditions, py::arg("gen"), py::arg("times"),
          py::arg("tol") = Tolerances{});

    py::class_<BoxExampleRecord>(m, "BoxExampleRecord")
        .def_readonly("t", &BoxExampleRecord::t)
        .def_readonly("s", &BoxExampleRecord::s)
        .def_readonly("e", &BoxExampleRecord::e)
        .def_readonly("flow_vs_peirce", &BoxExampleRecord::flow_vs_peirce)
        .def_readonly("weight_vs_formula", &BoxExampleRecord::weight_vs_formula)
        .def_readonly("defect_vs_formula", &BoxExampleRecord::defect_vs_formula)
        .def_readonly("weight_equals_isometry", &BoxExampleRecord::weight_equals_isometry)
        .def_readonly("defect_norm", &BoxExampleRecord::defect_norm)
        .def_readonly("shift_weight_vs_formula", &BoxExampleRecord::shift_weight_vs_formula)
        .def_readonly("shift_defect_norm", &BoxExampleRecord::shift_defect_norm)
        .def_readonly("verdict", &BoxExampleRecord::verdict)
        .def_readonly("note", &BoxExampleRecord::note);
    m.def("box_example", &box_example, py::arg("t"), py::arg("s"),
          py::arg("tol") = Tolerances{});
    m.def("box_example_isometry", &box_example_isometry);
    m.def("box_example_weight", &box_example_weight);
    m.def("box_example_group_defect", &box_example_group_defect);
    m.def("box_example_generator", &box_example_generator);
    m.def("shift_example_generator", &shift_example_generator);

    // serialization
    m.def("element_to_json",
          [](const Element& a) { return element_to_json(a).dump(); });
    m.def("element_from_json",
          [](const std::string& s) { return element_from_json(Json::parse(s)); });
    m.def("superop_to_json",
          [](const SuperOp& t) { return superop_to_json(t).dump(); });
    m.def("superop_from_json",
          [](const std::string& s) { return superop_from_json(Json::parse(s)); });
    m.def("decomposition_to_json",
          [](const Decomposition& d) { return decomposition_to_json(d).dump(); });

    // acceptance
    py::class_<CriterionResult>(m, "CriterionResult")
        .def_readonly("index", &CriterionResult::index)
        .def_readonly("name", &CriterionResult::name)
        .def_readonly("pass_", &CriterionResult::pass)
        .def_readonly("detail", &CriterionResult::detail);
    m.def("run_acceptance", &run_acceptance);
}
