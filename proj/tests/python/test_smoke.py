import math

import opstar as op


def ident(n):
    return [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]


def test_version():
    assert op.__version__ == "0.1.0"


def test_element_arithmetic():
    a = op.Element([2, 1], [[[1, 2], [3, 4]], [[5]]])
    b = a + a
    assert op.frobenius_norm(b - 2.0 * a) == 0.0
    assert abs(op.operator_norm(op.Element([2], [ident(2)])) - 1.0) < 1e-14
    assert op.classify(a @ op.adjoint(a)).positive


def test_decompose_identity():
    s = op.AlgebraShape([2, 1])
    t = op.SuperOp.identity(s)
    d = op.decompose(t)
    assert d.verdict
    assert op.rel_residual(d.h, op.Element.identity(s)) == 0.0
    assert op.op_rel_residual(op.assemble_op(d), t) < 1e-13


def test_round_trip_construction():
    c = op.random_op_construction(op.AlgebraShape([2, 1]), 11)
    d = op.decompose(c.t)
    assert d.verdict
    assert op.rel_residual(d.h, c.h) < 1e-12
    assert op.rel_residual(d.r, c.r) < 1e-12
    rep = op.is_op_randomized(c.t, 200, 5)
    assert rep.verdict and not rep.exhaustive


def test_triple_calculus():
    a = op.Element([2], [[[0, 2], [0, 0]]])
    p = op.polar(a)
    assert op.frobenius_norm(p.u - op.Element([2], [[[0, 1], [0, 0]]])) < 1e-14
    lim = op.cubic_root_limit(op.Element([2], [[[8, 0], [0, -27]]]), 20)
    assert lim.residual < 1e-7


def test_box_scenario():
    rec = op.box_example(2.0 * math.pi, 0.5)
    assert rec.verdict
    h = op.box_example_weight(2.0 * math.pi)
    target = op.Element([2], [[[0, -1], [1, 0]]])
    assert op.rel_residual(h, target) < 1e-12
    assert rec.defect_norm > 1e-3


def test_semigroup_scan_and_checks():
    gen = op.GeneratorSpec(op.SuperOp.zero(op.AlgebraShape([2]), op.AlgebraShape([2])), "zero")
    sc = op.scan(gen, op.default_time_grid())
    assert sc.all_decomposed()
    assert op.check_semigroup_law(sc).verdict
    assert op.check_cocycles(sc).verdict


def test_wolff_round_trip():
    s = op.AlgebraShape([2, 1])
    cb = op.center_basis(s)
    h = 2.0 * cb[0] + (-1.0) * cb[1]
    gen = op.central_symmetric_generator(h, op.Element.zero(s))
    sc = op.scan(gen, op.default_time_grid())
    ex = op.extract_symmetric_form(sc)
    assert ex.report.verdict
    assert op.rel_residual(ex.h, h) < 1e-9


def test_json_round_trip():
    a = op.random_sample(op.AlgebraShape([2, 1]), op.SampleKind.hermitian, 17)
    b = op.element_from_json(op.element_to_json(a))
    assert op.frobenius_norm(a - b) == 0.0


def test_acceptance_exposed():
    results = op.run_acceptance()
    assert len(results) == 10
    assert all(r.pass_ for r in results)
