import pytest

from t2forms import csa, fields, quadform as qf, theorems
from t2forms.fields import GF2
from t2forms.quadform import QuadraticForm, WittClass


def test_revoy_gf4_is_norm_form(gf4):
    q = theorems.revoy_trace_form_of_extension(gf4, GF2)
    assert q.dim == 2
    # x0^2 + x0 x1 + x1^2
    assert q.diag == [1, 1] and q.polar_entry(0, 1) == 1
    assert qf.witt_class(q).arf == 1


def test_revoy_gf8(gf8):
    q = theorems.revoy_trace_form_of_extension(gf8, GF2)
    assert q.dim == 2
    assert qf.witt_class(q).arf == 1  # degree 3 is 3 mod 8


def test_revoy_degree_one():
    q = theorems.revoy_trace_form(GF2, (1, 1))  # x + 1
    assert q.dim == 0


def test_revoy_quotient_matches_extension(gf4):
    q1 = theorems.revoy_trace_form(GF2, (1, 1, 1))
    q2 = theorems.revoy_trace_form_of_extension(gf4, GF2)
    assert q1.diag == q2.diag and q1.polar == q2.polar


def test_predicted_matrix_class_table(gf4):
    for n, expect_one in ((2, False), (3, True), (4, True), (7, False), (8, False)):
        p = theorems.predicted_matrix_class(GF2, n)
        assert (p.witt.arf == 1) == expect_one
    # over GF(4) the [1,1] class collapses to the hyperbolic class
    p = theorems.predicted_matrix_class(gf4, 4)
    assert p.witt.arf == 0 and p.notes


def test_prediction_dimension_arithmetic():
    # odd x odd: the hyperbolic filler accounts for the full dimension
    for n1, n2 in ((3, 5), (3, 7), (5, 7), (3, 3)):
        w1 = WittClass(GF2, n1 * n1 - 1, 0, 0)
        w2 = WittClass(GF2, n2 * n2 - 1, 1, 0)
        p = theorems.predicted_tensor(w1, w2, n1, n2)
        assert p.witt.dim == n1 * n1 * n2 * n2 - 1
        assert (n1 * n1 - 1) + (n2 * n2 - 1) + (n1 * n1 - 1) * (n2 * n2 - 1) == p.witt.dim


def test_thm3_agrees_with_matrix_table():
    # the integer part of n/4 mod 2 reproduces the mod-8 table for even n
    for n in range(2, 20, 2):
        by_quarter = theorems.predicted_invariants(GF2, n).arf
        by_table = theorems.predicted_matrix_class(GF2, n).witt.arf
        assert by_quarter == by_table


def test_cor4_specializes_thm2():
    for n in range(2, 8):
        w = theorems.matrix_trace_witt(GF2, n)
        p2 = theorems.predicted_tensor(w, w, n, n)
        p4 = theorems.predicted_tensor_square(GF2, n)
        assert p2.witt.arf == p4.arf


def test_predicted_crossed_odd():
    assert theorems.predicted_crossed_odd(GF2, 3).witt == WittClass(GF2, 2, 1, 0)
    assert theorems.predicted_crossed_odd(GF2, 7).witt == WittClass(GF2, 6, 0, 0)
    assert theorems.predicted_crossed_odd(GF2, 5).witt == WittClass(GF2, 4, 1, 0)


def test_galois_obstruction_inconclusive_on_galois(gf4):
    E = gf4.extend("b^3+b+1")  # but tested over base gf4: need odd degree ext of gf4
    rep = theorems.galois_obstruction(gf4, E.poly)
    assert rep["verdict"] == "inconclusive"
    assert "degenerate" in rep  # 1 lies in {x^2+x} over GF(4)
    rep2 = theorems.galois_obstruction(GF2, (1, 1, 0, 1))  # x^3 + x + 1 over GF(2)
    assert rep2["verdict"] == "inconclusive"
    assert "degenerate" not in rep2


def test_galois_obstruction_rejects_even_degree():
    with pytest.raises(ValueError):
        theorems.galois_obstruction(GF2, (1, 1, 1))


def test_galois_obstruction_never_false_positive():
    # every finite extension of finite fields is Galois, so the verdict
    # must be inconclusive across the whole grid
    reports = theorems.run_verification(
        "cor2", {"n": (3, 5, 7, 9), "fields": ("GF2", "GF4", "GF8")}
    )
    assert len(reports) == 12
    assert all(r.computed["verdict"] == "inconclusive" for r in reports)


def test_example1_audit_contents():
    rep = theorems.example1_audit()
    assert rep["verdict"] == "documented-discrepancy"
    assert rep["reducible"] is True
    assert rep["roots"] == ["a+1"]
    assert rep["factorization"][0] == "x+a+1"
    assert rep["claimed_form"] == "[1,a]"
    assert rep["claimed_arf"] == "a"
    assert rep["form_dim"] == 2
    assert "computed_witt" in rep


def test_run_verification_prop1_grid():
    reports = theorems.run_verification("prop1", {"n": [2, 3], "fields": ("GF2",)})
    assert len(reports) == 2
    assert all(r.verdict == "pass" for r in reports)
    js = reports[0].to_json()
    assert set(js) == {"claim", "params", "predicted", "computed", "verdict"}
    js_ms = reports[0].to_json(include_ms=True)
    assert "ms" in js_ms


def test_run_verification_unknown_claim():
    with pytest.raises(ValueError):
        theorems.run_verification("nope")


def test_verification_reports_order_independent():
    r1 = theorems.run_verification("cor1", {"n": [3, 5]})
    r2 = theorems.run_verification("cor1", {"n": [5, 3]})
    assert [x.params for x in r1] == [x.params for x in r2]


def test_tensor_rule_over_gf4():
    # same tensor rule over a field where the [1,1] class collapses
    reports = theorems.run_verification(
        "thm2", {"field": "GF4", "pairs": ((2, 2), (2, 3), (3, 3))}
    )
    assert all(r.verdict == "pass" for r in reports)
    both_two = next(r for r in reports if r.params == {"n1": 2, "n2": 2})
    assert both_two.predicted["arf"] == "0"  # 1 lies in {x^2+x} over GF(4)
