import json
from fractions import Fraction

import pytest

from postlie import magnus
from postlie.algebra import Element, is_primitive
from postlie.forests import forests_up_to, horizontal, parse_forest
from postlie.magnus import ChiResult, chi, compare_methods, verify_defining_equation

P = parse_forest


def el(*pairs, degree=None):
    out = Element(degree=degree)
    for coeff, text in pairs:
        out = out + Element.parse(text, coeff)
    return out


CHI_4 = el(
    (1, "()"),
    (Fraction(-1, 2), "(())"),
    (Fraction(1, 3), "((()))"),
    (Fraction(1, 12), "(()())"),
    (Fraction(1, 12), "(())()"),
    (Fraction(-1, 12), "()(())"),
    (Fraction(-1, 4), "(((())))"),
    (Fraction(-1, 12), "((()()))"),
    (Fraction(-1, 12), "((())())"),
    (Fraction(-1, 12), "((()))()"),
    (Fraction(1, 12), "()((()))"),
    (Fraction(-1, 24), "(()())()"),
    (Fraction(1, 24), "()(()())"),
)


@pytest.mark.parametrize("method", magnus.METHODS)
def test_chi_up_to_four(method):
    assert chi(4, method).element == CHI_4
    assert chi(2, method).element == el((1, "()"), (Fraction(-1, 2), "(())"))


def test_log_alias():
    assert chi(3, "log").method == "direct_log"
    with pytest.raises(ValueError):
        chi(3, "guess")
    with pytest.raises(ValueError):
        chi(0)


def test_first_terms():
    r = chi(4)
    assert r.coefficient(P("()")) == 1
    assert r.coefficient(P("(((())))")) == Fraction(-1, 4)


@pytest.mark.parametrize("method", magnus.METHODS)
def test_components_primitive(method):
    r = chi(6, method)
    assert all(magnus.primitive_components(r).values())


@pytest.mark.parametrize("method", magnus.METHODS)
def test_vanishes_on_horizontal_forests(method):
    r = chi(6, method)
    for n in range(2, 7):
        assert r.coefficient(horizontal(n)) == 0


def test_recursive_matches_log_degree_by_degree():
    log, rec = chi(6, "direct_log").element, chi(6, "recursive").element
    for n in range(1, 7):
        assert rec.homogeneous(n) == log.homogeneous(n)


def test_methods_agree():
    for N in (2, 6):
        report = compare_methods(N)
        assert report.ok and report.diff == []
        assert set(report.timings) == set(magnus.METHODS)


def test_parallel_matches_serial():
    assert chi(5, "horizontal", threads=3).element == chi(5, "horizontal").element


def test_compare_detects_injected_bug(monkeypatch):
    real = magnus._IMPLS["vertical"]

    def buggy(N, threads):
        return real(N, threads) + Element.parse("((()))", Fraction(1, 7))

    monkeypatch.setitem(magnus._IMPLS, "vertical", buggy)
    report = compare_methods(4)
    assert not report.ok
    assert [f for f, _ in report.diff] == [P("((()))")]
    assert "((()))" in report.format_diff()


def test_defining_equation():
    assert verify_defining_equation(1)
    assert verify_defining_equation(4)
    assert verify_defining_equation(6)


def test_defining_equation_detects_perturbations():
    base = chi(4).element
    for F in forests_up_to(4):
        assert not verify_defining_equation(4, base + Element.basis(F, Fraction(1, 1000)))


def test_chi_result_json():
    r = chi(3, "recursive")
    data = json.loads(json.dumps(r.to_json()))
    assert data["method"] == "recursive" and data["degree"] == 3
    assert data["terms"][0] == {"forest": "()", "num": "1", "den": "1"}
    back = ChiResult.from_json(data)
    assert back.element == r.element and back.method == "recursive"


def test_chi_components_are_lie():
    r = chi(5)
    for n in range(1, 6):
        assert is_primitive(r.component(n))


def test_methods_agree_at_degree_seven():
    report = compare_methods(7)
    assert report.ok
    assert len(report.results["horizontal"].element) == 592
