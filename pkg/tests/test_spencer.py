from __future__ import annotations

import pytest

from conftest import make_system
from formalpde.ratlinalg import rank
from formalpde.spencer import (
    cohomology,
    delta_matrix,
    is_involutive_symbol,
    janet_tableau,
    symbol,
    symbol_dim,
)


def lambda_dim(n, s):
    from math import comb

    return comb(n, s)


COMPLETED_CORPUS = {
    # canonical completed/framed forms used by the property suites
    "example1": (2, [[("222", 1)], [("122", 1)], [("112", 1)], [("111", 1)], [("22", 1)], [("12", 1)]]),
    "example2_framed": (3, [[("33", 1)], [("23", 1)], [("22", 1), ("12", -1)], [("13", 1)]]),
    "example3_permuted": (3, [[("33", 1)], [("23", 1)], [("22", 1)], [("13", 1), ("2", -1)]]),
    "example4": (3, [[("33", 1)], [("23", 1), ("13", -1)], [("22", 1), ("12", -1)]]),
    "example5_rprime": (3, [[("33", 1), ("11", -1)], [("23", 1)], [("22", 1), ("11", -1)]]),
    "example6_twisted_completed": (3, [[("33", 1), ("2", -1)], [("23", 1), ("1", -1)], [("22", 1), ("13", -1)]]),
    "example6_third": (3, [[("333", 1), ("11", -1)], [("22", 1), ("13", -1)]]),
    "example7": (4, [[("44", 1)], [("34", 1), ("22", -1)], [("33", 1)], [("24", 1), ("11", -1)]]),
    "example8_framed": (3, [[("33", 1), ("13", -1)], [("23", 1)]]),
}


def completed_systems():
    return {name: make_system(n, *eqs) for name, (n, eqs) in COMPLETED_CORPUS.items()}


def test_symbol_dimensions_flagship(corpus_systems):
    sys = corpus_systems["example7"]
    assert [symbol_dim(sys, o) for o in (2, 3, 4, 5)] == [6, 4, 1, 0]


def test_symbol_dimensions_third_curve(corpus_systems):
    sys = corpus_systems["example6_third"]
    assert [symbol_dim(sys, o) for o in range(0, 6)] == [1, 3, 5, 6, 6, 6]


def test_symbol_free_jet_space():
    from formalpde.jetspace import monomial_count
    from formalpde.pdesystem import LinearSystem

    empty = LinearSystem(3, 2, [])
    for r in range(4):
        assert symbol_dim(empty, r) == 2 * monomial_count(3, r)


def test_delta_squared_zero_on_corpus(corpus_systems):
    for name, sys in completed_systems().items():
        n = sys.n
        q = sys.order
        for order in range(q, q + 2):
            for s in range(0, n - 1):
                out = delta_matrix(sys, s + 1, order)
                inn = delta_matrix(sys, s, order + 1)
                if out.cols and inn.rows:
                    assert (out @ inn).is_zero(), (name, s, order)


def test_delta_flagship_central_isomorphism(corpus_systems):
    sys = corpus_systems["example7"]
    m = delta_matrix(sys, 3, 4)
    assert (m.rows, m.cols) == (4, 4)
    assert rank(m) == 4


def test_delta_flagship_left_injective(corpus_systems):
    sys = corpus_systems["example7"]
    m = delta_matrix(sys, 2, 4)
    assert (m.rows, m.cols) == (16, 6)
    assert rank(m) == 6


def test_cohomology_flagship_acyclicity(corpus_systems):
    sys = corpus_systems["example7"]
    assert cohomology(sys, 2, 4).dim_cohomology == 0
    assert cohomology(sys, 3, 4).dim_cohomology == 0
    assert cohomology(sys, 4, 4).dim_cohomology == 1


def test_cohomology_flagship_h2_g3(corpus_systems):
    sys = corpus_systems["example7"]
    rep = cohomology(sys, 2, 3)
    assert rep.dim_domain == 24
    assert rep.dim_cohomology == 0
    assert rep.dim_coboundaries == 4


def test_cohomology_third_curve_h2_g3(corpus_systems):
    rep = cohomology(corpus_systems["example6_third"], 2, 3)
    assert rep.dim_cocycles >= 13
    assert rep.dim_coboundaries == 12
    assert rep.dim_cohomology >= 1


def test_janet_tableau_twisted_cubic():
    sys = completed_systems()["example6_twisted_completed"]
    tab = janet_tableau(sys, 2)
    assert tab.alpha == (3, 0, 0)


def test_janet_tableau_example3_permuted():
    tab = janet_tableau(completed_systems()["example3_permuted"], 2)
    assert tab.alpha == (2, 0, 0)


def test_janet_tableau_third_curve_order4(corpus_systems):
    tab = janet_tableau(corpus_systems["example6_third"], 4)
    assert tab.alpha == (6, 0, 0)


def test_involution_flagship_not_involutive(corpus_systems):
    res = is_involutive_symbol(corpus_systems["example7"], 4)
    assert not res.involutive
    assert res.certificate.multiplicative_sum == 1
    assert res.certificate.dim_next_symbol == 0
    assert (4, 4, 1) in res.certificate.nonzero_cohomology


def test_involution_twisted_cubic():
    res = is_involutive_symbol(completed_systems()["example6_twisted_completed"], 2)
    assert res.involutive
    assert symbol_dim(completed_systems()["example6_twisted_completed"], 3) == 3


def test_involution_example1():
    res = is_involutive_symbol(completed_systems()["example1"], 3)
    assert res.involutive


def test_involution_requires_frame_search():
    # completed but unpermuted coordinates: identity frame is not delta-regular
    sys = make_system(3, [("11", 1)], [("12", 1)], [("22", 1)], [("13", 1), ("2", -1)])
    res = is_involutive_symbol(sys, 2)
    assert res.involutive
    assert res.certificate.frames_tried > 0
    assert res.tableau.alpha == (2, 0, 0)


def test_involution_deterministic_across_runs():
    sys = make_system(3, [("11", 1)], [("12", 1)], [("22", 1)], [("13", 1), ("2", -1)])
    a = is_involutive_symbol(sys, 2, seed=0)
    b = is_involutive_symbol(sys, 2, seed=0)
    assert a.tableau.frame == b.tableau.frame
    c = is_involutive_symbol(sys, 2, seed=1)
    assert c.involutive


def test_euler_characteristic_matches_cohomology(corpus_systems):
    for name in ("example7", "example6_third", "example5_rprime"):
        sys = corpus_systems[name]
        n, q = sys.n, max(sys.order, 1)
        order = q
        lhs = sum(
            (-1) ** s * lambda_dim(n, s) * symbol_dim(sys, order + n - s) for s in range(n + 1)
        )
        rhs = 0
        for s in range(n + 1):
            rep = cohomology(sys, s, order + n - s)
            rhs += (-1) ** s * rep.dim_cohomology
        assert lhs == rhs, name


def test_characters_weakly_decreasing_in_regular_frames():
    # in the winning (delta-regular) frame the characters must come out sorted
    for name, sys in completed_systems().items():
        res = is_involutive_symbol(sys, sys.order)
        if res.involutive:
            alpha = res.tableau.alpha
            assert all(alpha[i] >= alpha[i + 1] for i in range(len(alpha) - 1)), name


def test_cartan_and_cohomology_agree_on_corpus():
    for name, sys in completed_systems().items():
        q = sys.order
        res = is_involutive_symbol(sys, q)
        reports = []
        finite = False
        window = 2 * q + sys.n
        for r in range(window + 1):
            if symbol_dim(sys, q + r) == 0:
                finite = True
                break
            reports.extend(cohomology(sys, s, q + r) for s in range(1, sys.n + 1))
        all_zero = all(rep.dim_cohomology == 0 for rep in reports)
        assert res.involutive == all_zero, name


def test_finite_type_verdict_is_exact(corpus_systems):
    res = is_involutive_symbol(corpus_systems["example7"], 4)
    assert not res.certificate.window_limited


def test_delta_matrix_rejects_top_degree(corpus_systems):
    with pytest.raises(ValueError, match="top exterior degree"):
        delta_matrix(corpus_systems["example7"], 4, 4)


def test_symbol_space_vectors_satisfy_equations(corpus_systems):
    sys = corpus_systems["example7"]
    space = symbol(sys, 3)
    from formalpde.pdesystem import symbol_matrix

    matrix, _ = symbol_matrix(sys, 3)
    assert (matrix @ space.basis).is_zero()
