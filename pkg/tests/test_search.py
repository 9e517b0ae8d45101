"""Search and cross-check tests.

Capacity values below were verified by hand: the candidate graphs are
small enough to list, and their quadratic forms follow from solving
(A + mu I) x = j directly.
"""

import math
from fractions import Fraction

import pytest

from twodist import search
from twodist.certificates import (CodeParameters, beta_graph, certify_alpha,
                                  certify_beta, code_rank, realize_from_beta)
from twodist.errors import ParameterDomain, SizeGuardError
from twodist.graphs import (canonical_form, complete_graph, cycle_graph,
                            empty_graph, enumerate_graphs, parse_graph6)


def pentagon_parameters():
    a = (math.sqrt(5.0) - 1.0) / 4.0
    b = -(math.sqrt(5.0) + 1.0) / 4.0
    return a, b


def test_grid_shapes():
    assert len(search.RATIONAL_GRID) == 15
    assert len(search.BETA_GRID) == 12
    assert all(P.exact is not None for P in search.RATIONAL_GRID)
    assert all(P.beta < 0 < P.alpha for P in search.BETA_GRID)


# ---------------------------------------------------------------------------
# capacity
# ---------------------------------------------------------------------------

def test_capacity_only_one_vertex():
    res = search.capacity(1, 2, 2, n_max=2, mode="strict")
    assert res.value == 1
    assert res.extremal_graphs == [canonical_form(empty_graph(1))]
    assert res.exhaustive  # dimension bound at rank 1 is 2 <= n_max


def test_capacity_square_at_equality():
    res = search.capacity(3, 1, 2, n_max=5, mode="equal")
    assert res.value == 4
    assert res.extremal_graphs == [canonical_form(cycle_graph(4))]
    assert not res.exhaustive  # dimension bound at rank 3 is 9 > 5


def test_capacity_empty_result():
    # K1 has quadform exactly 1/2, which strict mode excludes
    res = search.capacity(2, Fraction(1, 2), 2, n_max=3, mode="strict")
    assert res.value == 0
    assert res.extremal_graphs == []
    assert not res.exhaustive
    res = search.capacity(2, Fraction(1, 2), 2, n_max=5, mode="strict")
    assert res.value == 0 and res.exhaustive


def test_capacity_equal_orthogonal_pair():
    res = search.capacity(2, 1, 2, n_max=2, mode="equal")
    assert res.value == 2
    assert res.extremal_graphs == [canonical_form(empty_graph(2))]


def test_capacity_guards():
    with pytest.raises(ValueError):
        search.capacity(2, 1, 2, n_max=3, mode="loose")
    with pytest.raises(SizeGuardError):
        search.capacity(2, 1, 2, n_max=9)
    with pytest.raises(ParameterDomain):
        search.capacity(2, 1, 1, n_max=3)
    with pytest.raises(ParameterDomain):
        search.capacity(2, 0, 2, n_max=3)


def test_capacity_monotone_in_rank_and_budget():
    vals = [search.capacity(r, 1, 2, n_max=4, mode="strict").value
            for r in (1, 2, 3, 4)]
    assert vals == sorted(vals)
    vals = [search.capacity(2, p, 2, n_max=4, mode="strict").value
            for p in (Fraction(1, 2), Fraction(1), Fraction(3, 2))]
    assert vals == sorted(vals)


def test_capacity_parallel_matches_serial():
    serial = search.capacity(3, 1, 2, n_max=5, mode="equal", workers=1)
    parallel = search.capacity(3, 1, 2, n_max=5, mode="equal", workers=2)
    assert serial == parallel


# ---------------------------------------------------------------------------
# maximum code size
# ---------------------------------------------------------------------------

def test_max_code_size_square():
    res = search.max_code_size(0, -1, d=2, n_max=6)
    assert res.value == 4
    assert res.extremal_graphs == [canonical_form(cycle_graph(4))]
    assert res.exhaustive


def test_max_code_size_antipodal():
    res = search.max_code_size(Fraction(0), Fraction(-1), d=1, n_max=4)
    assert res.value == 2
    assert res.extremal_graphs == [canonical_form(empty_graph(2))]
    assert res.exhaustive


def test_max_code_size_pentagon():
    a, b = pentagon_parameters()
    res = search.max_code_size(a, b, d=2, n_max=6)
    assert res.value == 5
    assert res.extremal_graphs == [canonical_form(cycle_graph(5))]
    assert res.exhaustive


def test_max_code_size_complement_consistency():
    # at (1/3,-1/3) both two-vertex graphs win; the cross-validation
    # inside exercises beta-certificate cases one and two on complements
    res = search.max_code_size(Fraction(1, 3), Fraction(-1, 3), d=2, n_max=4)
    assert res.value == 2
    assert res.extremal_graphs == [canonical_form(empty_graph(2)),
                                   canonical_form(complete_graph(2))]


def test_max_code_size_domain():
    with pytest.raises(ParameterDomain):
        search.max_code_size(0.5, 0.0, d=2, n_max=4)


def test_extremal_graphs_recertify():
    res = search.max_code_size(0, -1, d=2, n_max=6)
    P = CodeParameters.make(0, -1)
    for g6 in res.extremal_graphs:
        c = certify_alpha(parse_graph6(g6), P)
        assert c.valid and c.rank_r <= 2


# ---------------------------------------------------------------------------
# derived-code capacity
# ---------------------------------------------------------------------------

def test_neighborhood_capacity_square_parameters():
    res = search.neighborhood_capacity_f(0, -1, d=2, n_max=6)
    assert res.value == 2
    assert canonical_form(empty_graph(2)) in res.extremal_graphs


def test_neighborhood_capacity_pentagon():
    a, b = pentagon_parameters()
    res = search.neighborhood_capacity_f(a, b, d=2, n_max=5)
    assert res.value == 2
    assert canonical_form(empty_graph(2)) in res.extremal_graphs


def test_neighborhood_capacity_exact_with_roof():
    # p' = 3/2 at mu = 2; the internal roof check compares against the
    # searched maximum at the mapped parameters (1/4, -1/2)
    res = search.neighborhood_capacity_f(Fraction(1, 3), Fraction(-1, 3),
                                         d=2, n_max=5)
    assert res.value == 2


def test_mapped_maximum_is_triangle():
    res = search.max_code_size(Fraction(1, 4), Fraction(-1, 2), d=2, n_max=5)
    assert res.value == 3
    assert res.extremal_graphs == [canonical_form(empty_graph(3))]
    assert res.exhaustive


# ---------------------------------------------------------------------------
# recursion identities on the grid
# ---------------------------------------------------------------------------

def test_recursion_identities_hold_on_whole_grid():
    # mu is preserved and the mapped budget equals the neighbor budget;
    # the algebra holds even where the mapped pair leaves the admissible
    # domain, so it is checked on raw fractions
    for P in search.RATIONAL_GRID:
        a, b = P.exact.alpha, P.exact.beta
        a0 = a / (1 + a)
        b0 = (b - a * a) / (1 - a * a)
        assert (1 - b0) / (a0 - b0) == P.exact.mu
        assert (a0 - b0) / (-b0) == (a - b) / (a * a - b)


# ---------------------------------------------------------------------------
# beta-route round trips on the beta grid
# ---------------------------------------------------------------------------

def test_beta_route_round_trips_small():
    seen = 0
    for n in range(1, 5):
        for G in enumerate_graphs(n):
            for P in search.BETA_GRID:
                c = certify_beta(G, P)
                if not c.valid:
                    continue
                seen += 1
                code = realize_from_beta(G, P)
                assert beta_graph(code) == G
                assert code_rank(code) == c.rank_r
    assert seen > 50


# ---------------------------------------------------------------------------
# oracle cross-check
# ---------------------------------------------------------------------------

def test_oracle_full_grid_small():
    rep = search.oracle_cross_check(4)
    assert rep.ok
    assert rep.checked == 18 * 15


def test_oracle_single_points():
    P = CodeParameters.make(Fraction(0), Fraction(-1))
    rep = search.oracle_cross_check(4, parameter_grid=[P])
    assert rep.ok and rep.checked == 18

    # the rank-accounting pitfall: K3 at (0,-1/2) is valid with rank 3
    Q = CodeParameters.make(Fraction(0), Fraction(-1, 2))
    c = certify_alpha(complete_graph(3), Q)
    assert c.valid and c.rank_r == 3
    rep = search.oracle_cross_check(3, parameter_grid=[Q])
    assert rep.ok


def test_oracle_guards():
    with pytest.raises(SizeGuardError):
        search.oracle_cross_check(8)
    with pytest.raises(ValueError):
        search.oracle_cross_check(3,
                                  parameter_grid=[CodeParameters.make(0.0,
                                                                      -1.0)])
