"""Maps of pairs: adaptedness, normal derivatives, rank reports."""

import numpy as np
import pytest

from conecut.errors import NotAdapted
from conecut.expr import Exp, Var, from_components
from conecut.pairs import (
    MapOfPairs,
    PairDims,
    check_adapted,
    check_rank_conditions,
    normal_derivative,
    numeric_rank,
    require_adapted,
    sample_slice_points,
    tangential_derivative,
)


def _adapted_map():
    y, x = Var(0), Var(1)
    return MapOfPairs(
        from_components(2, (y + x**2, x * Exp(y))), PairDims(2, 1), PairDims(2, 1)
    )


def _non_adapted_map():
    y, x = Var(0), Var(1)
    return MapOfPairs(
        from_components(2, (y, x + 1.0)), PairDims(2, 1), PairDims(2, 1)
    )


def test_split_join_round_trip():
    dims = PairDims(5, 2)
    v = np.arange(5.0)
    y, x = dims.split(v)
    assert y.shape == (2,) and x.shape == (3,)
    assert np.array_equal(dims.join(y, x), v)


def test_sample_slice_points_lie_on_slice():
    dims = PairDims(4, 2)
    pts = sample_slice_points(dims, 16, seed=1)
    for p in pts:
        assert np.all(p[2:] == 0.0)


def test_check_adapted_accepts_adapted_map():
    report = check_adapted(_adapted_map())
    assert report.ok
    assert report.worst_violation <= 1e-12


def test_check_adapted_rejects_non_adapted_map():
    report = check_adapted(_non_adapted_map())
    assert not report.ok
    with pytest.raises(NotAdapted):
        require_adapted(_non_adapted_map())


def test_normal_derivative_block():
    m = _adapted_map()
    # x-component is x * exp(y); its x-derivative at (y, 0) is exp(y)
    for y in (-0.5, 0.0, 1.2):
        dn = normal_derivative(m, [y])
        assert dn.shape == (1, 1)
        assert dn[0, 0] == pytest.approx(np.exp(y))


def test_tangential_derivative_block():
    m = _adapted_map()
    dt = tangential_derivative(m, [0.7])
    assert dt[0, 0] == pytest.approx(1.0)


def test_numeric_rank():
    assert numeric_rank(np.zeros((3, 3))) == 0
    assert numeric_rank(np.eye(3)) == 3
    mat = np.outer([1.0, 2.0, 3.0], [4.0, 5.0])
    assert numeric_rank(mat) == 1
    # a tiny singular value relative to the largest does not count
    mat = np.diag([1.0, 1e-12])
    assert numeric_rank(mat) == 1


def test_rank_report_for_adapted_map():
    rep = check_rank_conditions(_adapted_map())
    assert rep.rank_f == 2
    assert rep.rank_f_restricted == 1
    assert rep.fiberwise_rank_dN == 1
    assert rep.dN_rank_constant
