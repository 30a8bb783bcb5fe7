from __future__ import annotations

import pytest

from gocycles.board import build_cactus, make_cycle_board
from gocycles import fixtures as fx


@pytest.fixture(scope="session")
def c5():
    return make_cycle_board(5)


@pytest.fixture(scope="session")
def two_odd_board():
    return build_cactus(fx.two_cycle_spec(5, 7))


@pytest.fixture(scope="session")
def odd_chain():
    return build_cactus(fx.odd_chain_spec())


@pytest.fixture(scope="session")
def even_chain():
    return build_cactus(fx.even_chain_spec())


@pytest.fixture(scope="session")
def uncovered_join():
    return build_cactus(fx.uncovered_join_spec())


@pytest.fixture(scope="session")
def k4():
    return fx.k4_board()
