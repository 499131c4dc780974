import pytest
from hypothesis import strategies as st

from tfpsolve import Tournament, parse_tournament

# Reference 4-player instances. The first is solvable for player 0, the
# second is not (the favorite only beats one player but needs two wins).
T4_YES_TEXT = """TFP v1
n=4 vstar=0
0101
0011
1000
0010
"""

T4_NO_TEXT = """TFP v1
n=4 vstar=0
0100
0000
1100
1110
"""


@pytest.fixture
def t4_yes() -> Tournament:
    return parse_tournament(T4_YES_TEXT)


@pytest.fixture
def t4_no() -> Tournament:
    return parse_tournament(T4_NO_TEXT)


def tournament_from_bits(n: int, vstar: int, bits: list[bool]) -> Tournament:
    """Orient pair (u, v), u < v, u-major, by one bit each: True means u wins."""
    out = [0] * n
    it = iter(bits)
    for u in range(n):
        for v in range(u + 1, n):
            if next(it):
                out[u] |= 1 << v
            else:
                out[v] |= 1 << u
    return Tournament(n=n, vstar=vstar, out_masks=tuple(out))


@st.composite
def tournaments(draw, min_rounds: int = 1, max_rounds: int = 3):
    c = draw(st.integers(min_rounds, max_rounds))
    n = 1 << c
    vstar = draw(st.integers(0, n - 1))
    m = n * (n - 1) // 2
    bits = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    return tournament_from_bits(n, vstar, bits)


def all_n4_tournaments(vstar: int = 0):
    for code in range(64):
        bits = [bool(code >> i & 1) for i in range(6)]
        yield tournament_from_bits(4, vstar, bits)
