"""
Point helpers and hypothesis strategies shared by the tests.
"""

from hypothesis import strategies as st

from chaoskit.services.sft import Sft, cycle_through, essentialize
from chaoskit.services.symbolic import EpPoint, parse_point
from chaoskit.services.zoo import catalog, compile_system


def zoo(name: str) -> Sft:
    return compile_system(catalog()[name])


def ep(text: str, alphabet_size: int = 2) -> EpPoint:
    return parse_point(text, alphabet_size)


def words(alphabet_size: int, min_size: int = 0, max_size: int = 8):
    return st.lists(st.integers(0, alphabet_size - 1), min_size=min_size, max_size=max_size).map(tuple)


def ep_points(alphabet_size: int = 2, max_pre: int = 6, max_cycle: int = 5):
    return st.builds(
        lambda pre, cyc: EpPoint(preperiod=pre, cycle=cyc, alphabet_size=alphabet_size),
        words(alphabet_size, 0, max_pre),
        words(alphabet_size, 1, max_cycle),
    )


@st.composite
def irreducible_sfts(draw, max_size: int = 5) -> Sft:
    """A Hamiltonian cycle 0 -> 1 -> ... -> n-1 -> 0 plus random extra edges."""
    n = draw(st.integers(1, max_size))
    matrix = [[0] * n for _ in range(n)]
    for a in range(n):
        matrix[a][(a + 1) % n] = 1
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    for a, b in extra:
        matrix[a][b] = 1
    return essentialize(matrix)


@st.composite
def admissible_points(draw, s: Sft, prefix=(), walk_max: int = 6) -> EpPoint:
    """prefix . random walk . a cycle through the last symbol (prefix must be an allowed word)."""
    walk = list(prefix) or [draw(st.integers(0, s.alphabet_size - 1))]
    for _ in range(draw(st.integers(0, walk_max))):
        walk.append(draw(st.sampled_from(s.successors(walk[-1]))))
    tail = cycle_through(s, walk[-1])
    return EpPoint(preperiod=tuple(walk[:-1]), cycle=tail.cycle, alphabet_size=s.alphabet_size)


@st.composite
def pseudo_orbit_entries(draw, s: Sft, window: int, length: int):
    """Entries whose consecutive jumps agree with the shift on `window` symbols."""
    entries = [draw(admissible_points(s))]
    for _ in range(length - 1):
        prefix = entries[-1].shift(1).word(0, window)
        entries.append(draw(admissible_points(s, prefix=prefix)))
    return entries
