import random

from hypothesis import HealthCheck, settings, strategies as st

from jackmaps.maps import Map
from jackmaps.pairings import Pairing, canonical_base_pairings
from jackmaps.partition import Partition

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
positive_rationals = st.fractions(min_value=0, max_value=10, max_denominator=12).filter(lambda x: x > 0)


def random_pairing(labels, rng):
    labels = list(labels)
    rng.shuffle(labels)
    return Pairing((labels[i], labels[i + 1]) for i in range(0, len(labels), 2))


@st.composite
def partitions(draw, max_size=5, min_size=1):
    n = draw(st.integers(min_size, max_size))
    parts = []
    while n:
        k = draw(st.integers(1, n))
        parts.append(k)
        n -= k
    return Partition(parts)


@st.composite
def maps(draw, max_edges=5, min_edges=1):
    """A uniformly random edge pairing on the base couple of a random face-type."""
    pi = draw(partitions(max_edges, min_edges))
    seed = draw(st.integers(0, 2**32 - 1))
    B, W = canonical_base_pairings(pi)
    E = random_pairing(B.partner, random.Random(seed))
    return Map(B, W, E)


@st.composite
def relabelings(draw, M):
    labels = sorted(M.B.partner)
    image = draw(st.permutations(list(range(100, 100 + len(labels)))))
    return dict(zip(labels, image))
