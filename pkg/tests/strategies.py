"""Hypothesis strategies for random networks and configurations."""

import random

from hypothesis import strategies as st

from bnsynth.instances import random_graph, random_network


@st.composite
def networks(draw, min_n=1, max_n=5, max_in_degree=3):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return random_network(rng, random_graph(rng, n, min(max_in_degree, n)))


@st.composite
def network_and_configs(draw, count=2, **kw):
    f = draw(networks(**kw))
    cfgs = [draw(st.text("01", min_size=f.n, max_size=f.n)) for _ in range(count)]
    return (f, *cfgs)
