from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fairorient.model import make_instance

settings.register_profile("default", max_examples=80, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(lo=-5, hi=5, max_den=4):
    return st.builds(
        lambda q, k: Fraction(k, q),
        st.integers(1, max_den),
        st.integers(lo * max_den, hi * max_den),
    ).filter(lambda x: lo <= x <= hi)


@st.composite
def instances(draw, max_agents=4, max_items=6, max_relevant=3, values=None, min_agents=1):
    n = draw(st.integers(min_agents, max_agents))
    m = draw(st.integers(0, max_items))
    vals = values if values is not None else rationals()
    items = []
    for k in range(m):
        size = draw(st.integers(1, min(max_relevant, n)))
        rel = sorted(draw(st.permutations(range(1, n + 1)))[:size])
        items.append((f"e{k + 1}", rel, {a: draw(vals) for a in rel}))
    return make_instance(n, items)


@st.composite
def multigraphs(draw, max_vertices=4, max_edges=7, values=st.integers(0, 5)):
    n = draw(st.integers(2, max_vertices))
    m = draw(st.integers(1, max_edges))
    items = []
    for k in range(m):
        u, v = sorted(draw(st.permutations(range(1, n + 1)))[:2])
        items.append((f"e{k + 1}", (u, v), {u: draw(values), v: draw(values)}))
    return make_instance(n, items)


@st.composite
def instance_and_orientation(draw, **kw):
    inst = draw(instances(**kw))
    owners = {it.id: draw(st.sampled_from(it.relevant)) for it in inst.items}
    return inst, owners
