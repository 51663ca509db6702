import sys
import time
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from cdindex.constructions import face_poset  # noqa: E402
from cdindex.ncpoly import CdPoly, cd_words  # noqa: E402
from cdindex.poset import SimplicialComplex  # noqa: E402

SESSION_START = time.monotonic()

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def complexes(draw, max_vertices=6, max_facets=5, max_size=4):
    nv = draw(st.integers(2, max_vertices))
    verts = list(range(1, nv + 1))
    facets = draw(st.lists(
        st.sets(st.sampled_from(verts), min_size=1, max_size=max_size), min_size=1, max_size=max_facets,
    ))
    return SimplicialComplex.from_faces(facets)


@st.composite
def face_posets(draw, **kw):
    """Face posets of random simplicial complexes (always quasi-CW)."""
    return face_poset(draw(complexes(**kw)), name="random")


@st.composite
def cd_polys(draw, max_degree=6, coeff=5):
    n = draw(st.integers(0, max_degree))
    words = cd_words(n)
    coeffs = draw(st.dictionaries(st.sampled_from(words), st.integers(-coeff, coeff), max_size=len(words)))
    return CdPoly(n, coeffs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in range(1, 15):
        status, title, detail = results.get(num, ("NOT RUN", "", ""))
        tr.write_line(f"criterion {num:2d}: {status:7s} {title} {detail}".rstrip())
    tr.write_line(f"total session time: {time.monotonic() - SESSION_START:.1f}s")
