import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

import oracle  # noqa: E402
from shapewilf.diagram import YoungDiagram  # noqa: E402
from shapewilf.transversal import Transversal  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

PROPER = {n: oracle.proper_diagrams(n) for n in range(1, 7)}


def proper_rows(max_size: int = 6, min_size: int = 1):
    return st.integers(min_size, max_size).flatmap(lambda n: st.sampled_from(PROPER[n]))


def proper_diagrams(max_size: int = 6, min_size: int = 1):
    return proper_rows(max_size, min_size).map(YoungDiagram)


def transversals(max_size: int = 6, min_size: int = 1):
    return proper_rows(max_size, min_size).flatmap(
        lambda rows: st.sampled_from(oracle.transversals(rows)).map(lambda w: Transversal(YoungDiagram(rows), w))
    )


def patterns(min_len: int = 1, max_len: int = 3):
    return st.integers(min_len, max_len).flatmap(lambda k: st.permutations(range(1, k + 1)).map(tuple))

