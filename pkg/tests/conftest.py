import pytest
from hypothesis import settings

from htl.builders import (
    BASE_K7_N6,
    BASE_K8_N3,
    BASE_K9_N2,
    BASE_K10_N3,
    BASE_K12_N1,
    BASE_K18_N1,
)
from htl.labeling import Labeling

settings.register_profile("ci", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("ci")

# the single-polygon 18-gon base as it circulates with a one-position
# transcription error: label 7 where label 1 belongs
MISCOUNTED_18GON = Labeling.from_rows(
    [(1, 2, 3, 4, 5, 1, 6, 5, 4, 2, 7, 5, 6, 3, 2, 4, 3, 6)], m=7
)

BASES = {
    7: BASE_K7_N6,
    8: BASE_K8_N3,
    9: BASE_K9_N2,
    10: BASE_K10_N3,
    12: BASE_K12_N1,
    18: BASE_K18_N1,
}


@pytest.fixture(scope="session")
def bases():
    return dict(BASES)


@pytest.fixture(scope="session")
def built_corpus():
    """Small deterministic family of built labelings, one per case."""
    from htl.builders import build

    return {k: build(k) for k in (7, 8, 9, 10, 12, 13, 14, 15, 18, 20, 24, 30)}
