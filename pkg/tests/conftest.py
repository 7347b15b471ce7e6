from dataclasses import dataclass

import pytest

from weakhopf import baseobject, entwining, galois
from weakhopf import instances as inst


@dataclass(frozen=True)
class Pipeline:
    bim: object
    ent: object
    base: object
    acts: object
    gal: object


_CACHE = {}


def pipeline(name: str) -> Pipeline:
    if name not in _CACHE:
        bim = inst.BUILTINS[name]()
        ent = entwining.build_entwining(bim)
        base = baseobject.build_base(bim, ent)
        acts = baseobject.build_actions(bim, base)
        gal_data = galois.build_galois(bim, ent, base, acts)
        _CACHE[name] = Pipeline(bim, ent, base, acts, gal_data)
    return _CACHE[name]


@pytest.fixture(scope="session", params=["g2", "k2", "z2", "sl", "nz"])
def any_pipeline(request):
    return pipeline(request.param)


@pytest.fixture(scope="session")
def g2():
    return pipeline("g2")


@pytest.fixture(scope="session")
def k2():
    return pipeline("k2")


@pytest.fixture(scope="session")
def z2():
    return pipeline("z2")


@pytest.fixture(scope="session")
def sl():
    return pipeline("sl")


@pytest.fixture(scope="session")
def nz():
    return pipeline("nz")
