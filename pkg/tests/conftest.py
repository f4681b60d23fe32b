import json
import random

import pytest

from carpetdim.carpet import CarpetSpec, parse_carpet

E1_DICT = {"m": 2, "n": 3, "digits": [[0, 0], [0, 1], [1, 0]]}
UNIFORM_DICT = {"m": 2, "n": 3, "digits": [[0, 0], [1, 1]]}


def fig3_dict(n):
    digits = [[0, row] for row in range(12)]
    for col in range(1, 10):
        digits += [[col, 0], [col, 1]]
    return {"m": 10, "n": n, "digits": digits}


def make_carpet(obj):
    return parse_carpet(CarpetSpec.from_dict(obj))


@pytest.fixture(scope="session")
def e1():
    return make_carpet(E1_DICT)


@pytest.fixture(scope="session")
def uniform23():
    return make_carpet(UNIFORM_DICT)


@pytest.fixture(scope="session")
def fig3_left():
    return make_carpet(fig3_dict(12))


@pytest.fixture(scope="session")
def fig3_right():
    return make_carpet(fig3_dict(10 ** 5))


def random_carpets(count, seed=12345, max_m=6, max_n=12):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.randint(2, max_m)
        n = rng.randint(m + 1, max_n)
        cells = [(c, r) for c in range(m) for r in range(n)]
        digits = tuple(rng.sample(cells, rng.randint(1, len(cells))))
        out.append(parse_carpet(CarpetSpec(m, n, digits)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_carpets(100)


@pytest.fixture()
def e1_spec_file(tmp_path):
    path = tmp_path / "e1.json"
    path.write_text(json.dumps(E1_DICT))
    return str(path)


@pytest.fixture()
def uniform_spec_file(tmp_path):
    path = tmp_path / "uniform.json"
    path.write_text(json.dumps(UNIFORM_DICT))
    return str(path)
