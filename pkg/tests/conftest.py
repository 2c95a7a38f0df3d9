import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hvmodels.lattice import make_boolean, make_chain
from hvmodels.names import NameStore, enumerate_names
from hvmodels.valuation import EvalContext

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def chain2():
    return make_chain(2)


@pytest.fixture(scope="session")
def chain3():
    return make_chain(3)


@pytest.fixture(scope="session")
def four():
    return make_boolean(2)


@pytest.fixture(scope="session")
def algebras(chain2, chain3, four):
    return {"chain2": chain2, "chain3": chain3, "four": four}


@pytest.fixture()
def store3(chain3):
    return NameStore(chain3)


@pytest.fixture()
def store2(chain2):
    return NameStore(chain2)


@pytest.fixture()
def store4(four):
    return NameStore(four)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def pools():
    """One shared (store, ctx, pool) triple per algebra, rank <= 2 with
    domain cap 2 (uncapped over the two-chain, where the pool is small)."""
    out = {}
    for name, algebra in (("chain2", make_chain(2)), ("chain3", make_chain(3)),
                          ("four", make_boolean(2))):
        store = NameStore(algebra)
        cap = None if algebra.n == 2 else 2
        pool = enumerate_names(store, max_rank=2, max_domain=cap)
        out[name] = (store, EvalContext(store), pool)
    return out
