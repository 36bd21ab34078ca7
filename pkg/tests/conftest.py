import pytest

from dfalab import Dfa, IntersectionInstance, OfflineNtm


@pytest.fixture
def contains1():
    """Scan right over the input; accept on reading a 1.  Deterministic."""
    return OfflineNtm(
        n_states=2, initial=0, accepting={1},
        delta={(0, "0", "0"): {(0, "0", "R", "S")},
               (0, "1", "0"): {(1, "0", "S", "S")}},
        name="contains1")


@pytest.fixture
def immediate_accept():
    return OfflineNtm(n_states=1, initial=0, accepting={0}, delta={},
                      name="instant")


def unary_mod(modulus, residue, name=None):
    table = [[(s + 1) % modulus] for s in range(modulus)]
    return Dfa(("a",), table, 0, [residue], name=name or f"mod{modulus}r{residue}")


@pytest.fixture
def mod_instance():
    """(length = 1 mod 2) and (length = 0 mod 3) over a one-letter alphabet."""
    return IntersectionInstance([unary_mod(2, 1, "odd"), unary_mod(3, 0, "trip")])
