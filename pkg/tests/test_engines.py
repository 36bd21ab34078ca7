"""The compiled kernel and its pure-Python twin must agree exactly:
same verdicts, same witnesses, same explored counts."""

import random

import pytest

from dfalab import compile_linear, search_intersection
from dfalab.corpus import (modular_counter_instance, random_input,
                           random_instance, random_machine)
from dfalab.engine import compiled_available, get_kernel

needs_compiled = pytest.mark.skipif(not compiled_available(),
                                    reason="compiled kernel not built")


def test_python_kernel_is_always_available():
    kernel = get_kernel("python")
    assert not kernel.COMPILED


def test_unknown_engine_rejected():
    with pytest.raises(ValueError):
        get_kernel("turbo")


@needs_compiled
def test_compiled_kernel_reports_itself():
    assert get_kernel("compiled").COMPILED
    assert get_kernel("auto").COMPILED


@needs_compiled
def test_engines_agree_on_random_instances():
    rng = random.Random(171)
    for _ in range(60):
        inst = random_instance(rng, k=rng.randint(1, 4), max_states=5,
                               plant=rng.choice([None, 0, 3]))
        cap = rng.choice([None, 0, 1, 2, 5])
        kwargs = {} if cap is None else {"step_cap": cap}
        a = search_intersection(inst, engine="compiled", **kwargs)
        b = search_intersection(inst, engine="python", **kwargs)
        assert a.witness == b.witness
        assert a.states_explored == b.states_explored


@needs_compiled
def test_engines_agree_on_compiled_families():
    rng = random.Random(99)
    for case in range(8):
        machine = random_machine(rng, max_states=3, name=f"e{case}")
        fam = compile_linear(machine, random_input(rng, 3), 1)
        a = search_intersection(fam.instance, engine="compiled")
        b = search_intersection(fam.instance, engine="python")
        assert a.witness == b.witness
        assert a.states_explored == b.states_explored


@needs_compiled
def test_engines_agree_on_counter_family():
    inst = modular_counter_instance(2, 16)
    a = search_intersection(inst, engine="compiled")
    b = search_intersection(inst, engine="python")
    assert a.witness == b.witness
    assert len(a.witness) == 16 * 9 - 1
    assert a.states_explored == b.states_explored == 16 * 9
