"""Guard against vacuous compiler/oracle agreement: deliberately break
one check inside a checker class and assert the seeded corpus notices.

If the corpus ever stops detecting these mutations, it has lost its
discriminating power and the agreement tests prove nothing.
"""

import random
from unittest import mock

import dfalab.reductions as reductions
from dfalab import compile_kozen, compile_linear, intersect_nonempty, oracle_accepts
from dfalab.corpus import random_input, random_machine


def first_disagreement(construction, cases=60):
    rng = random.Random(20250810)
    for case in range(cases):
        machine = random_machine(rng, max_states=4, name=f"mut{case}")
        bits = random_input(rng, 5)
        space = rng.randint(1, 3)
        if construction == "kozen":
            fam = compile_kozen(machine, bits, 1)
            expected = oracle_accepts(machine, bits, fam.space_cells)
        else:
            fam = compile_linear(machine, bits, space)
            expected = oracle_accepts(machine, bits, space)
        if (intersect_nonempty(fam.instance) is not None) != expected:
            return case
    return None


def relaxed(cls, field_to_skip):
    original = cls.end_field

    def end_field(self, field, acc):
        if field == field_to_skip:
            return acc
        return original(self, field, acc)

    return mock.patch.object(cls, "end_field", end_field)


def test_baseline_corpus_agrees():
    assert first_disagreement("linear") is None
    assert first_disagreement("kozen") is None


def test_broken_cell_read_check_is_detected():
    with relaxed(reductions._CellChecker, "r1"):
        assert first_disagreement("linear") is not None


def test_broken_block_read_check_is_detected():
    with relaxed(reductions._FixedKBlock, "r1"):
        assert first_disagreement("kozen") is not None


def test_broken_input_read_check_is_detected():
    with relaxed(reductions._InputPositionChecker, "r0"):
        assert first_disagreement("linear") is not None


def test_broken_work_head_chain_is_detected():
    with relaxed(reductions._WorkPositionChecker, "h1"):
        assert first_disagreement("linear") is not None


def test_broken_range_check_is_detected():
    with mock.patch.object(reductions._PositionRangeChecker, "end_field",
                           lambda self, field, acc: acc):
        assert first_disagreement("linear") is not None
