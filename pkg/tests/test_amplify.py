import random
from math import ceil

import pytest

from dfalab import (IntersectionInstance, InvalidTarget, SizeOverflow,
                    amplify, intersect_nonempty, universal_dfa)
from dfalab.corpus import random_instance

from conftest import unary_mod


class TestAmplify:
    def test_identity_grouping_keeps_members(self, mod_instance):
        out = amplify(mod_instance, mod_instance.k)
        assert out.dfas == mod_instance.dfas

    def test_pairing_four_into_two(self):
        inst = IntersectionInstance([unary_mod(2, 0, "a"), unary_mod(3, 0, "b"),
                                     unary_mod(2, 1, "c"), unary_mod(3, 2, "d")])
        out = amplify(inst, 2)
        assert out.k == 2
        assert [d.n_states for d in out.dfas] == [6, 6]
        before = intersect_nonempty(inst)
        after = intersect_nonempty(out)
        assert (before is None) == (after is None)
        if before is not None:
            assert len(before) == len(after)

    def test_universal_group_collapses(self):
        alphabet = ("a",)
        inst = IntersectionInstance([universal_dfa(alphabet, f"u{i}")
                                     for i in range(3)])
        out = amplify(inst, 1)
        assert out.k == 1
        assert out.dfas[0].n_states == 1
        assert intersect_nonempty(out) is not None

    def test_padding_when_not_divisible(self):
        inst = IntersectionInstance([unary_mod(2, 1, "a"), unary_mod(3, 0, "b"),
                                     unary_mod(5, 0, "c")])
        out = amplify(inst, 2)  # d = 2, one universal pad
        assert out.k == 2
        assert [d.n_states for d in out.dfas] == [6, 5]
        before, after = intersect_nonempty(inst), intersect_nonempty(out)
        assert (before is None) == (after is None)
        if before is not None:
            assert len(before) == len(after)

    def test_target_larger_than_members_pads(self, mod_instance):
        out = amplify(mod_instance, 4)
        assert out.k == 4
        assert [d.n_states for d in out.dfas] == [2, 3, 1, 1]

    def test_invalid_target(self, mod_instance):
        with pytest.raises(InvalidTarget):
            amplify(mod_instance, 0)
        with pytest.raises(InvalidTarget):
            amplify(mod_instance, -2)

    def test_group_cap_overflows(self):
        inst = IntersectionInstance([unary_mod(50, 0, "a"), unary_mod(49, 0, "b")])
        with pytest.raises(SizeOverflow):
            amplify(inst, 1, cap=100)

    def test_random_instances_preserve_verdict_and_size_bound(self):
        rng = random.Random(2024)
        nonempty_seen = empty_seen = 0
        for _ in range(60):
            k_in = rng.randint(1, 6)
            inst = random_instance(rng, k=k_in, max_states=4,
                                   plant=rng.choice([None, 0, 2, 4]))
            target = rng.randint(1, k_in)
            out = amplify(inst, target)
            assert out.k == target
            d = ceil(inst.k / target)
            bound = max(x.n_states for x in inst.dfas) ** d
            assert all(x.n_states <= bound for x in out.dfas)
            before = intersect_nonempty(inst)
            after = intersect_nonempty(out)
            assert (before is None) == (after is None)
            if before is None:
                empty_seen += 1
            else:
                nonempty_seen += 1
                assert len(before) == len(after)
        assert nonempty_seen >= 10 and empty_seen >= 10
