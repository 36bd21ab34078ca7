"""Acceptance suite: one test per release criterion, each at its stated
tolerance, each printing a single pass/fail line (run with ``pytest -s``
to see them inline).
"""

import itertools
import math
import random
import time

from dfalab import (OfflineNtm, amplify, compile_kozen, compile_linear,
                    decode_witness, intersect_nonempty, oracle_accepts,
                    run_to_witness, savitch_reach, search_intersection, step)
from dfalab.corpus import (modular_counter_instance, random_dfa, random_input,
                           random_instance, random_machine)
from dfalab.formats import (emit_dfa, emit_instance_paths, emit_ntm,
                            parse_dfa, parse_instance_paths, parse_ntm)
from dfalab.machine import all_configurations

SEED = 20250810


def _report(name, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_reduction_correctness():
    """Both compilers agree with the exhaustive oracle on every machine of
    a seeded corpus (zero tolerance), within five minutes."""
    started = time.perf_counter()
    rng = random.Random(SEED)
    cases = 50
    agree = {"kozen": 0, "linear": 0}
    for case in range(cases):
        machine = random_machine(rng, max_states=4, name=f"acc{case}")
        bits = random_input(rng, 5)
        space = rng.randint(1, 3)

        fam = compile_kozen(machine, bits, 1)
        expected = oracle_accepts(machine, bits, fam.space_cells)
        got = intersect_nonempty(fam.instance) is not None
        if got == expected:
            agree["kozen"] += 1

        fam = compile_linear(machine, bits, space)
        expected = oracle_accepts(machine, bits, space)
        got = intersect_nonempty(fam.instance) is not None
        if got == expected:
            agree["linear"] += 1
    elapsed = time.perf_counter() - started
    ok = agree["kozen"] == cases and agree["linear"] == cases and elapsed < 300
    _report("reduction-correctness", ok,
            f"kozen {agree['kozen']}/{cases}, linear {agree['linear']}/{cases}, "
            f"{elapsed:.1f}s (limit 300s)")


def test_product_language_equivalence():
    """Product membership equals the conjunction of member memberships for
    every string of length <= 8, over 200 random instances; exact."""
    from dfalab import product

    rng = random.Random(SEED + 1)
    instances = 200
    max_len = 8
    strings_checked = 0
    for i in range(instances):
        alphabet = ("x", "y", "z")[:rng.randint(1, 3)]
        inst = random_instance(rng, k=rng.randint(1, 3), alphabet=alphabet,
                               max_states=5, plant=rng.choice([None, 3]))
        prod = product(inst)
        ptab = prod.transitions.tolist()
        mtabs = [d.transitions.tolist() for d in inst.dfas]
        mfinals = [d.finals for d in inst.dfas]
        n_sym = len(alphabet)

        stack = [(prod.initial, tuple(d.initial for d in inst.dfas), 0)]
        while stack:
            pstate, mstates, depth = stack.pop()
            strings_checked += 1
            assert (pstate in prod.finals) == all(
                s in f for s, f in zip(mstates, mfinals)), f"instance {i}"
            if depth == max_len:
                continue
            for c in range(n_sym):
                stack.append((ptab[pstate][c],
                              tuple(t[s][c] for t, s in zip(mtabs, mstates)),
                              depth + 1))
    _report("product-language-equivalence", True,
            f"{instances} instances, {strings_checked} strings, exact")


def test_witness_contract():
    """Witnesses are accepted by all members, are shortest (checked by
    enumeration on small instances), and respect the pigeonhole bound."""
    rng = random.Random(SEED + 2)
    nonempty = enumerated = 0
    for _ in range(120):
        inst = random_instance(rng, k=rng.randint(1, 3), max_states=4,
                               plant=rng.choice([None, 0, 2, 4]))
        w = intersect_nonempty(inst)
        if w is None:
            continue
        nonempty += 1
        assert all(d.accepts(w.symbols) for d in inst.dfas)
        assert len(w) < inst.total_product_states
        if len(w) <= 6:
            enumerated += 1
            for length in range(len(w)):
                for s in itertools.product(inst.alphabet, repeat=length):
                    assert not all(d.accepts(s) for d in inst.dfas)
    ok = nonempty >= 30 and enumerated >= 20
    _report("witness-contract", ok,
            f"{nonempty} witnesses checked, {enumerated} shortest-verified "
            f"by enumeration, pigeonhole bound exact")


def test_amplification():
    """Collapsing preserves the emptiness verdict and the shortest witness
    length, and every output DFA obeys the (max size)^d bound; 100 instances."""
    rng = random.Random(SEED + 3)
    cases = 100
    nonempty = 0
    for _ in range(cases):
        k_in = rng.randint(1, 6)
        inst = random_instance(rng, k=k_in, max_states=4,
                               plant=rng.choice([None, 0, 2, 4]))
        target = rng.randint(1, k_in)
        out = amplify(inst, target)
        assert out.k == target
        d = math.ceil(inst.k / target)
        bound = max(x.n_states for x in inst.dfas) ** d
        assert all(x.n_states <= bound for x in out.dfas)
        before = intersect_nonempty(inst)
        after = intersect_nonempty(out)
        assert (before is None) == (after is None)
        if before is not None:
            nonempty += 1
            assert len(before) == len(after)
    _report("amplification", True,
            f"{cases} instances ({nonempty} nonempty), verdicts, witness "
            f"lengths and size bounds exact")


def test_state_budget_growth():
    """Per-position DFA sizes grow at most 3x when n grows from 8 to 64."""
    machine = OfflineNtm(
        3, 0, {2},
        {(0, "0", "0"): {(0, "0", "R", "S")},
         (0, "1", "0"): {(1, "1", "S", "R")},
         (1, "1", "0"): {(2, "0", "S", "S")}},
        name="mark3")
    sizes = {}
    for n in (8, 16, 32, 64):
        fam = compile_linear(machine, "0" * (n - 1) + "1", 2)
        assert intersect_nonempty(fam.instance) is not None
        groups = fam.instance.dfas[1:-1]
        sizes[n] = max(d.n_states for d in groups)
    ok = sizes[64] <= 3 * sizes[8]
    _report("state-budget-growth", ok,
            f"max per-position states {sizes}, 64-vs-8 ratio "
            f"{sizes[64] / sizes[8]:.2f} (limit 3.0)")


def test_savitch_bfs_equivalence():
    """The halving recursion agrees with bounded breadth-first reachability
    on every configuration pair of a ten-machine micro corpus."""
    rng = random.Random(SEED + 4)
    machines = []
    while len(machines) < 10:
        max_states = 1 if len(machines) < 4 else 2
        machines.append(random_machine(rng, max_states=max_states,
                                       name=f"micro{len(machines)}"))
    budget = 4
    pairs_checked = 0
    for machine in machines:
        bits = "1"
        configs = list(all_configurations(machine, bits, 1))
        successors = {c: step(machine, bits, c) for c in configs}

        def bfs_within(a, b, t):
            seen = {a}
            frontier = [a]
            for _ in range(t):
                if b in seen:
                    return True
                frontier = [n for c in frontier for n in successors[c]
                            if n not in seen]
                seen.update(frontier)
            return b in seen

        for a in configs:
            for b in configs:
                pairs_checked += 1
                assert savitch_reach(machine, bits, a, b, budget) == \
                    bfs_within(a, b, budget), (machine.name, a, b)
    _report("savitch-bfs-equivalence", True,
            f"10 machines, {pairs_checked} configuration pairs, budget "
            f"{budget}, exact agreement")


def test_solver_scaling_shape():
    """On the two-member counter family the log-log slope of explored
    states against n sits in [1.8, 2.2] across four doublings."""
    started = time.perf_counter()
    points = []
    for n in (64, 128, 256, 512):
        inst = modular_counter_instance(2, n)
        outcome = search_intersection(inst)
        assert outcome.witness is not None
        points.append((math.log(n), math.log(outcome.states_explored)))
    elapsed = time.perf_counter() - started
    mean_x = sum(x for x, _ in points) / len(points)
    mean_y = sum(y for _, y in points) / len(points)
    slope = (sum((x - mean_x) * (y - mean_y) for x, y in points)
             / sum((x - mean_x) ** 2 for x, _ in points))
    ok = 1.8 <= slope <= 2.2 and elapsed < 60
    _report("solver-scaling-shape", ok,
            f"slope {slope:.3f} in [1.8, 2.2], {elapsed:.1f}s (limit 60s)")


def test_round_trips():
    """parse/emit identity for all formats; decode/serialise identity for
    compiled traces; exact."""
    rng = random.Random(SEED + 5)
    for i in range(40):
        dfa = random_dfa(rng, alphabet=("a", "b", "c")[:rng.randint(1, 3)],
                         max_states=5, name=f"r{i}")
        assert parse_dfa(emit_dfa(dfa)) == dfa
    for i in range(40):
        machine = random_machine(rng, max_states=4, name=f"n{i}")
        assert parse_ntm(emit_ntm(machine)) == machine
    paths = [f"member_{i}.dfa" for i in range(6)]
    assert parse_instance_paths(emit_instance_paths(paths)) == paths

    decoded = 0
    attempts = 0
    while decoded < 12 and attempts < 200:
        attempts += 1
        machine = random_machine(rng, max_states=3, name=f"w{attempts}")
        bits = random_input(rng, 3)
        for fam in (compile_kozen(machine, bits, 1),
                    compile_linear(machine, bits, rng.randint(1, 2))):
            w = intersect_nonempty(fam.instance)
            if w is None:
                continue
            run = decode_witness(fam, w)
            assert run_to_witness(fam, run) == w
            assert all(d.accepts(w.symbols) for d in fam.instance.dfas)
            decoded += 1
    ok = decoded >= 12
    _report("round-trips", ok,
            f"40 DFA + 40 machine text round trips, {decoded} witness "
            f"decode/serialise round trips, exact")
