"""Seeded generators for verification corpora and the benchmark family.

Everything here is driven by a caller-supplied ``random.Random`` so that
reports and test corpora are reproducible from a printed seed.
"""

from .automata import Dfa, IntersectionInstance
from .errors import ValidationError
from .machine import INPUT_READS, MOVES, WORK_SYMBOLS, OfflineNtm

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def random_input(rng, max_len):
    n = rng.randint(1, max_len)
    return "".join(rng.choice("01") for _ in range(n))


def random_machine(rng, *, max_states=4, name="machine"):
    """Random offline machine with a bias toward reachable acceptance.

    Accepting states keep no outgoing transitions; roughly one entry in
    ten is nondeterministic and a few (state, reads) combinations are left
    stuck so rejection by halting also occurs.
    """
    n_states = rng.randint(1, max_states)
    accepting = {q for q in range(n_states) if rng.random() < 0.25}
    if not accepting and n_states > 1 and rng.random() < 0.8:
        accepting = {rng.randrange(1, n_states)}
    delta = {}
    for q in range(n_states):
        if q in accepting:
            continue
        for r0 in INPUT_READS:
            for r1 in WORK_SYMBOLS:
                roll = rng.random()
                fanout = 1 if roll < 0.75 else (2 if roll < 0.85 else 0)
                choices = set()
                for _ in range(fanout):
                    choices.add((rng.randrange(n_states), rng.choice(WORK_SYMBOLS),
                                 rng.choice(MOVES), rng.choice(MOVES)))
                if choices:
                    delta[(q, r0, r1)] = choices
    return OfflineNtm(n_states=n_states, initial=0, accepting=accepting,
                      delta=delta, name=name)


def random_dfa(rng, *, alphabet=("a", "b"), max_states=5, name="d",
               accept_string=None):
    m = rng.randint(1, max_states)
    table = [[rng.randrange(m) for _ in alphabet] for _ in range(m)]
    initial = rng.randrange(m)
    finals = {s for s in range(m) if rng.random() < 0.35}
    if accept_string is not None:
        state = initial
        index = {tok: i for i, tok in enumerate(alphabet)}
        for tok in accept_string:
            state = table[state][index[tok]]
        finals.add(state)
    return Dfa(alphabet=alphabet, transitions=table, initial=initial,
               finals=finals, name=name)


def random_instance(rng, *, k=2, alphabet=("a", "b"), max_states=5,
                    plant=None):
    """Random instance; with ``plant`` set, a random string of that maximum
    length is made acceptable to every member (the instance is nonempty)."""
    planted = None
    if plant is not None:
        planted = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, plant)))
    dfas = [random_dfa(rng, alphabet=alphabet, max_states=max_states,
                       name=f"d{i}", accept_string=planted)
            for i in range(k)]
    return IntersectionInstance(dfas)


def largest_prime_power(prime, limit):
    power = prime
    while power * prime <= limit:
        power *= prime
    return power


def modular_counter_instance(k, n):
    """k unary cycle DFAs with pairwise-coprime lengths close to n.

    Member i counts string length modulo the largest power of the i-th
    prime not exceeding n and accepts at residue length-1, so the shortest
    common witness has length (product of the cycle lengths) - 1 and an
    exhaustive search must visit every reachable product state.
    """
    if k < 1 or k > len(PRIMES):
        raise ValidationError(f"counter family supports 1..{len(PRIMES)} members")
    if n < PRIMES[k - 1]:
        raise ValidationError(f"need n >= {PRIMES[k - 1]} for {k} members")
    dfas = []
    for i in range(k):
        cycle = largest_prime_power(PRIMES[i], n)
        table = [[(s + 1) % cycle] for s in range(cycle)]
        dfas.append(Dfa(alphabet=("a",), transitions=table, initial=0,
                        finals=[cycle - 1], name=f"mod{cycle}"))
    return IntersectionInstance(dfas)
