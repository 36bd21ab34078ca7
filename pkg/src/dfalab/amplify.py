"""Self-reduction: collapse a (d*k)-member instance into a k-member one by
replacing consecutive groups of d automata with their products.

The output instance has the same emptiness verdict and the same shortest
witness as the input (each group product accepts exactly the intersection
of its members), and each output DFA has at most (max member size)^d
states.
"""

from math import ceil

from .automata import DEFAULT_PRODUCT_CAP, Dfa, IntersectionInstance, product
from .errors import InvalidTarget


def universal_dfa(alphabet, name="universal"):
    """One-state DFA accepting every string over the alphabet."""
    return Dfa(alphabet=alphabet, transitions=[[0] * len(alphabet)],
               initial=0, finals=[0], name=name)


def group_size(member_count, k):
    if k < 1:
        raise InvalidTarget(f"target count must be positive, got {k}")
    return max(1, ceil(member_count / k))


def amplify(instance, k, *, cap=DEFAULT_PRODUCT_CAP):
    """Collapse the instance to exactly k DFAs via per-group products.

    Members are grouped consecutively in input order; when the member
    count is not a multiple of k the tail groups are padded with universal
    one-state automata (so padding never changes the language).
    """
    d = group_size(instance.k, k)
    members = list(instance.dfas)
    while len(members) < d * k:
        members.append(universal_dfa(instance.alphabet,
                                     name=f"pad{len(members)}"))
    grouped = []
    for g in range(k):
        chunk = members[g * d:(g + 1) * d]
        if len(chunk) == 1:
            grouped.append(chunk[0])
        else:
            grouped.append(product(IntersectionInstance(chunk), cap=cap,
                                   name=f"grp{g}"))
    return IntersectionInstance(grouped)
