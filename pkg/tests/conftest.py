"""Shared independent oracles.

These deliberately avoid the package's own algorithms: containment is a
plain scan over all index subsets and class membership filters all n!
permutations.
"""

import itertools

import pytest


def naive_contains(pattern, perm):
    k = len(pattern)
    want = sorted(range(k), key=lambda i: pattern[i])
    for idx in itertools.combinations(range(len(perm)), k):
        sub = [perm[i] for i in idx]
        if sorted(range(k), key=lambda i: sub[i]) == want:
            return True
    return False


def naive_class(patterns, n):
    return [
        p for p in itertools.permutations(range(1, n + 1))
        if not any(naive_contains(b, p) for b in patterns)
    ]


def naive_juxt_member(left, right, perm):
    return any(
        not any(naive_contains(b, perm[:k]) for b in left)
        and not any(naive_contains(b, perm[k:]) for b in right)
        for k in range(len(perm) + 1)
    )


CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]

# Published terms for lengths 1..12.
KNOWN_A = [1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900, 424068, 1876143]
KNOWN_B = [1, 2, 6, 23, 98, 434, 1949, 8803, 39888, 181201, 825201, 3767757]
KNOWN_C = [1, 2, 6, 22, 88, 367, 1568, 6810, 29943, 132958, 595227, 2683373]
KNOWN_TERMS = {"A": KNOWN_A, "B": KNOWN_B, "C": KNOWN_C}


@pytest.fixture
def oracle():
    class Oracle:
        contains = staticmethod(naive_contains)
        klass = staticmethod(naive_class)
        juxt_member = staticmethod(naive_juxt_member)
    return Oracle
