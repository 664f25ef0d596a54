"""Independent brute-force counts pinned by the C++ tests.

Plain Python sets, no shared code with the library. Run: python3 brute_force.py
"""
from itertools import combinations, permutations
from math import gcd


def subsets(n):
    for m in range(1, 1 << n):
        yield [i for i in range(n) if m >> i & 1]


def cyclic_counts(n, u=1, restricted=False):
    """(pairs, critical, violations) over all nonempty pairs of Z/n."""
    S = list(subsets(n))
    p = min(q for q in range(2, n + 1) if n % q == 0)
    delta = 0
    if restricted:
        order, x = 1, u % n
        while x != 1:
            x, order = x * u % n, order + 1
        delta = 1 if order % 2 == 0 else 0
    pairs = crit = bad = 0
    for A in S:
        for B in S:
            pairs += 1
            if restricted:
                s = len({(a + u * b) % n for a in A for b in B if a != b})
                target, bound = len(A) + len(B) - 3, min(p - delta, len(A) + len(B) - 3)
            else:
                s = len({(a + b) % n for a in A for b in B})
                target, bound = len(A) + len(B) - 1, min(p, len(A) + len(B) - 1)
            crit += s == target
            bad += bound >= 0 and s < bound
    return pairs, crit, bad


def s3_table():
    perms = sorted(permutations(range(3)))
    mul = lambda f, g: tuple(f[g[i]] for i in range(3))
    idx = {q: i for i, q in enumerate(perms)}
    return [[idx[mul(f, g)] for g in perms] for f in perms]


def table_cd(t):
    n = len(t)
    S = list(subsets(n))
    crit = bad = 0
    for A in S:
        for B in S:
            s = len({t[a][b] for a in A for b in B})
            crit += s == len(A) + len(B) - 1
            bad += s < min(2, len(A) + len(B) - 1)
    return len(S) ** 2, crit, bad


def thm51(n, k, l):
    crit = same = 0
    for d in range(1, n):
        for a in range(n):
            A = frozenset((a + s * d) % n for s in range(k))
            for b in range(n):
                B = frozenset((b + t * d) % n for t in range(l))
                if len({(x + y) % n for x in A for y in B if x != y}) == k + l - 3:
                    crit += 1
                    same += A == B
    return crit, same


def example_group():
    m, h = 47, 23

    def op(g1, g2):
        (x, y, z), (x2, y2, z2) = g1, g2
        return ((x + pow(2, z, m) * x2) % m, (y + y2) % m, (z + z2) % h)

    def idx(g):
        return g[0] + 47 * g[1] + 2209 * g[2]

    def elem(i):
        return (i % 47, i // 47 % 47, i // 2209)

    return op, idx, elem


def thm61_slice():
    op, idx, elem = example_group()
    ratios = [1, 47, 2209, 48, 2210, 2256]
    crit = shared = 0
    for q in ratios:
        for i in range(40):
            a = elem(2209 + i)
            A = [a]
            for _ in range(4):
                A.append(op(A[-1], elem(q)))
            for j in range(40):
                b = elem(2209 + j)
                B = [b]
                for _ in range(8):
                    B.append(op(elem(q), B[-1]))
                R = {op(x, y) for x in A for y in B if x != y}
                if len(R) == 11:
                    crit += 1
                    shared += a == b and A[-1] == B[-1]
    return crit, shared


def chowla(m):
    S = list(subsets(m))
    pairs = crit = bad = 0
    for B in S:
        if 0 not in B or any(gcd(b, m) != 1 for b in B if b):
            continue
        for A in S:
            pairs += 1
            s = len({(a + b) % m for a in A for b in B})
            crit += s == len(A) + len(B) - 1
            bad += s < min(m, len(A) + len(B) - 1)
    return pairs, crit, bad


def is_ap(A, p):
    k = len(A)
    return any(frozenset((a + i * d) % p for i in range(k)) == A for a in range(p) for d in range(1, p))


def vosper_cases(p):
    S = [frozenset(x) for x in subsets(p)]
    cases = {}
    for A in S:
        for B in S:
            s = {(a + b) % p for a in A for b in B}
            if len(s) != len(A) + len(B) - 1:
                continue
            if len(A) == 1 or len(B) == 1:
                c = "i"
            elif len(s) == p:
                c = "ii"
            elif len(s) == p - 1 and frozenset(range(p)) - {((set(range(p)) - s).pop() - a) % p for a in A} == B:
                c = "iii"
            else:
                c = "iv" if any(
                    frozenset((a + i * d) % p for i in range(len(A))) == A
                    and any(frozenset((b + i * d) % p for i in range(len(B))) == B for b in range(p))
                    for a in range(p) for d in range(1, p)) else "none"
            cases[c] = cases.get(c, 0) + 1
    return dict(sorted(cases.items()))


def inverse_dh(p, k):
    crit = ap = mismatch = 0
    for A in combinations(range(p), k):
        A = frozenset(A)
        c = len({(x + y) % p for x in A for y in A if x != y}) == 2 * k - 3
        a = is_ap(A, p)
        crit += c
        ap += a
        mismatch += c != a
    return crit, ap, mismatch


def example_self_product():
    op, idx, elem = example_group()
    A = [(2 * k, 0, 1) for k in range(5)]
    return len({op(x, y) for x in A for y in A if x != y})


if __name__ == "__main__":
    for n in (5, 7, 11):
        print("cd", n, cyclic_counts(n))
    print("eh", 11, cyclic_counts(11, 1, True))
    print("eh x3", 7, cyclic_counts(7, 3, True))
    print("s3 table", s3_table())
    print("s3 cd", table_cd(s3_table()))
    for args in ((49, 3, 3), (49, 3, 4), (25, 3, 3), (25, 3, 4)):
        print("thm51", args, thm51(*args))
    print("thm61 slice", thm61_slice())
    print("chowla", 12, chowla(12))
    for p in (5, 7):
        print("vosper", p, vosper_cases(p))
    for p, k in ((13, 5), (17, 6), (11, 5)):
        print("inverse dh", p, k, inverse_dh(p, k))
    print("example A.A", example_self_product())
