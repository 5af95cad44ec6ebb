"""Independent reference computations.

Nothing here imports the library.  Permutations are plain tuples on
0..n-1 composed right to left, subgroups are frozensets of tuples, F2
vectors are bitmasks and subspaces are frozensets of vectors.  The
functions are slow and literal on purpose; ``freeze.py`` runs them once
and stores their output in ``data/frozen.json``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import numpy as np


# -- permutations ----------------------------------------------------------

def compose(p, q):
    return tuple(p[i] for i in q)


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def transposition(n, a, b):
    p = list(range(n))
    p[a], p[b] = b, a
    return tuple(p)


def cycle(n, pts):
    p = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        p[a] = b
    return tuple(p)


def closure(n, gens):
    ident = tuple(range(n))
    seen = {ident}
    todo = [ident]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def symmetric(n):
    return frozenset(itertools.permutations(range(n)))


def cycle_type(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def classes(G):
    left = set(G)
    out = []
    while left:
        g = min(left)
        c = frozenset(compose(compose(h, g), inverse(h)) for h in G)
        left -= c
        out.append(c)
    return out


def centralizer(G, s):
    return frozenset(g for g in G if compose(g, s) == compose(s, g))


def commuting_pairs(G):
    return [(a, b) for a in G for b in G if compose(a, b) == compose(b, a)]


def mset_size(G):
    """|M(G)| = sum over classes of #classes(Z(s)) = #orbits of G on commuting pairs."""
    conj = lambda g, ab: (compose(compose(g, ab[0]), inverse(g)), compose(compose(g, ab[1]), inverse(g)))
    return orbit_count(G, commuting_pairs(G), conj)


# -- symmetric group characters (Murnaghan-Nakayama on beta-sets) ----------

def partitions(n, largest=None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def mn_character(lam, mu):
    """chi^lam at cycle type mu by removing rim hooks from a beta-set."""
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    beta = [lam[i] + (len(lam) - 1 - i) for i in range(len(lam))]
    total = 0
    bset = set(beta)
    for b in beta:
        if b - k >= 0 and b - k not in bset:
            sign = (-1) ** sum(1 for c in beta if b - k < c < b)
            new = sorted((bset - {b}) | {b - k}, reverse=True)
            m = len(new)
            shape = tuple(x - (m - 1 - i) for i, x in enumerate(new))
            shape = tuple(x for x in shape if x > 0)
            total += sign * mn_character(shape, rest)
    return total


def symmetric_table(n):
    """{partition: {cycle type: value}}."""
    types = list(partitions(n))
    return {lam: {mu: mn_character(lam, mu) for mu in types} for lam in types}


# -- F2 subspace families ---------------------------------------------------

def subspace(vectors):
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return frozenset(out)


def family(basis, with_zero):
    """The inductive family for an ordered basis, by the literal recursion."""
    if not basis:
        return {frozenset({0})}
    out = {frozenset({0})} if with_zero else set()
    d = len(basis)
    for j in range(d):
        rest = basis[:j] + basis[j + 1:]
        for L in family(rest, with_zero):
            out.add(frozenset(L | {x ^ basis[j] for x in L}))
    for j in range(1, d):
        merged = basis[:j - 1] + [basis[j - 1] ^ basis[j]] + basis[j + 1:]
        out |= family(merged, with_zero)
    return out


def all_subspaces(d):
    vecs = list(range(1, 1 << d))
    out = {frozenset({0})}
    for k in range(1, d + 1):
        for combo in itertools.combinations(vecs, k):
            out.add(subspace(combo))
    return out


def bits(v, d):
    return "".join(str(v >> i & 1) for i in range(d))


def echelon(S, d):
    """Rows with pivot = lowest set bit, fully reduced, sorted by pivot."""
    rows = []
    for v in sorted(S):
        for r in rows:
            if v & (r & -r):
                v ^= r
        if v:
            p = v & -v
            rows = [r ^ v if r & p else r for r in rows]
            rows.append(v)
    rows.sort(key=lambda r: r & -r)
    return [bits(r, d) for r in rows]


# -- catalogue as prescribed, 0-based points --------------------------------

def catalogue(n, g2=False):
    """Named subgroups of S_n as element sets."""
    t01 = transposition(n, 0, 1)
    S = lambda k: closure(n, [transposition(n, i, i + 1) for i in range(k - 1)])
    if n == 3:
        base = [("1", frozenset({tuple(range(3))})), ("S2", S(2)), ("S3", S(3))]
        return base[1:] if g2 else base
    s2s2 = closure(n, [t01, transposition(n, 2, 3)])
    # commutes with 1<->4, 2<->3, i.e. (0 3)(1 2)
    inv = compose(transposition(n, 0, 3), transposition(n, 1, 2))
    d8 = frozenset(g for g in symmetric(n) if compose(g, inv) == compose(inv, g) and all(g[i] == i for i in range(4, n)))
    if n == 4:
        return [("S2", S(2)), ("S3", S(3)), ("S4", S(4)), ("S2xS2", s2s2), ("D8", d8)]
    s2s3 = closure(n, [t01, transposition(n, 2, 3), transposition(n, 3, 4)])
    return [("S2", S(2)), ("S3", S(3)), ("S4", S(4)), ("S5", S(5)), ("S2xS2", s2s2), ("S2xS3", s2s3), ("D8", d8)]


def conjugate_sets(G, A, B):
    return any(frozenset(compose(compose(g, a), inverse(g)) for a in A) == B for g in G)


# -- cosets, fixed points and orbit counts ----------------------------------

def left_cosets(G, H):
    left = set(G)
    out = []
    while left:
        g = min(left)
        c = frozenset(compose(g, h) for h in H)
        left -= c
        out.append(c)
    return out


def act_on_coset(g, C):
    return frozenset(compose(g, x) for x in C)


def orbit_count(group, points, act):
    points = list(points)
    seen, count = set(), 0
    for p in points:
        if p not in seen:
            count += 1
            seen |= {act(g, p) for g in group}
    return count


def fixed_coset_data(G, Hp, s):
    """(|(G/H')^s|, Z(s)-orbits on it, Z(s)-orbits on its square).

    Against the f-functions these are sum_rho deg(rho) f, f at the trivial
    character, and sum_rho f^2.
    """
    Z = centralizer(G, s)
    fixed = [C for C in left_cosets(G, Hp) if act_on_coset(s, C) == C]
    pairs = [(a, b) for a in fixed for b in fixed]
    return (
        len(fixed),
        orbit_count(Z, fixed, act_on_coset),
        orbit_count(Z, pairs, lambda g, ab: (act_on_coset(g, ab[0]), act_on_coset(g, ab[1]))),
    )


def gset(G, pieces):
    """Points (piece index, coset) for pieces [(H', copies)]."""
    pts = []
    for i, (H, m) in enumerate(pieces):
        for c in range(m):
            pts.extend((i, c, C) for C in left_cosets(G, H))
    return pts


def act_point(g, pt):
    return (pt[0], pt[1], act_on_coset(g, pt[2]))


def pair_orbit_data(G, pts):
    """(orbits on Y x Y, sum over them of the stabilizer class count)."""
    seen, orbits, irreps = set(), 0, 0
    for a in pts:
        for b in pts:
            if (a, b) in seen:
                continue
            orbits += 1
            seen |= {(act_point(g, a), act_point(g, b)) for g in G}
            stab = frozenset(g for g in G if act_point(g, a) == a and act_point(g, b) == b)
            irreps += len(classes(stab))
    return orbits, irreps


def key(p):
    """Image-list key for a permutation, e.g. ``0,2,1``."""
    return ",".join(map(str, p))


def per_class_square_orbits(G, pts):
    """Z(s)-orbits on Y^s x Y^s, keyed by the least element s of each class."""
    out = {}
    for c in sorted(classes(G), key=min):
        s = min(c)
        Z = centralizer(G, s)
        fixed = [p for p in pts if act_point(s, p) == p]
        pairs = [(a, b) for a in fixed for b in fixed]
        out[key(s)] = orbit_count(Z, pairs, lambda g, ab: (act_point(g, ab[0]), act_point(g, ab[1])))
    return out


def fixed_counts(G, pts):
    return {key(min(c)): sum(1 for p in pts if act_point(min(c), p) == p) for c in sorted(classes(G), key=min)}


# -- small algebra oracles ----------------------------------------------------

def s3_rep_ring():
    """Tensor products of the S3 irreducibles (trivial, sign, standard)."""
    return {
        ("trivial", "trivial"): Counter(trivial=1),
        ("sign", "sign"): Counter(trivial=1),
        ("sign", "standard"): Counter(standard=1),
        ("standard", "standard"): Counter(trivial=1, sign=1, standard=1),
    }


def abelian_f(s_in_Hp, chi_trivial_on_Hp):
    """For abelian H: f_{H'}(s, chi) = [s in H'] [chi trivial on H']."""
    return int(s_in_Hp and chi_trivial_on_Hp)


def inner(a, b, sizes, order):
    return Fraction(sum(x * y * n for x, y, n in zip(a, b, sizes)), order)


# -- floating-point character tables (Burnside's eigenvector method) --------

def numeric_table(G, seed=0):
    """Rows of chi on ``classes(G)`` as complex arrays, with class sizes."""
    cls = sorted(classes(G), key=min)  # identity class first
    k = len(cls)
    where = {g: i for i, c in enumerate(cls) for g in c}
    reps = [min(c) for c in cls]
    a = np.zeros((k, k, k))
    for i, ci in enumerate(cls):
        for j, cj in enumerate(cls):
            for x in ci:
                for y in cj:
                    z = compose(x, y)
                    if z == reps[where[z]]:
                        a[i, j, where[z]] += 1
    rng = np.random.default_rng(seed)
    A = sum(r * a[i] for i, r in enumerate(rng.standard_normal(k)))
    _, vecs = np.linalg.eig(A)
    sizes = np.array([len(c) for c in cls])
    rows = []
    for v in vecs.T:
        w = v / v[0]
        deg = np.sqrt(len(G) / np.sum(np.abs(w) ** 2 / sizes))
        rows.append(deg * w / sizes)
    return cls, sizes, rows


def numeric_multiplicity(perm_char, row, sizes, order):
    m = np.sum(sizes * np.asarray(perm_char) * np.conj(row)) / order
    r = int(round(m.real))
    assert abs(m - r) < 1e-6, m
    return r


def f_profile(G, Hp, s):
    """Sorted (deg rho, f_{H'}(s, rho)) pairs for the centralizer of s."""
    Z = centralizer(G, s)
    cls, sizes, rows = numeric_table(Z)
    fixed = [C for C in left_cosets(G, Hp) if act_on_coset(s, C) == C]
    pc = [sum(1 for C in fixed if act_on_coset(min(c), C) == C) for c in cls]
    return sorted((int(round(r[0].real)), numeric_multiplicity(pc, r, sizes, len(Z))) for r in rows)


def phi_profile(G, pts, s):
    """Sorted (deg rho, multiplicity of rho in C[Y^s]) pairs."""
    Z = centralizer(G, s)
    cls, sizes, rows = numeric_table(Z)
    fixed = [p for p in pts if act_point(s, p) == p]
    pc = [sum(1 for p in fixed if act_point(min(c), p) == p) for c in cls]
    return sorted((int(round(r[0].real)), numeric_multiplicity(pc, r, sizes, len(Z))) for r in rows)
