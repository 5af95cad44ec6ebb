"""The convolution algebra of G-equivariant vector bundles on Y x Y.

For a finite G-set Y, an equivariant bundle on Y x Y is determined by a
representation of the stabilizer of one base pair in each diagonal orbit,
so K_G(Y x Y) has the basis (orbit, irreducible of its stabilizer).  The
product is fibrewise,

    (V * W)(a, c) = sum_b V(a, b) (x) W(b, c),

with the stabilizer of (a, c) permuting the summands.  Characters are
moved between stabilizers with the transporter chosen for each pair.

Structure constants are computed through a ring map Z[zeta_e] -> F_P
(P a prime = 1 mod exp(G)): every multiplicity is a natural number below
the fibre dimension, so its residue determines it.  :func:`convolve`
recomputes products with exact cyclotomic arithmetic as a second route.
"""

from __future__ import annotations

import random
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import flint

from .chartab import CharacterTable, _is_prime, character_table, decompose_class_function, primitive_root
from .cyclotomic import Cyclotomic
from .errors import ConsistencyError, ValidationError
from .groups import Group, Perm, Subgroup
from .mdecomp import ClassFn
from .yprime import GSet

MOD_FLOOR = 1 << 31


def _modulus(exponent: int) -> int:
    p = MOD_FLOOR + 1
    p += (1 - p) % exponent
    while not _is_prime(p):
        p += exponent
    return p


@dataclass
class OrbitChart:
    """A diagonal orbit on Y x Y with its base pair and transporters."""

    pairs: tuple[tuple[int, int], ...]
    base: tuple[int, int]
    stabilizer: Subgroup
    transporter: dict  # pair -> g with g.base = pair

    def __len__(self) -> int:
        return len(self.pairs)


def orbit_charts(Y: GSet) -> list[OrbitChart]:
    """Orbits of G on Y x Y ordered by base pair (the minimal pair)."""
    G = Y.group
    n = len(Y)
    seen: set[tuple[int, int]] = set()
    charts = []
    for a in range(n):
        for b in range(n):
            if (a, b) in seen:
                continue
            transporter = {}
            stab = []
            for gi, g in enumerate(G.elements):
                row = Y.action[gi]
                pair = (row[a], row[b])
                if pair not in transporter:
                    transporter[pair] = g
                if pair == (a, b):
                    stab.append(g)
            seen.update(transporter)
            charts.append(
                OrbitChart(tuple(sorted(transporter)), (a, b), Subgroup(G, stab), transporter)
            )
    return charts


@dataclass(frozen=True)
class EqBundle:
    """Per-orbit multiplicities of the stabilizer irreducibles."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for part in self.parts:
            for m in part:
                if not isinstance(m, int) or m < 0:
                    raise ValidationError(f"bundle multiplicities must be natural numbers, got {m!r}")

    def is_zero(self) -> bool:
        return not any(any(p) for p in self.parts)


class ConvAlg:
    """Structure constants of C (x) K_G(Y x Y) on the bundle basis."""

    def __init__(self, Y: GSet, threads: int = 1):
        if len(Y) == 0:
            raise ValidationError("the G-set is empty")
        self.Y = Y
        self.group: Group = Y.group
        self.charts = orbit_charts(Y)
        n = len(Y)
        self.orbit_of: dict[tuple[int, int], int] = {}
        for oi, ch in enumerate(self.charts):
            for pair in ch.pairs:
                self.orbit_of[pair] = oi
        self.tables: list[CharacterTable] = [character_table(ch.stabilizer) for ch in self.charts]
        self.basis: list[tuple[int, int]] = [(oi, i) for oi, T in enumerate(self.tables) for i in range(len(T))]
        self.offset = []
        acc = 0
        for T in self.tables:
            self.offset.append(acc)
            acc += len(T)
        self.dim = acc
        self._setup_modular()
        self.threads = threads
        self.struct: list[list[dict[int, int]]] = self._structure_constants(n)

    # -- modular images of the stabilizer characters ---------------------

    def _setup_modular(self) -> None:
        e = self.group.exponent
        self.P = _modulus(e)
        root = primitive_root(self.P)
        omega_e = pow(root, (self.P - 1) // e, self.P)
        self.mod_rows = []
        for T in self.tables:
            w = pow(omega_e, e // T.conductor, self.P)
            self.mod_rows.append([[v.embed(T.conductor).reduce_mod(self.P, w) for v in row] for row in T.rows])

    def _output_orbit(self, o3: int):
        """Contributions to orbit o3, keyed by the (o1, o2) orbit pair."""
        Y = self.Y
        G = self.group
        ch = self.charts[o3]
        a, c = ch.base
        T3 = ch.stabilizer
        entries: dict[tuple[int, int], list[tuple[int, int, int]]] = defaultdict(list)
        for u, cls in enumerate(T3.conjugacy_classes):
            t = cls.representative
            row = Y.action[G.index[t]]
            for b in range(len(Y)):
                if row[b] != b:
                    continue
                o1 = self.orbit_of[(a, b)]
                o2 = self.orbit_of[(b, c)]
                g1 = self.charts[o1].transporter[(a, b)]
                g2 = self.charts[o2].transporter[(b, c)]
                c1 = self.charts[o1].stabilizer.class_of[g1.inverse() * t * g1]
                c2 = self.charts[o2].stabilizer.class_of[g2.inverse() * t * g2]
                entries[(o1, o2)].append((u, c1, c2))
        return entries

    def _products_into(self, o3: int):
        P = self.P
        T3 = self.charts[o3].stabilizer
        classes = T3.conjugacy_classes
        sizes = [cl.size for cl in classes]
        inv_class = [T3.class_of[cl.representative.inverse()] for cl in classes]
        chi3 = self.mod_rows[o3]
        deg3 = self.tables[o3].degrees
        inv_order = pow(T3.order, -1, P)
        out = []
        for (o1, o2), ents in sorted(self._output_orbit(o3).items()):
            rows1, rows2 = self.mod_rows[o1], self.mod_rows[o2]
            deg1, deg2 = self.tables[o1].degrees, self.tables[o2].degrees
            n_id = sum(1 for u, _, _ in ents if u == 0)
            for i, r1 in enumerate(rows1):
                for j, r2 in enumerate(rows2):
                    F = [0] * len(classes)
                    for u, c1, c2 in ents:
                        F[u] += r1[c1] * r2[c2]
                    dim_fibre = n_id * deg1[i] * deg2[j]
                    mults = {}
                    check = 0
                    for k, r3 in enumerate(chi3):
                        m = sum(sizes[u] * F[u] * r3[inv_class[u]] for u in range(len(classes))) * inv_order % P
                        if m > dim_fibre:
                            raise ConsistencyError(f"multiplicity residue {m} exceeds fibre dimension {dim_fibre}")
                        if m:
                            mults[k] = m
                            check += m * deg3[k]
                    if check != dim_fibre:
                        raise ConsistencyError("product does not decompose into stabilizer irreducibles")
                    if mults:
                        out.append((self.offset[o1] + i, self.offset[o2] + j, {self.offset[o3] + k: m for k, m in mults.items()}))
        return out

    def _structure_constants(self, n: int) -> list[list[dict[int, int]]]:
        struct: list[list[dict[int, int]]] = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        orbits = range(len(self.charts))
        if self.threads > 1:
            with ThreadPoolExecutor(self.threads) as pool:
                results = list(pool.map(self._products_into, orbits))
        else:
            results = [self._products_into(o3) for o3 in orbits]
        for res in results:  # assembled in orbit order regardless of threads
            for x, y, contrib in res:
                struct[x][y].update(contrib)
        return struct

    # -- algebra operations ----------------------------------------------

    def basis_vector(self, x: int) -> list:
        v = [0] * self.dim
        v[x] = 1
        return v

    def mul(self, u: Sequence, v: Sequence) -> list:
        out = [0] * self.dim
        nz_v = [(y, b) for y, b in enumerate(v) if b]
        for x, a in enumerate(u):
            if not a:
                continue
            row = self.struct[x]
            for y, b in nz_v:
                for z, c in row[y].items():
                    out[z] += a * b * c
        return out

    def basis_mul(self, x: int, y: int) -> dict[int, int]:
        return self.struct[x][y]

    @cached_property
    def unit(self) -> list[int]:
        v = [0] * self.dim
        for oi, ch in enumerate(self.charts):
            if ch.base[0] == ch.base[1]:
                v[self.offset[oi]] = 1  # trivial character is row 0
        return v

    def to_bundle(self, v: Sequence[int]) -> EqBundle:
        return EqBundle(tuple(tuple(int(x) for x in v[self.offset[oi]:self.offset[oi] + len(T)]) for oi, T in enumerate(self.tables)))

    def from_bundle(self, V: EqBundle) -> list[int]:
        return [m for part in V.parts for m in part]

    @cached_property
    def swap(self) -> list[int]:
        """Basis involution: swap the factors and take duals."""
        perm = [0] * self.dim
        for o2, ch2 in enumerate(self.charts):
            p, q = ch2.base
            o1 = self.orbit_of[(q, p)]
            g = self.charts[o1].transporter[(q, p)]
            gi = g.inverse()
            T1, T2 = self.tables[o1], self.tables[o2]
            reps2 = [cl.representative for cl in ch2.stabilizer.conjugacy_classes]
            for i in range(len(T1)):
                image = tuple(T1.value(i, gi * t * g).conjugate() for t in reps2)
                k = _find_row(T2, image)
                perm[self.offset[o1] + i] = self.offset[o2] + k
        if sorted(perm) != list(range(self.dim)):
            raise ConsistencyError("dual swap is not a bijection on the basis")
        return perm

    def dual_swap_vector(self, v: Sequence) -> list:
        out = [0] * self.dim
        for x, a in enumerate(v):
            out[self.swap[x]] = a
        return out

    def dual_swap(self, V: EqBundle) -> EqBundle:
        return self.to_bundle(self.dual_swap_vector(self.from_bundle(V)))

    # -- structural diagnostics ------------------------------------------

    def check_unit(self) -> None:
        e = self.unit
        for x in range(self.dim):
            bx = self.basis_vector(x)
            if self.mul(e, bx) != bx or self.mul(bx, e) != bx:
                raise ConsistencyError(f"unit law fails on basis element {x}")

    def check_associativity(self, triples: int = 200, seed: int = 0) -> int:
        rng = random.Random(seed)
        for _ in range(triples):
            a, b, c = (rng.randrange(self.dim) for _ in range(3))
            ea, eb, ec = self.basis_vector(a), self.basis_vector(b), self.basis_vector(c)
            if self.mul(self.mul(ea, eb), ec) != self.mul(ea, self.mul(eb, ec)):
                raise ConsistencyError(f"associativity fails on ({a}, {b}, {c})")
        return triples

    def check_anti_automorphism(self) -> None:
        s = self.swap
        if any(s[s[x]] != x for x in range(self.dim)):
            raise ConsistencyError("dual swap is not an involution")
        for x in range(self.dim):
            for y in range(self.dim):
                lhs = {s[z]: c for z, c in self.struct[x][y].items()}
                if lhs != self.struct[s[y]][s[x]]:
                    raise ConsistencyError(f"dual swap is not an anti-automorphism at ({x}, {y})")

    def center_dimension(self) -> int:
        """dim of {z : z x = x z for every basis x}, by exact rank."""
        D = self.dim
        # rows indexed (x, k), columns a: coefficient of e_k in [e_a, e_x]
        # rank(E) == rank(E^T E) over Q, which keeps the matrix D x D
        gram = [[0] * D for _ in range(D)]
        for x in range(D):
            cols: dict[int, dict[int, int]] = defaultdict(dict)
            for a in range(D):
                diff = dict(self.struct[a][x])
                for k, c in self.struct[x][a].items():
                    diff[k] = diff.get(k, 0) - c
                for k, c in diff.items():
                    if c:
                        cols[k][a] = c
            for k, row in cols.items():
                items = list(row.items())
                for a, ca in items:
                    ga = gram[a]
                    for b, cb in items:
                        ga[b] += ca * cb
        return D - flint.fmpz_mat(gram).rank()

    def trace_form(self) -> list[list[int]]:
        """Gram matrix Tr(L_{x y}) of the regular representation."""
        D = self.dim
        tr = [sum(self.struct[x][y].get(y, 0) for y in range(D)) for x in range(D)]
        return [[sum(c * tr[z] for z, c in self.struct[x][y].items()) for y in range(D)] for x in range(D)]

    def trace_form_nondegenerate(self) -> bool:
        return flint.fmpz_mat(self.trace_form()).rank() == self.dim


def _find_row(T: CharacterTable, values: Sequence[Cyclotomic]) -> int:
    for k, row in enumerate(T.rows):
        if all(a == b for a, b in zip(row, values)):
            return k
    raise ConsistencyError("transported character is not irreducible")


def algebra(Y: GSet, threads: int = 1) -> ConvAlg:
    return ConvAlg(Y, threads)


def unit_bundle(A: ConvAlg) -> EqBundle:
    return A.to_bundle(A.unit)


def center_dimension(A: ConvAlg) -> int:
    return A.center_dimension()


def trace_form_nondegenerate(A: ConvAlg) -> bool:
    return A.trace_form_nondegenerate()


def convolve(V: EqBundle, W: EqBundle, A: ConvAlg) -> EqBundle:
    """Fibrewise product computed with exact cyclotomic characters.

    Independent of the modular structure constants held by ``A``; only the
    orbit charts and character tables are shared.
    """
    Y, G = A.Y, A.group
    zero = Cyclotomic(1, [0])

    def char_value(bundle: EqBundle, oi: int, x: Perm):
        T = A.tables[oi]
        acc = zero
        for i, m in enumerate(bundle.parts[oi]):
            if m:
                acc = acc + T.value(i, x) * m
        return acc

    parts = []
    for o3, ch in enumerate(A.charts):
        a, c = ch.base
        T3 = ch.stabilizer
        values = []
        for cls in T3.conjugacy_classes:
            t = cls.representative
            row = Y.action[G.index[t]]
            acc = zero
            for b in range(len(Y)):
                if row[b] != b:
                    continue
                o1, o2 = A.orbit_of[(a, b)], A.orbit_of[(b, c)]
                if not any(V.parts[o1]) or not any(W.parts[o2]):
                    continue
                g1 = A.charts[o1].transporter[(a, b)]
                g2 = A.charts[o2].transporter[(b, c)]
                acc = acc + char_value(V, o1, g1.inverse() * t * g1) * char_value(W, o2, g2.inverse() * t * g2)
            values.append(acc)
        mult = decompose_class_function(values, A.tables[o3])
        for m in mult:
            if not isinstance(m, int) or m < 0:
                raise ConsistencyError(f"convolution multiplicity {m!r} is not natural")
        parts.append(tuple(mult))
    return EqBundle(tuple(parts))


def _centralizer_orbits_on_fixed_pairs(Y: GSet, s: Perm, Z: Group) -> int:
    G = Y.group
    fixed = [y for y in range(len(Y)) if Y.action[G.index[s]][y] == y]
    rows = [Y.action[G.index[z]] for z in Z.elements]
    seen = set()
    count = 0
    for a in fixed:
        for b in fixed:
            if (a, b) not in seen:
                count += 1
                seen.update((r[a], r[b]) for r in rows)
    return count


def verify_dimension_identity(A: ConvAlg, phi: ClassFn) -> dict:
    """Compare dim A, sum phi^2, center dimension and #{phi != 0}.

    The fourth check refines the first class by class: sum over rho of
    phi(s, rho)^2 must equal the number of Z(s)-orbits on Y^s x Y^s.
    """
    M = phi.mset
    sum_sq = sum(Fraction(v) ** 2 for v in phi.values)
    nonzero = sum(1 for v in phi.values if v)
    center = A.center_dimension()
    nondeg = A.trace_form_nondegenerate()
    per_class = []
    for ci, cls in enumerate(M.classes):
        want = sum(Fraction(v) ** 2 for p, v in zip(M.points, phi.values) if p.class_index == ci)
        got = _centralizer_orbits_on_fixed_pairs(A.Y, cls.representative, M.centralizers[ci])
        per_class.append(want == got)
    checks = {
        "dim_equals_sum_phi_squared": A.dim == sum_sq,
        "center_equals_nonzero_phi": center == nonzero,
        "trace_form_nondegenerate": nondeg,
        "per_class_orbit_counts": all(per_class),
    }
    return {
        "dim": A.dim,
        "sum_phi_squared": int(sum_sq) if sum_sq.denominator == 1 else str(sum_sq),
        "center_dim": center,
        "nonzero_phi": nonzero,
        "checks": checks,
        "ok": all(checks.values()),
    }
