"""Ordinary character tables by Dixon's method.

Central characters are found as common eigenvectors of the class
multiplication matrices over a prime field F_p with p = 1 mod exp(G) and
p > 2 sqrt|G|.  Each character value is then lifted to an exact element of
Q(zeta_e) from its eigenvalue multiplicities, which are small integers and
therefore determined by their residues mod p.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence, Union

from .cyclotomic import Cyclotomic, as_cyclotomic
from .errors import ConsistencyError, ValidationError
from .groups import Group, Perm

Value = Union[int, Fraction, Cyclotomic]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def dixon_prime(order: int, exponent: int) -> int:
    p = 2 * math.isqrt(order) + 1
    p += (1 - p) % exponent  # smallest p' >= p with p' = 1 mod exponent
    while not _is_prime(p):
        p += exponent
    return p


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


# -- linear algebra mod p ------------------------------------------------------


def _rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _nullspace_mod(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {x : mat x = 0}."""
    n = len(mat[0])
    red, pivots = _rref_mod(mat, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def _charpoly_mod(mat: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial (lowest degree first) via Hessenberg form."""
    n = len(mat)
    a = [row[:] for row in mat]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if a[i][m - 1] % p), None)
        if piv is None:
            continue
        if piv != m:
            a[m], a[piv] = a[piv], a[m]
            for row in a:
                row[m], row[piv] = row[piv], row[m]
        inv = pow(a[m][m - 1], -1, p)
        for i in range(m + 1, n):
            f = a[i][m - 1] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[m])]
                for row in a:
                    row[m] = (row[m] + f * row[i]) % p
    # recurrence for the characteristic polynomials of leading blocks
    polys = [[1]]
    for k in range(n):
        nxt = [0] + polys[k]
        for i in range(len(polys[k])):
            nxt[i] = (nxt[i] - a[k][k] * polys[k][i]) % p
        t = 1
        for i in range(k - 1, -1, -1):
            t = t * a[i + 1][i] % p
            if not t:
                break
            coef = t * a[i][k] % p
            for j, c in enumerate(polys[i]):
                nxt[j] = (nxt[j] - coef * c) % p
        polys.append(nxt)
    return polys[n]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


# -- the table -----------------------------------------------------------------


class CharacterTable:
    """Irreducible characters of ``group`` with exact cyclotomic values.

    ``rows[i][j]`` is the value of the i-th irreducible on class j of
    ``group.conjugacy_classes``.  Rows are sorted by degree, the trivial
    character first, then lexicographically on canonical coefficients.
    """

    def __init__(self, group: Group, rows: Sequence[Sequence[Cyclotomic]], conductor: int):
        self.group = group
        self.classes = group.conjugacy_classes
        self.conductor = conductor
        self.rows: tuple[tuple[Cyclotomic, ...], ...] = tuple(tuple(r) for r in rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"<CharacterTable of {self.group!r}: degrees {self.degrees}>"

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(r[0].to_rational()) for r in self.rows)

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    def value(self, i: int, g: Perm) -> Cyclotomic:
        return self.rows[i][self.group.class_of[g]]

    def check_orthogonality(self) -> None:
        """Exact row and column orthogonality; raises ConsistencyError."""
        n = self.group.order
        k = len(self.classes)
        if len(self.rows) != k:
            raise ConsistencyError(f"{len(self.rows)} characters for {k} classes")
        conj = [[v.conjugate() for v in row] for row in self.rows]
        for i in range(k):
            for j in range(i, k):
                s = sum((self.rows[i][c] * conj[j][c] * self.class_sizes[c] for c in range(k)), Cyclotomic(1, [0]))
                if s != (n if i == j else 0):
                    raise ConsistencyError(f"rows {i},{j} not orthogonal: {s!r}")
        for a in range(k):
            for b in range(a, k):
                s = sum((self.rows[i][a] * conj[i][b] for i in range(k)), Cyclotomic(1, [0]))
                expected = n // self.class_sizes[a] if a == b else 0
                if s != expected:
                    raise ConsistencyError(f"columns {a},{b} not orthogonal: {s!r}")
        if sum(d * d for d in self.degrees) != n or any(n % d for d in self.degrees):
            raise ConsistencyError("degree identities fail")

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "classes": [c.representative.cycle_string() for c in self.classes],
            "class_sizes": list(self.class_sizes),
            "rows": [[v.embed(self.conductor).to_json() for v in row] for row in self.rows],
        }


def _class_data(G: Group):
    classes = G.conjugacy_classes
    class_of = G.class_of
    reps = [c.representative for c in classes]
    inverse_class = [class_of[r.inverse()] for r in reps]
    return classes, class_of, reps, inverse_class


def _class_matrices(G: Group) -> list[list[list[int]]]:
    """M[i][j][k] = #{x in C_i : x^-1 z_k in C_j} for the representative z_k."""
    classes, class_of, reps, _ = _class_data(G)
    k = len(classes)
    M = [[[0] * k for _ in range(k)] for _ in range(k)]
    inverses = {g: g.inverse() for g in G.elements}
    for t, z in enumerate(reps):
        for x in G.elements:
            M[class_of[x]][class_of[inverses[x] * z]][t] += 1
    return M


def _common_eigenvectors(M: list[list[list[int]]], p: int) -> list[list[int]]:
    k = len(M)
    spaces = [[[int(i == j) for j in range(k)] for i in range(k)]]
    for i in range(1, k):
        if all(len(s) == 1 for s in spaces):
            break
        mat = M[i]
        refined = []
        for basis in spaces:
            if len(basis) == 1:
                refined.append(basis)
                continue
            basis, pivots = _rref_mod(basis, p)
            r = len(basis)
            images = [[sum(mat[a][b] * v[b] for b in range(k)) % p for a in range(k)] for v in basis]
            # restriction in the pivot coordinates: images[a] = sum_b R[b][a] basis[b]
            R = [[images[a][pivots[b]] for a in range(r)] for b in range(r)]
            poly = _charpoly_mod(R, p)
            roots = _roots_mod(poly, p)
            covered = 0
            for lam in roots:
                shifted = [[(R[b][a] - (lam if a == b else 0)) % p for a in range(r)] for b in range(r)]
                null = _nullspace_mod(shifted, p)
                if null:
                    sub = [[sum(c * basis[b][col] for b, c in enumerate(coords)) % p for col in range(k)] for coords in null]
                    refined.append(sub)
                    covered += len(sub)
            if covered != r:
                raise ConsistencyError("class matrix does not split over F_p")
        spaces = refined
    if any(len(s) != 1 for s in spaces):
        raise ConsistencyError("class matrices failed to separate the irreducibles")
    return [s[0] for s in spaces]


def _sort_key(row: Sequence[Cyclotomic], conductor: int):
    flat = tuple(c for v in row for c in v.embed(conductor).coeffs)
    trivial = all(v == 1 for v in row)
    return (int(row[0].to_rational()), not trivial, flat)


_TABLES: dict[tuple, CharacterTable] = {}


def character_table(G: Group) -> CharacterTable:
    """Exact character table; cached on the element set of ``G``."""
    cached = _TABLES.get(G.elements)
    if cached is not None:
        return cached
    classes, class_of, reps, inverse_class = _class_data(G)
    k = len(classes)
    n = G.order
    e = G.exponent
    p = dixon_prime(n, e)
    root = primitive_root(p)
    omega = pow(root, (p - 1) // e, p)
    sizes = [c.size for c in classes]
    power_class = [[class_of[r**l] for l in range(r.order())] for r in reps]

    if k == 1:
        vectors = [[1]]
    else:
        vectors = _common_eigenvectors(_class_matrices(G), p)

    rows = []
    for w in vectors:
        w0inv = pow(w[0], -1, p)
        w = [x * w0inv % p for x in w]
        s = sum(w[j] * w[inverse_class[j]] * pow(sizes[j], -1, p) for j in range(k)) % p
        d2 = n * pow(s, -1, p) % p
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % p == d2), None)
        if deg is None:
            raise ConsistencyError("no admissible degree for a central character")
        chi = [w[j] * deg * pow(sizes[j], -1, p) % p for j in range(k)]
        row = []
        for j, r in enumerate(reps):
            o = r.order()
            wo = pow(omega, e // o, p)
            inv_o = pow(o, -1, p)
            coeffs = [0] * e
            total = 0
            for kk in range(o):
                m = sum(chi[power_class[j][l]] * pow(wo, (-kk * l) % o, p) for l in range(o)) * inv_o % p
                if m > deg:
                    raise ConsistencyError(f"eigenvalue multiplicity {m} exceeds degree {deg}")
                coeffs[kk * (e // o)] += m
                total += m
            if total != deg:
                raise ConsistencyError("eigenvalue multiplicities do not sum to the degree")
            row.append(Cyclotomic(e, coeffs))
        rows.append(row)
    rows.sort(key=lambda r: _sort_key(r, e))
    table = CharacterTable(G, rows, e)
    if sum(d * d for d in table.degrees) != n:
        raise ConsistencyError("sum of squared degrees differs from the group order")
    _TABLES[G.elements] = table
    return table


# -- class functions -----------------------------------------------------------


def _class_values(f, G: Group) -> list:
    """Accept a per-class sequence or an element -> value mapping."""
    classes = G.conjugacy_classes
    if isinstance(f, Mapping):
        vals = []
        for c in classes:
            v = f[c.representative]
            for g in c.elements:
                if f[g] != v:
                    raise ValidationError(f"not a class function: values differ on the class of {c.representative!r}")
            vals.append(v)
        return vals
    vals = list(f)
    if len(vals) != len(classes):
        raise ValidationError(f"class function has {len(vals)} values, group has {len(classes)} classes")
    return vals


def _simplify(v: Cyclotomic):
    return v.to_rational() if v.is_rational() else v


def inner_product(a, b, G: Group) -> Value:
    """(1/|G|) sum_g a(g) conj(b(g)), exact."""
    av = _class_values(a, G)
    bv = _class_values(b, G)
    acc = Cyclotomic(1, [0])
    for c, x, y in zip(G.conjugacy_classes, av, bv):
        acc = acc + as_cyclotomic(x) * as_cyclotomic(y).conjugate() * c.size
    return _simplify(acc / G.order)


def decompose_class_function(f, table: CharacterTable) -> list:
    """Multiplicities <f, chi_i>; the recombination is checked exactly."""
    G = table.group
    vals = _class_values(f, G)
    mult = [inner_product(vals, row, G) for row in table.rows]
    for j in range(len(vals)):
        recon = sum((as_cyclotomic(m) * table.rows[i][j] for i, m in enumerate(mult)), Cyclotomic(1, [0]))
        if recon != as_cyclotomic(vals[j]):
            raise ValidationError("class function is not in the span of the irreducible characters")
    return mult


def permutation_character(G: Group, action) -> list[int]:
    """Fixed-point counts per class for ``action(g) -> iterable of bools``."""
    return [sum(1 for fixed in action(c.representative) if fixed) for c in G.conjugacy_classes]
