"""The inductively defined family of F_2-subspaces attached to an ordered basis.

Vectors of F_2^d are bitmasks; bit i is the coefficient of basis vector
i+1.  For H with ordered basis x_1..x_d the family is built from the
families of the hyperplanes H_j (drop x_j), each member extended by x_j,
together with the families of the hyperplanes H'_j obtained by merging
x_{j-1}, x_j into x_{j-1}+x_j.

Two readings of the recursion are supported.  ``strict-literal`` follows
it word for word, which leaves the zero subspace out for every d >= 1.
``zero-inclusive`` also admits the zero subspace at every level; this
is the reading under which d <= 2 gives all subspaces and d = 3 misses
exactly span(x1+x3) and span(x1+x2, x2+x3).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import SizeLimitError, ValidationError

MODES = ("zero-inclusive", "strict-literal")
MAX_DIM = 6


@dataclass(frozen=True, order=True)
class Subspace2:
    """A subspace of F_2^d in reduced row-echelon form.

    Each row's pivot is its lowest set bit; rows are sorted by pivot and
    every pivot bit is cleared from the other rows.
    """

    ambient_dim: int
    rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def sort_key(self):
        return (self.dim, self.rows)

    def elements(self) -> frozenset[int]:
        out = {0}
        for r in self.rows:
            out |= {x ^ r for x in out}
        return frozenset(out)

    def __contains__(self, v: int) -> bool:
        return reduce_vector(v, self.rows) == 0

    def render(self) -> list[str]:
        return [bits_to_string(r, self.ambient_dim) for r in self.rows]

    def __str__(self) -> str:
        return "<" + ",".join(self.render()) + ">"


def bits_to_string(v: int, d: int) -> str:
    return "".join("1" if v >> i & 1 else "0" for i in range(d))


def string_to_bits(s: str) -> int:
    if set(s) - {"0", "1"}:
        raise ValidationError(f"bad bit string {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def _low(v: int) -> int:
    return (v & -v).bit_length() - 1


def reduce_vector(v: int, rows: Sequence[int]) -> int:
    for r in rows:
        if v >> _low(r) & 1:
            v ^= r
    return v


def span(vectors: Iterable[int], d: int) -> Subspace2:
    rows: list[int] = []
    for v in vectors:
        v = reduce_vector(v, rows)
        if not v:
            continue
        p = _low(v)
        rows = [r ^ v if r >> p & 1 else r for r in rows]
        rows.append(v)
    return Subspace2(d, tuple(sorted(rows, key=_low)))


def zero_subspace(d: int) -> Subspace2:
    return Subspace2(d, ())


@dataclass(frozen=True)
class OrderedBasis:
    ambient_dim: int
    vectors: tuple[int, ...]

    def __post_init__(self):
        if len(self.vectors) > self.ambient_dim:
            raise ValidationError("more basis vectors than the ambient dimension")
        if span(self.vectors, self.ambient_dim).dim != len(self.vectors):
            raise ValidationError("basis vectors are linearly dependent")

    @classmethod
    def standard(cls, d: int) -> "OrderedBasis":
        return cls(d, tuple(1 << i for i in range(d)))


def _check(basis: OrderedBasis, mode: str) -> None:
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}; expected one of {MODES}")
    if len(basis.vectors) > MAX_DIM:
        raise SizeLimitError(f"basis length {len(basis.vectors)} exceeds cap {MAX_DIM}")


def _children(vectors: tuple[int, ...]):
    """Yield ("extend", x_j, H_j) and ("merge", None, H'_j) recursion branches."""
    d = len(vectors)
    for j in range(d):
        yield "extend", vectors[j], vectors[:j] + vectors[j + 1 :]
    for j in range(1, d):
        merged = vectors[:j - 1] + (vectors[j - 1] ^ vectors[j],) + vectors[j + 1 :]
        yield "merge", None, merged


def _naive(vectors: tuple[int, ...], d: int, with_zero: bool, rng: Optional[random.Random]) -> set[Subspace2]:
    if not vectors:
        return {zero_subspace(d)}
    out = {zero_subspace(d)} if with_zero else set()
    branches = list(_children(vectors))
    if rng is not None:
        rng.shuffle(branches)
    for how, x, sub in branches:
        for L in _naive(sub, d, with_zero, rng):
            out.add(span(L.rows + (x,), d) if how == "extend" else L)
    return out


@lru_cache(maxsize=None)
def _memo(vectors: tuple[int, ...], d: int, with_zero: bool) -> frozenset[Subspace2]:
    if not vectors:
        return frozenset({zero_subspace(d)})
    out = {zero_subspace(d)} if with_zero else set()
    for how, x, sub in _children(vectors):
        fam = _memo(sub, d, with_zero)
        if how == "extend":
            out.update(span(L.rows + (x,), d) for L in fam)
        else:
            out.update(fam)
    return frozenset(out)


def cf_enumerate(
    basis: OrderedBasis,
    mode: str = "zero-inclusive",
    method: str = "memo",
    seed: Optional[int] = None,
) -> list[Subspace2]:
    """Members of the family for ``basis``, sorted by (dim, rows).

    ``method`` selects the memoised or the plain recursive code path;
    ``seed`` shuffles the branch order of the plain path.
    """
    _check(basis, mode)
    with_zero = mode == "zero-inclusive"
    if method == "memo":
        fam = _memo(basis.vectors, basis.ambient_dim, with_zero)
    elif method == "naive":
        rng = random.Random(seed) if seed is not None else None
        fam = _naive(basis.vectors, basis.ambient_dim, with_zero, rng)
    else:
        raise ValidationError(f"unknown method {method!r}")
    return sorted(fam, key=Subspace2.sort_key)


def all_subspaces(d: int) -> list[Subspace2]:
    """Every subspace of F_2^d, generated directly as echelon forms."""
    if not 0 <= d <= MAX_DIM:
        raise SizeLimitError(f"dimension must be in [0, {MAX_DIM}]")
    out = []
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            # free positions: bits above a row's pivot that are not pivots
            slots = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
            for bits in itertools.product((0, 1), repeat=len(slots)):
                rows = [1 << p for p in pivots]
                for (r, c), b in zip(slots, bits):
                    if b:
                        rows[r] |= 1 << c
                out.append(Subspace2(d, tuple(rows)))
    return sorted(out, key=Subspace2.sort_key)


def gaussian_binomial_total(d: int) -> int:
    total = 0
    for k in range(d + 1):
        num = den = 1
        for i in range(k):
            num *= 2 ** (d - i) - 1
            den *= 2 ** (i + 1) - 1
        total += num // den
    return total


def cf_membership_report(basis: OrderedBasis, mode: str = "zero-inclusive"):
    """(included, excluded) partition of all subspaces of H."""
    if span(basis.vectors, basis.ambient_dim).dim != basis.ambient_dim:
        raise ValidationError("membership report needs a basis of the whole ambient space")
    included = cf_enumerate(basis, mode)
    inc = set(included)
    excluded = [S for S in all_subspaces(basis.ambient_dim) if S not in inc]
    return included, excluded


def coordinate_subspace(indices: Iterable[int], basis: OrderedBasis) -> Subspace2:
    return span((basis.vectors[i] for i in indices), basis.ambient_dim)
