"""Nerve of a finite groupoid and cohomology with mu_N coefficients.

Level p of the nerve holds chains (g_1, ..., g_p) of arrows with
s(g_i) = t(g_(i+1)), enumerated lexicographically by arrow index; level 0
holds the objects. Face i composes the pair at slot i (dropping an end
arrow for i = 0 or p, where on level 1 the faces are source and target);
degeneracy i inserts an identity arrow.

Cochains take values in Z_N written additively. The coboundary is the
alternating face sum, the complex is the unnormalized one, and cohomology
is computed by integer Smith normal form: the mod-N kernel of one
coboundary is an explicit lattice, and the quotient by coboundaries plus
N-multiples is read off a second normal form. The same transforms reduce
any 2-cocycle to a canonical class vector, which is how central extensions
are compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import (
    CapacityError,
    CocycleError,
    DomainError,
    GroupoidAxiomError,
    ShapeError,
    UnsupportedCoefficientsError,
)
from .groupoid import CentralExtension, FiniteGroupoid, axioms_check
from .snf import smith_normal_form

MAX_DEGREE = 3
MAX_CELLS = 1_000_000


@dataclass
class Nerve:
    groupoid: FiniteGroupoid
    p_max: int
    levels: list  # levels[0]: object indices; levels[p]: arrow tuples
    index: list  # per level, cell -> position
    faces: list  # faces[p][i][pos] -> position in level p-1, for 1 <= p <= p_max
    degeneracies: list  # degeneracies[p][i][pos] -> position in level p+1, p < p_max

    def size(self, p: int) -> int:
        return len(self.levels[p])


def nerve(g: FiniteGroupoid, p_max: int) -> Nerve:
    """Tabulate nerve levels 0..p_max with face and degeneracy maps."""
    if not isinstance(p_max, (int, np.integer)) or isinstance(p_max, bool) or p_max < 0:
        raise DomainError(f"p_max must be a non-negative integer, got {p_max!r}")
    if p_max > MAX_DEGREE:
        raise CapacityError(f"nerve degree capped at {MAX_DEGREE}, got {p_max}")
    bad = axioms_check(g)
    if bad:
        raise GroupoidAxiomError("nerve needs a sound groupoid: " + bad[0])

    levels = [list(range(g.n_objects))]
    index = [{o: o for o in range(g.n_objects)}]
    total = g.n_objects
    if p_max >= 1:
        arrows_by_target = {}
        for x in range(g.n_arrows):
            arrows_by_target.setdefault(g.target[x], []).append(x)
        levels.append([(x,) for x in range(g.n_arrows)])
        index.append({(x,): x for x in range(g.n_arrows)})
        total += g.n_arrows
        for p in range(2, p_max + 1):
            prev_by_first = {}
            for cell in levels[p - 1]:
                prev_by_first.setdefault(cell[0], []).append(cell)
            cells = []
            # ascending head, then ascending second arrow, then the previous
            # level's own order keeps the whole level lexicographic
            for head in range(g.n_arrows):
                for nxt in arrows_by_target.get(g.source[head], ()):
                    for rest in prev_by_first.get(nxt, ()):
                        cells.append((head,) + rest)
            total += len(cells)
            if total > MAX_CELLS:
                raise CapacityError(f"nerve exceeds {MAX_CELLS} cells at level {p}")
            levels.append(cells)
            index.append({c: i for i, c in enumerate(cells)})

    faces = [None]
    for p in range(1, p_max + 1):
        maps = []
        for i in range(p + 1):
            table = []
            for cell in levels[p]:
                table.append(index[p - 1][_face(g, cell, i)])
            maps.append(table)
        faces.append(maps)

    degeneracies = []
    for p in range(0, p_max):
        maps = []
        for i in range(p + 1):
            table = []
            for cell in levels[p]:
                table.append(index[p + 1][_degenerate(g, cell, i, p)])
            maps.append(table)
        degeneracies.append(maps)

    return Nerve(
        groupoid=g,
        p_max=int(p_max),
        levels=levels,
        index=index,
        faces=faces,
        degeneracies=degeneracies,
    )


def _face(g: FiniteGroupoid, cell, i: int):
    p = len(cell)
    if p == 1:
        return g.source[cell[0]] if i == 0 else g.target[cell[0]]
    if i == 0:
        return cell[1:]
    if i == p:
        return cell[:-1]
    merged = g.compose[(cell[i - 1], cell[i])]
    return cell[: i - 1] + (merged,) + cell[i + 1:]


def _degenerate(g: FiniteGroupoid, cell, i: int, p: int):
    if p == 0:
        return (g.identity[cell],)
    if i == 0:
        return (g.identity[g.target[cell[0]]],) + cell
    e = g.identity[g.source[cell[i - 1]]]
    return cell[:i] + (e,) + cell[i:]


@dataclass
class Cochain:
    """Z_N-valued function on one nerve level, stored as exponents."""

    degree: int
    modulus: int
    values: np.ndarray

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError(f"modulus must be positive, got {self.modulus}")
        self.values = np.mod(np.asarray(self.values, dtype=np.int64), self.modulus)


def coboundary(f: Cochain, nv: Nerve) -> Cochain:
    """Alternating face sum; raises if the next level is not tabulated."""
    d = f.degree
    if d + 1 > nv.p_max:
        raise CapacityError(f"nerve holds levels up to {nv.p_max}, cannot bound degree {d}")
    if f.values.shape[0] != nv.size(d):
        raise ShapeError(f"cochain has {f.values.shape[0]} values, level {d} has {nv.size(d)}")
    out = np.zeros(nv.size(d + 1), dtype=np.int64)
    sign = 1
    for i in range(d + 2):
        table = np.asarray(nv.faces[d + 1][i])
        out += sign * f.values[table]
        sign = -sign
    return Cochain(degree=d + 1, modulus=f.modulus, values=out)


def coboundary_matrix(nv: Nerve, d: int) -> np.ndarray:
    """Integer matrix of the coboundary from level d to level d+1."""
    if d + 1 > nv.p_max:
        raise CapacityError(f"nerve holds levels up to {nv.p_max}")
    mat = np.zeros((nv.size(d + 1), nv.size(d)), dtype=np.int64)
    rows = np.arange(nv.size(d + 1))
    sign = 1
    for i in range(d + 2):
        table = np.asarray(nv.faces[d + 1][i])
        np.add.at(mat, (rows, table), sign)
        sign = -sign
    return mat


@dataclass(frozen=True)
class CohomologyGroup:
    """Finite abelian group as an invariant-factor chain (entries > 1)."""

    degree: int
    modulus: int
    orders: tuple

    @property
    def order(self) -> int:
        total = 1
        for d in self.orders:
            total *= d
        return total

    @property
    def trivial(self) -> bool:
        return not self.orders


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    modulus: int
    orders: tuple
    vector: tuple

    @property
    def trivial(self) -> bool:
        return all(v == 0 for v in self.vector)


class _QuotientData:
    """Kernel lattice of one coboundary mod N and its quotient by coboundaries."""

    def __init__(self, g: FiniteGroupoid, degree: int, modulus: int):
        if degree < 0 or degree + 1 > MAX_DEGREE:
            raise CapacityError(
                f"cohomology needs nerve level {degree + 1}; supported degrees are 0..{MAX_DEGREE - 1}"
            )
        if modulus < 1:
            raise DomainError(f"modulus must be positive, got {modulus}")
        self.modulus = int(modulus)
        self.degree = int(degree)
        self.nerve = nerve(g, degree + 1)
        n_here = self.nerve.size(degree)
        a = coboundary_matrix(self.nerve, degree)
        res = smith_normal_form(a, want_vinv=True)
        factors = res.factors + [0] * (n_here - len(res.factors))
        self.mults = np.array(
            [self.modulus // gcd(f, self.modulus) for f in factors[:n_here]],
            dtype=np.int64,
        )
        self.vinv = np.asarray(res.vinv, dtype=np.int64)
        self.matrix = a
        if degree >= 1:
            b = coboundary_matrix(self.nerve, degree - 1)
            rel = np.hstack([b, self.modulus * np.eye(n_here, dtype=np.int64)])
        else:
            rel = self.modulus * np.eye(n_here, dtype=np.int64)
        rel_y = self.vinv @ rel
        if np.any(rel_y % self.mults[:, None]):
            raise CocycleError("coboundary image escapes the cocycle lattice")
        rel_y //= self.mults[:, None]
        quot = smith_normal_form(rel_y, want_u=True)
        self.u = np.asarray(quot.u, dtype=np.int64)
        self.factors = [int(f) for f in quot.factors]
        if any(f == 0 for f in self.factors) or len(self.factors) < n_here:
            raise CocycleError("cocycle quotient is not finite; relation matrix degenerate")

    def group(self) -> CohomologyGroup:
        return CohomologyGroup(
            degree=self.degree,
            modulus=self.modulus,
            orders=tuple(f for f in self.factors if f > 1),
        )

    def reduce(self, values: np.ndarray) -> CohomologyClass:
        vec = np.mod(np.asarray(values, dtype=np.int64), self.modulus)
        if vec.shape[0] != self.nerve.size(self.degree):
            raise ShapeError(
                f"cocycle vector has {vec.shape[0]} entries, level has {self.nerve.size(self.degree)}"
            )
        if np.any((self.matrix @ vec) % self.modulus):
            raise CocycleError("vector is not a cocycle mod N")
        y = self.vinv @ vec
        if np.any(y % self.mults):
            raise CocycleError("cocycle does not lie in the kernel lattice")
        z = self.u @ (y // self.mults)
        reduced = tuple(
            int(z[i] % f) for i, f in enumerate(self.factors) if f > 1
        )
        return CohomologyClass(
            degree=self.degree,
            modulus=self.modulus,
            orders=tuple(f for f in self.factors if f > 1),
            vector=reduced,
        )


def cohomology_group(g: FiniteGroupoid, degree: int, modulus: int) -> CohomologyGroup:
    """Cohomology of the nerve in one degree with Z_N coefficients."""
    return _QuotientData(g, degree, modulus).group()


def class_reducer(g: FiniteGroupoid, degree: int, modulus: int):
    """Reducer carrying the normal-form data; build once, reduce many cocycles."""
    return _QuotientData(g, degree, modulus)


def cocycle_vector(nv: Nerve, cocycle) -> np.ndarray:
    """Exponent vector of a mu_N phase cocycle over the level-2 cells."""
    if cocycle.continuous:
        raise UnsupportedCoefficientsError("only mu_N cocycles vectorize over the nerve")
    return np.array(
        [cocycle.exponent(cell[0], cell[1]) for cell in nv.levels[2]], dtype=np.int64
    )


def extension_class(ext: CentralExtension) -> CohomologyClass:
    """Class of the extension cocycle modulo coboundaries; mu_N only."""
    if ext.cocycle.continuous:
        raise UnsupportedCoefficientsError(
            "extension classes are computed for mu_N coefficients only"
        )
    data = _QuotientData(ext.base, 2, ext.cocycle.modulus)
    return data.reduce(cocycle_vector(data.nerve, ext.cocycle))
