"""Seeded random instances for the verification suites and the CLI.

All randomness flows through numpy's PCG64 bit generator seeded via
SeedSequence, so a given 64-bit seed reproduces the same instances on any
platform. Generators return mathematically valid objects by construction
and re-check the cheap exact invariants before handing them out.

Group-valued randomness draws from a fixed catalog (cyclic groups up to
order 8, the three abelian 2-group products, S3, and D4); right actions
are disjoint unions of coset actions, and valid groupoid 2-cocycles are
built as pullbacks of cyclic carry cocycles along homomorphisms to Z_m,
twisted by random coboundaries. Refined covers are produced from a valid
global cocycle by splitting it across charts with random chart phases, so
descent holds by construction and gluing must reproduce the source class.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalConsistencyError, SizeError
from .grassmann import Frame
from .groupoid import (
    FiniteGroup,
    FiniteGroupoid,
    LocalExtensionData,
    PhaseCocycle,
    action_groupoid,
    check_right_action,
    coboundary_twist,
    cocycle_check,
    group_axioms_check,
)
from .linalg import Polarization, singular_values

FRAME_SPREAD = 0.3
FRAME_BLOCK_FLOOR = 0.1


def generator(seed) -> np.random.Generator:
    """PCG64 stream for a 64-bit seed; the package-wide randomness source."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def random_complex(rng, rows, cols, scale=1.0) -> np.ndarray:
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return scale * (re + 1j * im) / np.sqrt(2.0)


def random_hermitian(rng, n, scale=1.0) -> np.ndarray:
    m = random_complex(rng, n, n, scale)
    return (m + m.conj().T) / 2.0


def random_anti_hermitian(rng, n, scale=1.0) -> np.ndarray:
    m = random_complex(rng, n, n, scale)
    return (m - m.conj().T) / 2.0


def random_perturbation(rng, n, radius) -> np.ndarray:
    """Random A with spectral radius at most `radius` (so 1 + A is unital-invertible for radius < 1)."""
    m = random_complex(rng, n, n)
    rho = float(np.max(np.abs(np.linalg.eigvals(m)))) if n else 0.0
    if rho == 0.0:
        return m
    return m * (radius * rng.uniform(0.3, 1.0) / rho)


def random_unitary(rng, n) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, n, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_block_diagonal_anti_hermitian(rng, pol: Polarization, scale=1.0) -> np.ndarray:
    k = pol.plus_dim
    m = np.zeros((pol.dim, pol.dim), dtype=np.complex128)
    m[:k, :k] = random_anti_hermitian(rng, k, scale)
    m[k:, k:] = random_anti_hermitian(rng, pol.dim - k, scale)
    return m


def random_frame(rng, pol: Polarization, spread=FRAME_SPREAD) -> Frame:
    """Frame with an invertible plus block, drawn near the standard frame."""
    for _ in range(64):
        u = _unitary_near_identity(rng, pol.dim, spread)
        candidate = u[:, : pol.plus_dim]
        block = candidate[: pol.plus_dim, :]
        if float(np.min(singular_values(block))) > FRAME_BLOCK_FLOOR:
            return Frame(pol, candidate)
    raise InternalConsistencyError("failed to draw a frame with invertible plus block")


def _unitary_near_identity(rng, n, spread) -> np.ndarray:
    from .linalg import matrix_exponential

    return matrix_exponential(random_anti_hermitian(rng, n, spread))


# ---------------------------------------------------------------------------
# group catalog


def _perm_mult(p, q):
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def group_from_permutations(generators) -> FiniteGroup:
    """Closure of permutation generators under composition, in sorted element order."""
    if not generators:
        raise SizeError("need at least one permutation generator")
    degree = len(generators[0])
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = _perm_mult(p, g)
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    ordered = sorted(elems)
    index = {p: i for i, p in enumerate(ordered)}
    mult = tuple(
        tuple(index[_perm_mult(p, q)] for q in ordered) for p in ordered
    )
    identity = index[ident]
    inverse = []
    for i, p in enumerate(ordered):
        inv = tuple(sorted(range(degree), key=lambda j: p[j]))
        inverse.append(index[inv])
    group = FiniteGroup(
        elements=tuple(ordered), mult=mult, identity=identity, inverse=tuple(inverse)
    )
    bad = group_axioms_check(group)
    if bad:
        raise InternalConsistencyError("permutation closure is not a group: " + bad[0])
    return group


def cyclic_group(m) -> FiniteGroup:
    if m < 1:
        raise SizeError(f"cyclic order must be positive, got {m}")
    mult = tuple(tuple((i + j) % m for j in range(m)) for i in range(m))
    return FiniteGroup(
        elements=tuple(range(m)),
        mult=mult,
        identity=0,
        inverse=tuple((-i) % m for i in range(m)),
    )


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    elements = tuple(
        (g1.elements[i], g2.elements[j]) for i in range(n1) for j in range(n2)
    )

    def idx(i, j):
        return i * n2 + j

    mult = tuple(
        tuple(
            idx(g1.mult[i1][j1], g2.mult[i2][j2])
            for j1 in range(n1)
            for j2 in range(n2)
        )
        for i1 in range(n1)
        for i2 in range(n2)
    )
    inverse = tuple(
        idx(g1.inverse[i], g2.inverse[j]) for i in range(n1) for j in range(n2)
    )
    return FiniteGroup(
        elements=elements,
        mult=mult,
        identity=idx(g1.identity, g2.identity),
        inverse=inverse,
    )


def group_catalog() -> dict:
    """Named groups of order at most 8 used by the random suites."""
    c2 = cyclic_group(2)
    catalog = {f"Z{m}": cyclic_group(m) for m in range(2, 9)}
    catalog["Z2xZ2"] = direct_product(c2, c2)
    catalog["Z2xZ4"] = direct_product(c2, cyclic_group(4))
    catalog["Z2xZ2xZ2"] = direct_product(c2, direct_product(c2, c2))
    catalog["S3"] = group_from_permutations([(1, 0, 2), (1, 2, 0)])
    catalog["D4"] = group_from_permutations([(1, 2, 3, 0), (1, 0, 3, 2)])
    return catalog


def subgroups(group: FiniteGroup) -> list:
    """All subgroups as sorted tuples of element indices (order <= 8 assumed)."""
    n = group.order
    if n > 12:
        raise SizeError(f"subgroup enumeration limited to order 12, got {n}")
    out = []
    for mask in range(1 << n):
        if not (mask >> group.identity) & 1:
            continue
        members = [i for i in range(n) if (mask >> i) & 1]
        ok = all(
            (mask >> group.mult[i][j]) & 1 for i in members for j in members
        ) and all((mask >> group.inverse[i]) & 1 for i in members)
        if ok:
            out.append(tuple(members))
    return sorted(out, key=lambda t: (len(t), t))


def coset_right_action(group: FiniteGroup, sub) -> tuple:
    """Right action of the group on right cosets of the subgroup.

    Returns (points, action) with points labeled by sorted coset tuples.
    """
    sub = tuple(sub)
    cosets = {}
    for x in range(group.order):
        key = tuple(sorted(group.mult[h][x] for h in sub))
        cosets.setdefault(key, key)
    points = sorted(cosets)
    where = {}
    for i, coset in enumerate(points):
        for x in coset:
            where[x] = i
    action = [
        [where[group.mult[coset[0]][g]] for g in range(group.order)]
        for coset in points
    ]
    return list(points), action


def random_right_action(rng, group: FiniteGroup, max_points) -> tuple:
    """Disjoint union of one or two random coset actions with at most max_points points."""
    if max_points < 1:
        raise SizeError(f"need at least one point, got {max_points}")
    subs = subgroups(group)
    choices = [s for s in subs if group.order // len(s) <= max_points]
    sub = choices[int(rng.integers(len(choices)))]
    points, action = coset_right_action(group, sub)
    budget = max_points - len(points)
    narrow = [s for s in subs if group.order // len(s) <= budget]
    if narrow and rng.random() < 0.5:
        sub2 = narrow[int(rng.integers(len(narrow)))]
        points2, action2 = coset_right_action(group, sub2)
        offset = len(points)
        points = [(0, p) for p in points] + [(1, p) for p in points2]
        action = [row[:] for row in action] + [
            [offset + v for v in row] for row in action2
        ]
    check_right_action(points, group, action)
    return points, action


# ---------------------------------------------------------------------------
# cocycles


def homomorphisms_to_cyclic(group: FiniteGroup, m) -> list:
    """All homomorphisms into Z_m, each as a tuple of images."""
    n = group.order
    gens = []
    known = {group.identity}
    while len(known) < n:
        g = min(i for i in range(n) if i not in known)
        gens.append(g)
        frontier = list(known)
        while frontier:
            nxt = []
            for x in frontier:
                for h in list(known) + [g]:
                    for y in (group.mult[x][h], group.mult[h][x]):
                        if y not in known:
                            known.add(y)
                            nxt.append(y)
            frontier = nxt
    homs = []
    for images in _tuples(m, len(gens)):
        phi = {group.identity: 0}
        frontier = [group.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    y = group.mult[x][g]
                    val = (phi[x] + img) % m
                    if y in phi:
                        if phi[y] != val:
                            ok = False
                            break
                    else:
                        phi[y] = val
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and len(phi) == n:
            full = tuple(phi[i] for i in range(n))
            if all(
                (full[group.mult[i][j]] - full[i] - full[j]) % m == 0
                for i in range(n)
                for j in range(n)
            ):
                homs.append(full)
    return homs


def _tuples(m, length):
    if length == 0:
        yield ()
        return
    for head in range(m):
        for rest in _tuples(m, length - 1):
            yield (head,) + rest


def carry_table(group: FiniteGroup, phi, m) -> np.ndarray:
    """Pullback of the Z -> Z_m carry cocycle along a homomorphism phi."""
    n = group.order
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            table[i, j] = (phi[i] + phi[j]) // m
    return table


def inflate_group_cocycle(gpd: FiniteGroupoid, group: FiniteGroup, points, action, table, modulus) -> PhaseCocycle:
    """Point-independent groupoid cocycle from a group 2-cocycle table.

    table[g1][g2] is the exponent attached to the traversal 'g1 then g2';
    on the action groupoid that pair is keyed (x, y) with y = (a, g1) and
    x = (a.g1, g2).
    """
    m = group.order
    values = {}
    for a in range(len(points)):
        for g1 in range(m):
            y = a * m + g1
            mid = action[a][g1]
            for g2 in range(m):
                x = mid * m + g2
                values[(x, y)] = int(table[g1][g2])
    return PhaseCocycle(modulus, values)


def random_groupoid_cocycle(rng, gpd: FiniteGroupoid, group: FiniteGroup, points, action, modulus) -> PhaseCocycle:
    """Valid mu_N 2-cocycle: random carry pullback plus a random coboundary."""
    n = int(modulus)
    table = np.zeros((group.order, group.order), dtype=np.int64)
    for m in range(2, 9):
        if rng.random() < 0.6:
            continue
        homs = homomorphisms_to_cyclic(group, m)
        nontrivial = [phi for phi in homs if any(phi)]
        if not nontrivial:
            continue
        phi = nontrivial[int(rng.integers(len(nontrivial)))]
        table = table + int(rng.integers(n)) * carry_table(group, phi, m)
    base = inflate_group_cocycle(gpd, group, points, action, table, n)
    b = [int(v) for v in rng.integers(n, size=gpd.n_arrows)]
    c = coboundary_twist(gpd, base, b)
    if cocycle_check(gpd, c) != 0.0:
        raise InternalConsistencyError("generated cocycle fails the exact identity")
    return c


# ---------------------------------------------------------------------------
# covers


def refined_cover(rng, group: FiniteGroup, points, action, cocycle: PhaseCocycle, n_charts) -> LocalExtensionData:
    """Split a valid global cocycle across random charts with random chart phases.

    The resulting LocalExtensionData satisfies descent by construction and
    glues back to a cocycle differing from the source by a coboundary.
    """
    n = int(cocycle.modulus)
    m = group.order
    npts = len(points)
    membership = [[] for _ in range(n_charts)]
    for g in range(m):
        owners = [i for i in range(n_charts) if rng.random() < 0.5]
        if not owners:
            owners = [int(rng.integers(n_charts))]
        for i in owners:
            membership[i].append(g)
    cover = [set(chart) for chart in membership if chart]

    chi = {}
    for alpha, chart in enumerate(cover):
        for g in chart:
            for a in range(npts):
                chi[(alpha, a, g)] = int(rng.integers(n))

    def glob(a, g1, g2):
        y = a * m + g1
        x = action[a][g1] * m + g2
        return cocycle.exponent(x, y)

    phi = {}
    for alpha in range(len(cover)):
        for beta in range(len(cover)):
            if alpha == beta:
                continue
            for g in cover[alpha] & cover[beta]:
                for a in range(npts):
                    phi[(alpha, beta, g, a)] = (
                        chi[(alpha, a, g)] - chi[(beta, a, g)]
                    ) % n

    omega = {}
    for alpha in range(len(cover)):
        for f in cover[alpha]:
            for beta in range(len(cover)):
                for g in cover[beta]:
                    fg = group.mult[f][g]
                    for gamma in range(len(cover)):
                        if fg not in cover[gamma]:
                            continue
                        for a in range(npts):
                            omega[(alpha, beta, gamma, f, g, a)] = (
                                glob(a, f, g)
                                + chi[(alpha, a, f)]
                                + chi[(beta, action[a][f], g)]
                                - chi[(gamma, a, fg)]
                            ) % n
    return LocalExtensionData(
        group=group,
        points=list(points),
        action=[list(row) for row in action],
        cover=cover,
        phi=phi,
        omega=omega,
    )


def random_cover_instance(rng, max_points=3, max_order=6, max_modulus=6, n_charts=3) -> tuple:
    """Full round-trip fixture: groupoid, source cocycle, refined cover, modulus."""
    names = [
        name
        for name, grp in sorted(group_catalog().items())
        if grp.order <= max_order
    ]
    catalog = group_catalog()
    group = catalog[names[int(rng.integers(len(names)))]]
    points, action = random_right_action(rng, group, max_points)
    gpd = action_groupoid(points, group, action)
    modulus = int(rng.integers(2, max_modulus + 1))
    cocycle = random_groupoid_cocycle(rng, gpd, group, points, action, modulus)
    data = refined_cover(rng, group, points, action, cocycle, n_charts)
    return gpd, group, points, action, cocycle, data, modulus


def random_action_instance(rng, max_points=4, max_order=8) -> tuple:
    """Random (group, points, action, groupoid) with validated axioms."""
    catalog = group_catalog()
    names = [name for name, grp in sorted(catalog.items()) if grp.order <= max_order]
    group = catalog[names[int(rng.integers(len(names)))]]
    points, action = random_right_action(rng, group, max_points)
    gpd = action_groupoid(points, group, action)
    return group, points, action, gpd


def point_groupoid(group: FiniteGroup) -> FiniteGroupoid:
    """One-object groupoid of a group (trivial action on a single point)."""
    return action_groupoid(["*"], group, [[0] * group.order])


def translation_groupoid(group: FiniteGroup) -> FiniteGroupoid:
    """Free action of a group on itself by right translation."""
    points = list(range(group.order))
    action = [list(group.mult[a]) for a in range(group.order)]
    return action_groupoid(points, group, action)
