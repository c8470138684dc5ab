"""Finite groupoids, phase 2-cocycles, central extensions, and chart gluing.

Composability convention, fixed once for the whole package: a pair (x, y)
of arrows is composable iff s(x) = t(y), and the product x*y runs y first,
so s(x*y) = s(y) and t(x*y) = t(x). For the action groupoid of a right
G-action on A the arrows are (a, g) with s = a, t = a.g, and for composable
(x, y) with y = (a, g), x = (a.g, h) the product is (a, g*h). Written in
traversal order that is the familiar rule "(a, g) then (a.g, h) gives
(a, gh)"; the tables here simply key it as (second, first).

Phase cocycles take values in the N-th roots of unity, stored as integer
exponents mod N so every identity below is checked in exact arithmetic, or
in the full unit circle (modulus None) as complex numbers. A valid
2-cocycle twists the multiplication of the trivial circle bundle into a
central extension; conversely extensions glued from chart-local data must
satisfy a descent condition tying overlapping charts together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ActionAxiomError,
    CocycleError,
    DescentError,
    DomainError,
    EvaluationError,
    ExtensionError,
    GroupoidAxiomError,
    InternalConsistencyError,
    MissingValueError,
    UnsupportedCoefficientsError,
)
from .linalg import as_square, matrix_exponential

CONTINUOUS_TOL = 1e-10
ETA_MIN_STEP = 1e-6
ETA_MAX_STEP = 1e-2


@dataclass
class FiniteGroupoid:
    """Tabulated groupoid: labels plus index tables.

    source/target/inverse are per-arrow lists of indices, identity is a
    per-object list of arrow indices, compose maps composable index pairs
    (x, y) with source[x] == target[y] to the index of x*y.
    """

    objects: list
    arrows: list
    source: list
    target: list
    identity: list
    inverse: list
    compose: dict

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def composable_pairs(self):
        return sorted(self.compose.keys())

    def composable_triples(self):
        """All (x, y, z) with (x, y) and (y, z) composable."""
        by_target = {}
        for z in range(self.n_arrows):
            by_target.setdefault(self.target[z], []).append(z)
        for (x, y) in self.composable_pairs():
            for z in by_target.get(self.source[y], ()):
                yield x, y, z


def axioms_check(g: FiniteGroupoid) -> list:
    """Exhaustively check the groupoid axioms; returns diagnostics, empty when sound."""
    bad = []
    n_obj, n_arr = g.n_objects, g.n_arrows
    if len(g.source) != n_arr or len(g.target) != n_arr or len(g.inverse) != n_arr:
        return [f"table lengths disagree with arrow count {n_arr}"]
    if len(g.identity) != n_obj:
        return [f"identity table length {len(g.identity)} != object count {n_obj}"]
    for x in range(n_arr):
        if not (0 <= g.source[x] < n_obj and 0 <= g.target[x] < n_obj):
            bad.append(f"arrow {x} has out-of-range endpoints")
        if not 0 <= g.inverse[x] < n_arr:
            bad.append(f"arrow {x} has out-of-range inverse")
    for o in range(n_obj):
        e = g.identity[o]
        if not 0 <= e < n_arr:
            bad.append(f"object {o} has out-of-range identity")
        elif g.source[e] != o or g.target[e] != o:
            bad.append(f"identity of object {o} is not an endomorphism of it")
    if bad:
        return bad

    # compose must be defined exactly on pairs with s(x) = t(y)
    for x in range(n_arr):
        for y in range(n_arr):
            defined = (x, y) in g.compose
            should = g.source[x] == g.target[y]
            if defined != should:
                verb = "missing" if should else "spurious"
                bad.append(f"compose entry {verb} for pair ({x}, {y})")
    if bad:
        return bad

    for (x, y), xy in g.compose.items():
        if not 0 <= xy < n_arr:
            bad.append(f"product of ({x}, {y}) out of range")
            continue
        if g.source[xy] != g.source[y] or g.target[xy] != g.target[x]:
            bad.append(f"product of ({x}, {y}) has wrong endpoints")
    if bad:
        return bad

    for x, y, z in g.composable_triples():
        left = g.compose[(g.compose[(x, y)], z)]
        right = g.compose[(x, g.compose[(y, z)])]
        if left != right:
            bad.append(f"associativity fails on ({x}, {y}, {z})")

    for x in range(n_arr):
        et, es = g.identity[g.target[x]], g.identity[g.source[x]]
        if g.compose.get((et, x)) != x:
            bad.append(f"left identity fails on arrow {x}")
        if g.compose.get((x, es)) != x:
            bad.append(f"right identity fails on arrow {x}")
        ix = g.inverse[x]
        if g.source[ix] != g.target[x] or g.target[ix] != g.source[x]:
            bad.append(f"inverse of arrow {x} has wrong endpoints")
            continue
        if g.compose.get((x, ix)) != g.identity[g.target[x]]:
            bad.append(f"x * x^-1 is not the identity for arrow {x}")
        if g.compose.get((ix, x)) != g.identity[g.source[x]]:
            bad.append(f"x^-1 * x is not the identity for arrow {x}")
    return bad


def groupoid_from_compose(objects, arrows, source, target, compose) -> FiniteGroupoid:
    """Build a groupoid from endpoint and composition tables alone.

    Identities and inverses are derived from the tables; raises if no
    consistent choice exists.
    """
    n_obj, n_arr = len(objects), len(arrows)
    identity = [-1] * n_obj
    for o in range(n_obj):
        candidates = [
            e
            for e in range(n_arr)
            if source[e] == o
            and target[e] == o
            and all(
                compose.get((x, e)) == x for x in range(n_arr) if source[x] == o
            )
            and all(
                compose.get((e, y)) == y for y in range(n_arr) if target[y] == o
            )
        ]
        if len(candidates) != 1:
            raise GroupoidAxiomError(
                f"object {o} has {len(candidates)} identity candidates"
            )
        identity[o] = candidates[0]
    inverse = [-1] * n_arr
    for x in range(n_arr):
        candidates = [
            y
            for y in range(n_arr)
            if compose.get((x, y)) == identity[target[x]]
            and compose.get((y, x)) == identity[source[x]]
        ]
        if len(candidates) != 1:
            raise GroupoidAxiomError(
                f"arrow {x} has {len(candidates)} inverse candidates"
            )
        inverse[x] = candidates[0]
    g = FiniteGroupoid(
        objects=list(objects),
        arrows=list(arrows),
        source=list(source),
        target=list(target),
        identity=identity,
        inverse=inverse,
        compose=dict(compose),
    )
    bad = axioms_check(g)
    if bad:
        raise GroupoidAxiomError("; ".join(bad[:5]))
    return g


@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication-table group with labeled elements."""

    elements: tuple
    mult: tuple  # mult[i][j] = index of elements[i] * elements[j]
    identity: int
    inverse: tuple

    @property
    def order(self) -> int:
        return len(self.elements)


def group_axioms_check(g: FiniteGroup) -> list:
    bad = []
    n = g.order
    for i in range(n):
        if g.mult[g.identity][i] != i or g.mult[i][g.identity] != i:
            bad.append(f"identity fails at {i}")
        if g.mult[i][g.inverse[i]] != g.identity or g.mult[g.inverse[i]][i] != g.identity:
            bad.append(f"inverse fails at {i}")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if g.mult[g.mult[i][j]][k] != g.mult[i][g.mult[j][k]]:
                    bad.append(f"associativity fails at ({i}, {j}, {k})")
                    return bad
    return bad


def check_right_action(points, group: FiniteGroup, action) -> None:
    """action[a][g] must fix the identity and intertwine multiplication."""
    n, m = len(points), group.order
    if len(action) != n or any(len(row) != m for row in action):
        raise ActionAxiomError("action table has wrong shape")
    for a in range(n):
        if action[a][group.identity] != a:
            raise ActionAxiomError(f"identity moves point {a}")
        for g in range(m):
            if not 0 <= action[a][g] < n:
                raise ActionAxiomError(f"action entry ({a}, {g}) out of range")
            for h in range(m):
                if action[action[a][g]][h] != action[a][group.mult[g][h]]:
                    raise ActionAxiomError(
                        f"compatibility fails at point {a}, elements ({g}, {h})"
                    )


def action_groupoid(points, group: FiniteGroup, action) -> FiniteGroupoid:
    """Groupoid of a right G-action on a finite set.

    Arrow (a, g) goes from a to a.g; arrow index is a * |G| + g.
    """
    check_right_action(points, group, action)
    n, m = len(points), group.order
    arrows = [(points[a], group.elements[g]) for a in range(n) for g in range(m)]
    source = [a for a in range(n) for _ in range(m)]
    target = [action[a][g] for a in range(n) for g in range(m)]
    identity = [a * m + group.identity for a in range(n)]
    inverse = [
        action[a][g] * m + group.inverse[g] for a in range(n) for g in range(m)
    ]
    compose = {}
    for a in range(n):
        for g1 in range(m):
            y = a * m + g1
            mid = action[a][g1]
            for g2 in range(m):
                x = mid * m + g2
                compose[(x, y)] = a * m + group.mult[g1][g2]
    return FiniteGroupoid(
        objects=list(points),
        arrows=arrows,
        source=source,
        target=target,
        identity=identity,
        inverse=inverse,
        compose=compose,
    )


@dataclass
class PhaseCocycle:
    """2-cochain on composable pairs with root-of-unity or circle values.

    modulus N >= 1 means mu_N values stored as integer exponents mod N;
    modulus None means continuous circle values stored as complex numbers.
    """

    modulus: object
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus is not None:
            if not isinstance(self.modulus, (int, np.integer)) or self.modulus < 1:
                raise DomainError(f"modulus must be a positive integer or None, got {self.modulus!r}")
            self.modulus = int(self.modulus)
            self.values = {k: int(v) % self.modulus for k, v in self.values.items()}

    @property
    def continuous(self) -> bool:
        return self.modulus is None

    def exponent(self, x: int, y: int) -> int:
        if self.continuous:
            raise UnsupportedCoefficientsError("continuous cocycle has no exponents")
        try:
            return self.values[(x, y)]
        except KeyError:
            raise MissingValueError(f"cocycle has no value on pair ({x}, {y})") from None

    def phase(self, x: int, y: int) -> complex:
        if self.continuous:
            try:
                return complex(self.values[(x, y)])
            except KeyError:
                raise MissingValueError(
                    f"cocycle has no value on pair ({x}, {y})"
                ) from None
        return complex(np.exp(2j * math.pi * self.exponent(x, y) / self.modulus))


def zero_cocycle(g: FiniteGroupoid, modulus) -> PhaseCocycle:
    if modulus is None:
        return PhaseCocycle(None, {pair: 1.0 + 0.0j for pair in g.compose})
    return PhaseCocycle(modulus, {pair: 0 for pair in g.compose})


def cocycle_check(g: FiniteGroupoid, c: PhaseCocycle) -> float:
    """Maximal violation of c(x,y) c(xy,z) = c(x,yz) c(y,z) over all triples."""
    worst = 0.0
    for x, y, z in g.composable_triples():
        xy = g.compose[(x, y)]
        yz = g.compose[(y, z)]
        if c.continuous:
            lhs = c.phase(x, y) * c.phase(xy, z)
            rhs = c.phase(x, yz) * c.phase(y, z)
            worst = max(worst, abs(lhs - rhs))
        else:
            k = (c.exponent(x, y) + c.exponent(xy, z)
                 - c.exponent(x, yz) - c.exponent(y, z)) % c.modulus
            if k:
                worst = max(worst, abs(np.exp(2j * math.pi * k / c.modulus) - 1.0))
    return worst


def coboundary_twist(g: FiniteGroupoid, c: PhaseCocycle, b) -> PhaseCocycle:
    """Twist c by the coboundary of a 1-cochain b on arrows: c(x,y) b(x) b(y) / b(xy)."""
    if c.continuous:
        values = {}
        for (x, y), xy in g.compose.items():
            values[(x, y)] = c.phase(x, y) * complex(b[x]) * complex(b[y]) / complex(b[xy])
        return PhaseCocycle(None, values)
    values = {}
    for (x, y), xy in g.compose.items():
        values[(x, y)] = (c.exponent(x, y) + int(b[x]) + int(b[y]) - int(b[xy])) % c.modulus
    return PhaseCocycle(c.modulus, values)


@dataclass
class CentralExtension:
    """Central extension of a groupoid by phases, tabulated when finite.

    For mu_N coefficients the total groupoid has arrows (x, k) at index
    x * N + k; for continuous coefficients only the multiply closure exists.
    """

    base: FiniteGroupoid
    cocycle: PhaseCocycle
    total: object  # FiniteGroupoid for mu_N, None for continuous

    @property
    def modulus(self):
        return self.cocycle.modulus

    def arrow_index(self, x: int, k: int) -> int:
        if self.total is None:
            raise UnsupportedCoefficientsError("continuous extension has no arrow table")
        return x * self.modulus + (k % self.modulus)

    def project(self, idx: int):
        if self.total is None:
            raise UnsupportedCoefficientsError("continuous extension has no arrow table")
        return divmod(idx, self.modulus)

    def phase_shift(self, k, idx: int) -> int:
        """Act by a phase on a total arrow: shifts its exponent."""
        x, a = self.project(idx)
        return self.arrow_index(x, a + int(k))

    def multiply(self, first, second):
        """Product of (arrow, phase) pairs; phases are exponents or complex."""
        x, lam = first
        y, mu = second
        try:
            xy = self.base.compose[(x, y)]
        except KeyError:
            raise DomainError(f"pair ({x}, {y}) is not composable") from None
        if self.cocycle.continuous:
            return xy, complex(lam) * complex(mu) * self.cocycle.phase(x, y)
        return xy, (int(lam) + int(mu) + self.cocycle.exponent(x, y)) % self.modulus


def central_extend(g: FiniteGroupoid, c: PhaseCocycle) -> CentralExtension:
    """Build the central extension twisted by c; c must be a valid 2-cocycle."""
    for pair in g.compose:
        if pair not in c.values:
            raise MissingValueError(f"cocycle has no value on pair {pair}")
    violation = cocycle_check(g, c)
    limit = 0.0 if not c.continuous else CONTINUOUS_TOL
    if violation > limit:
        raise ExtensionError(
            f"cocycle identity fails with violation {violation:.3e}; extension undefined"
        )
    if c.continuous:
        return CentralExtension(base=g, cocycle=c, total=None)

    n = c.modulus
    arrows = [(g.arrows[x], k) for x in range(g.n_arrows) for k in range(n)]
    source = [g.source[x] for x in range(g.n_arrows) for _ in range(n)]
    target = [g.target[x] for x in range(g.n_arrows) for _ in range(n)]
    # a non-normalized cocycle shifts the identity and inverse phases
    identity = []
    for o in range(g.n_objects):
        e = g.identity[o]
        identity.append(e * n + (-c.exponent(e, e)) % n)
    inverse = []
    for x in range(g.n_arrows):
        ix = g.inverse[x]
        et = g.identity[g.target[x]]
        base_shift = (-c.exponent(x, ix) - c.exponent(et, et)) % n
        for k in range(n):
            inverse.append(ix * n + (base_shift - k) % n)
    compose = {}
    for (x, y), xy in g.compose.items():
        cxy = c.exponent(x, y)
        for k in range(n):
            for l in range(n):
                compose[(x * n + k, y * n + l)] = xy * n + (k + l + cxy) % n
    total = FiniteGroupoid(
        objects=list(g.objects),
        arrows=arrows,
        source=source,
        target=target,
        identity=identity,
        inverse=inverse,
        compose=compose,
    )
    bad = axioms_check(total)
    if bad:
        raise InternalConsistencyError(
            "extension total groupoid violates axioms: " + "; ".join(bad[:3])
        )
    return CentralExtension(base=g, cocycle=c, total=total)


def centrality_check(ext) -> float:
    """Maximal violation of (s.X)(t.Y) = (s t).(X Y) over phases and pairs.

    Exhaustive for mu_N extensions (all phase pairs and all composable total
    pairs); a deterministic 8-point phase grid per composable pair in the
    continuous case.
    """
    worst = 0.0
    if getattr(ext, "total", None) is not None:
        n = ext.modulus
        g = ext.base
        for (x, y) in g.composable_pairs():
            ref = ext.total.compose[(x * n, y * n)]
            for s in range(n):
                for t in range(n):
                    lhs = ext.total.compose[(x * n + s, y * n + t)]
                    rhs = ext.phase_shift(s + t, ref)
                    if lhs != rhs:
                        xy_l, k_l = divmod(lhs, n)
                        xy_r, k_r = divmod(rhs, n)
                        if xy_l != xy_r:
                            worst = max(worst, 2.0)
                        else:
                            dev = abs(np.exp(2j * math.pi * (k_l - k_r) / n) - 1.0)
                            worst = max(worst, dev)
        return worst
    grid = [complex(np.exp(2j * math.pi * j / 8)) for j in range(8)]
    for (x, y) in ext.base.composable_pairs():
        base_xy, base_phase = ext.multiply((x, 1.0), (y, 1.0))
        for s in grid:
            for t in grid:
                xy, lhs = ext.multiply((x, s), (y, t))
                if xy != base_xy:
                    worst = max(worst, 2.0)
                    continue
                worst = max(worst, abs(lhs - s * t * base_phase))
    return worst


@dataclass
class LocalExtensionData:
    """Chart-local description of a central extension over an action groupoid.

    cover is a list of charts (subsets of group element indices) whose union
    is the whole group. phi[(alpha, beta, g, a)] is the transition exponent
    between charts alpha and beta at group element g over point a, with
    phi[(alpha, alpha, ...)] implicitly zero. omega[(alpha, beta, gamma, f,
    g, a)] is the local multiplication cocycle for f in chart alpha, g in
    chart beta, f g in chart gamma, evaluated over point a.
    """

    group: FiniteGroup
    points: list
    action: list
    cover: list
    phi: dict
    omega: dict

    def charts_containing(self, g: int) -> list:
        return [i for i, chart in enumerate(self.cover) if g in chart]


def _phi_lookup(data: LocalExtensionData, alpha: int, beta: int, g: int, a: int) -> int:
    if alpha == beta:
        return 0
    try:
        return data.phi[(alpha, beta, g, a)]
    except KeyError:
        raise MissingValueError(
            f"transition phi[{alpha},{beta}] missing at element {g}, point {a}"
        ) from None


def _omega_lookup(data, alpha, beta, gamma, f, g, a) -> int:
    try:
        return data.omega[(alpha, beta, gamma, f, g, a)]
    except KeyError:
        raise MissingValueError(
            f"local cocycle omega[{alpha},{beta};{gamma}] missing at ({f}, {g}), point {a}"
        ) from None


def validate_local_data(data: LocalExtensionData, modulus: int) -> None:
    """Check cover, action, gluing, and local cocycle conditions exactly."""
    if not isinstance(modulus, (int, np.integer)) or modulus < 1:
        raise DomainError(f"modulus must be a positive integer, got {modulus!r}")
    n = int(modulus)
    group = data.group
    m = group.order
    covered = set()
    for chart in data.cover:
        covered.update(chart)
    if covered != set(range(m)):
        raise DomainError("cover does not exhaust the group")
    check_right_action(data.points, group, data.action)

    npts = len(data.points)
    # gluing condition across every overlapping choice of chart indices
    for a in range(npts):
        for f in range(m):
            alphas = data.charts_containing(f)
            af = data.action[a][f]
            for g in range(m):
                betas = data.charts_containing(g)
                fg = group.mult[f][g]
                gammas = data.charts_containing(fg)
                base = {
                    (al, be, ga): _omega_lookup(data, al, be, ga, f, g, a)
                    for al in alphas
                    for be in betas
                    for ga in gammas
                }
                for (al, be, ga), val in base.items():
                    for (al2, be2, ga2), val2 in base.items():
                        correction = (
                            _phi_lookup(data, al, al2, f, a)
                            + _phi_lookup(data, be, be2, g, af)
                            - _phi_lookup(data, ga, ga2, fg, a)
                        )
                        if (val - val2 - correction) % n:
                            raise DescentError(
                                "gluing fails between chart choices "
                                f"({al},{be},{ga}) and ({al2},{be2},{ga2}) "
                                f"at point {a}, elements ({f}, {g})"
                            )

    # local cocycle condition for every consistent chart assignment
    for a in range(npts):
        for g1 in range(m):
            a1 = data.action[a][g1]
            for g2 in range(m):
                g12 = group.mult[g1][g2]
                for g3 in range(m):
                    g23 = group.mult[g2][g3]
                    g123 = group.mult[g12][g3]
                    for al in data.charts_containing(g1):
                        for be in data.charts_containing(g2):
                            for ga in data.charts_containing(g12):
                                for de in data.charts_containing(g3):
                                    for ep in data.charts_containing(g23):
                                        for ze in data.charts_containing(g123):
                                            lhs = (
                                                _omega_lookup(data, ga, de, ze, g12, g3, a)
                                                + _omega_lookup(data, al, be, ga, g1, g2, a)
                                            )
                                            rhs = (
                                                _omega_lookup(data, al, ep, ze, g1, g23, a)
                                                + _omega_lookup(data, be, de, ep, g2, g3, a1)
                                            )
                                            if (lhs - rhs) % n:
                                                raise CocycleError(
                                                    "local cocycle identity fails at point "
                                                    f"{a}, elements ({g1}, {g2}, {g3}), charts "
                                                    f"({al},{be},{ga},{de},{ep},{ze})"
                                                )


def glue_local_data(data: LocalExtensionData, modulus: int) -> CentralExtension:
    """Assemble the global extension from chart-local data after full validation.

    Each group element is read in its least-index chart; the global cocycle
    over a composable pair is the local omega in those canonical charts.
    """
    validate_local_data(data, modulus)
    n = int(modulus)
    group = data.group
    m = group.order
    chart_of = [min(data.charts_containing(g)) for g in range(m)]
    base = action_groupoid(data.points, group, data.action)
    values = {}
    for a in range(len(data.points)):
        for g1 in range(m):
            y = a * m + g1
            mid = data.action[a][g1]
            for g2 in range(m):
                x = mid * m + g2
                g12 = group.mult[g1][g2]
                values[(x, y)] = _omega_lookup(
                    data, chart_of[g1], chart_of[g2], chart_of[g12], g1, g2, a
                )
    # central_extend validates the assembled cocycle and the total groupoid
    return central_extend(base, PhaseCocycle(n, values))


def eta_from_omega(omega, x, y, point, h: float) -> float:
    """Infinitesimal 2-cocycle via the group-commutator word.

    Accumulates the omega phase exponent along the product
    exp(t x) exp(s y) exp(-t x) exp(-s y) and returns the central mixed
    second difference at (t, s) = (0, 0) with step h.
    """
    if not ETA_MIN_STEP <= h <= ETA_MAX_STEP:
        raise DomainError(f"step must lie in [{ETA_MIN_STEP}, {ETA_MAX_STEP}], got {h}")
    xm = as_square(x)
    ym = as_square(y)
    if xm.shape != ym.shape:
        raise DomainError(f"generator shapes differ: {xm.shape} vs {ym.shape}")

    def word_phase(t: float, s: float) -> float:
        g1 = matrix_exponential(t * xm)
        g2 = matrix_exponential(s * ym)
        g3 = matrix_exponential(-t * xm)
        g4 = matrix_exponential(-s * ym)
        total = 0.0
        left = g1
        for nxt in (g2, g3, g4):
            try:
                val = omega(point, left, nxt)
            except Exception as exc:  # noqa: BLE001
                raise EvaluationError(f"omega evaluation failed: {exc}") from exc
            total += float(val)
            left = left @ nxt
        return total

    stencil = (
        word_phase(h, h)
        - word_phase(h, -h)
        - word_phase(-h, h)
        + word_phase(-h, -h)
    )
    return stencil / (4.0 * h * h)
