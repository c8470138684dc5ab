"""Finite CAR algebra, second quantization, and vacuum lines.

The Fock space over m modes is C^(2^m) in the occupation basis: basis index
equals the occupation bitmask, bit i meaning mode i is filled. Creation on
mode i flips bit i in with the Jordan-Wigner sign (-1)^(number of occupied
modes below i), which makes the anticommutation relations hold exactly in
integer arithmetic. The polarization marks the first k modes as the plus
side; the vacuum fills every minus mode (a filled sea) and is annihilated
by psi*(u) for u in the minus subspace and by psi(v) for v in the plus one.

Second quantization d_gamma(X) is the normal-ordered bilinear sum with its
vacuum expectation subtracted; the commutation rule [d_gamma(X), psi*(v)] =
psi*(X v) and the zero vacuum expectation are re-verified after every
construction. The Schwinger term is the scalar by which d_gamma fails to be
a Lie homomorphism, read off a brute-force commutator.

Vacuum lines sit over Hermitian backgrounds: the line of a spectral window
(lo, hi) is spanned by the wedge of its eigenvectors, tracked here as the
orthonormal eigenvector frame plus a phase. Rotating the frame multiplies
the phase by the rotation determinant; triple overlaps of windows glue up
to a unit-modulus witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import (
    CoverMembershipError,
    DomainError,
    GapError,
    InternalConsistencyError,
    ShapeError,
    SizeError,
    SymmetryError,
)
from .linalg import (
    Polarization,
    as_matrix,
    as_square,
    determinant,
    hermitian_eigensystem,
    matrix_exponential,
)

MAX_MODES = 12
DGAMMA_TOL = 1e-10
SCALARNESS_TOL = 1e-9
LEVEL_MARGIN = 1e-8
UNITARY_TOL = 1e-10
WITNESS_TOL = 1e-10


def _creator(mode: int, modes: int) -> sparse.csr_matrix:
    """Creation operator on one mode as a 0/+-1 sparse matrix."""
    dim = 1 << modes
    below = (1 << mode) - 1
    masks = np.arange(dim)
    empty = masks[(masks >> mode) & 1 == 0]
    signs = np.where(_popcount(empty & below) & 1, -1.0, 1.0)
    rows = empty | (1 << mode)
    return sparse.csr_matrix((signs, (rows, empty)), shape=(dim, dim))


def _popcount(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    v = a.copy()
    while np.any(v):
        out += v & 1
        v >>= 1
    return out


@dataclass(frozen=True)
class FockSpace:
    """Occupation-basis Fock space over m polarized modes."""

    modes: int
    pol: Polarization
    creators: tuple

    @property
    def dim(self) -> int:
        return 1 << self.modes

    @property
    def sea_mask(self) -> int:
        """Bitmask of the filled minus modes."""
        return ((1 << self.modes) - 1) ^ ((1 << self.pol.plus_dim) - 1)


def build_car(modes, pol: Polarization) -> FockSpace:
    """Construct the CAR generators for `modes` modes split by `pol`."""
    if not isinstance(modes, (int, np.integer)) or isinstance(modes, bool):
        raise SizeError(f"mode count must be an integer, got {modes!r}")
    if not 1 <= modes <= MAX_MODES:
        raise SizeError(f"mode count must lie in [1, {MAX_MODES}], got {modes}")
    if pol.dim != modes:
        raise ShapeError(f"polarization dim {pol.dim} does not match mode count {modes}")
    creators = tuple(_creator(i, int(modes)) for i in range(int(modes)))
    return FockSpace(modes=int(modes), pol=pol, creators=creators)


def _one_particle_vector(space: FockSpace, v) -> np.ndarray:
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    if vec.shape[0] != space.modes:
        raise ShapeError(f"one-particle vector must have length {space.modes}")
    return vec


def creation(space: FockSpace, v) -> np.ndarray:
    """Dense matrix of psi*(v) = sum_i v_i c_i (linear in v)."""
    vec = _one_particle_vector(space, v)
    out = sparse.csr_matrix((space.dim, space.dim), dtype=np.complex128)
    for coeff, c in zip(vec, space.creators):
        if coeff != 0:
            out = out + coeff * c
    return out.toarray()


def annihilation(space: FockSpace, u) -> np.ndarray:
    """Dense matrix of psi(u), the adjoint of psi*(u) (antilinear in u)."""
    return creation(space, u).conj().T


def apply_creation(space: FockSpace, v, state: np.ndarray) -> np.ndarray:
    """psi*(v) applied to a Fock vector without materializing the matrix."""
    vec = _one_particle_vector(space, v)
    st = np.asarray(state, dtype=np.complex128).reshape(-1)
    if st.shape[0] != space.dim:
        raise ShapeError(f"state must have length {space.dim}")
    out = np.zeros_like(st)
    for coeff, c in zip(vec, space.creators):
        if coeff != 0:
            out += coeff * c.dot(st)
    return out


def vacuum(space: FockSpace) -> np.ndarray:
    """Unit vector with every minus mode filled and every plus mode empty."""
    vec = np.zeros(space.dim, dtype=np.complex128)
    vec[space.sea_mask] = 1.0
    return vec


@dataclass(frozen=True)
class FockOperator:
    space: FockSpace
    matrix: np.ndarray


def _d_gamma_sparse(space: FockSpace, x: np.ndarray) -> sparse.csr_matrix:
    raw = sparse.csr_matrix((space.dim, space.dim), dtype=np.complex128)
    for i in range(space.modes):
        ci = space.creators[i]
        for j in range(space.modes):
            if x[i, j] != 0:
                raw = raw + x[i, j] * (ci @ space.creators[j].T)
    sea_trace = sum(x[i, i] for i in range(space.modes) if (space.sea_mask >> i) & 1)
    return raw - sea_trace * sparse.identity(space.dim, dtype=np.complex128, format="csr")


def d_gamma(space: FockSpace, x) -> FockOperator:
    """Normal-ordered second quantization of the one-particle operator x.

    Defined by [d_gamma(x), psi*(v)] = psi*(x v) together with a vanishing
    vacuum expectation; both are re-verified to 1e-10 after construction.
    """
    xm = as_square(x)
    if xm.shape[0] != space.modes:
        raise ShapeError(f"one-particle operator must be {space.modes}x{space.modes}")
    op = _d_gamma_sparse(space, xm)
    for j in range(space.modes):
        cj = space.creators[j]
        comm = op @ cj - cj @ op
        target = sparse.csr_matrix((space.dim, space.dim), dtype=np.complex128)
        for i in range(space.modes):
            if xm[i, j] != 0:
                target = target + xm[i, j] * space.creators[i]
        dev = abs(comm - target).max() if (comm - target).nnz else 0.0
        if dev > DGAMMA_TOL:
            raise InternalConsistencyError(
                f"commutation defect {dev:.3e} on mode {j} exceeds {DGAMMA_TOL}"
            )
    vac_idx = space.sea_mask
    expectation = op[vac_idx, vac_idx]
    if abs(expectation) > DGAMMA_TOL:
        raise InternalConsistencyError(
            f"vacuum expectation {expectation!r} exceeds {DGAMMA_TOL}"
        )
    return FockOperator(space=space, matrix=op.toarray())


def schwinger_detail(space: FockSpace, x, y) -> dict:
    """Schwinger scalar plus its scalarness residue."""
    xm = as_square(x)
    ym = as_square(y)
    if xm.shape != ym.shape:
        raise ShapeError(f"operand shapes differ: {xm.shape} vs {ym.shape}")
    dx = d_gamma(space, xm).matrix
    dy = d_gamma(space, ym).matrix
    dxy = d_gamma(space, xm @ ym - ym @ xm).matrix
    s = dx @ dy - dy @ dx - dxy
    c = complex(np.trace(s)) / space.dim
    residue = float(np.linalg.norm(s - c * np.eye(space.dim), "fro"))
    if residue > SCALARNESS_TOL:
        raise InternalConsistencyError(
            f"defect operator is not scalar: residue {residue:.3e}"
        )
    return {"value": c, "residue": residue}


def schwinger_term(space: FockSpace, x, y) -> complex:
    """Scalar defect of second quantization: [dG(x), dG(y)] - dG([x, y])."""
    return schwinger_detail(space, x, y)["value"]


@dataclass(frozen=True)
class SpectralBackground:
    """Hermitian one-particle operator whose spectrum defines polarizations."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_square(self.matrix)
        object.__setattr__(self, "matrix", m)
        hermitian_eigensystem(m)  # validates Hermitian within tolerance

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigensystem(self):
        return hermitian_eigensystem(self.matrix)


def schwinger_over_backgrounds(x, y, backgrounds) -> list:
    """Schwinger scalars of (x, y) in the polarization of each background.

    Each background is eigendecomposed; positive eigenmodes form the plus
    side. Backgrounds with an eigenvalue within 1e-8 of zero are rejected.
    """
    xm = as_square(x)
    ym = as_square(y)
    values = []
    for bg in backgrounds:
        if not isinstance(bg, SpectralBackground):
            bg = SpectralBackground(as_square(bg))
        if bg.dim != xm.shape[0]:
            raise ShapeError(
                f"background is {bg.dim}x{bg.dim}, operators are {xm.shape[0]}x{xm.shape[0]}"
            )
        w, v = bg.eigensystem()
        if np.min(np.abs(w)) < LEVEL_MARGIN:
            raise GapError("background has an eigenvalue within 1e-8 of zero")
        pos = np.nonzero(w > 0)[0]
        neg = np.nonzero(w < 0)[0]
        frame = np.hstack([v[:, pos], v[:, neg]])
        k = int(pos.size)
        space = build_car(bg.dim, Polarization(bg.dim, k))
        xr = frame.conj().T @ xm @ frame
        yr = frame.conj().T @ ym @ frame
        values.append(schwinger_term(space, xr, yr))
    return values


def bogoliubov_implement(space: FockSpace, x) -> FockOperator:
    """exp(d_gamma(x)) for anti-Hermitian x; conjugation implements exp(x)."""
    xm = as_square(x)
    dev = float(np.max(np.abs(xm + xm.conj().T)))
    if dev > UNITARY_TOL:
        raise SymmetryError(f"generator is not anti-Hermitian within {UNITARY_TOL}")
    gen = d_gamma(space, xm)
    return FockOperator(space=space, matrix=matrix_exponential(gen.matrix))


@dataclass(frozen=True)
class VacuumLine:
    """Spectral-window line: orthonormal eigenvector frame plus a phase."""

    background: SpectralBackground
    lo: float
    hi: float
    frame: np.ndarray
    phase: complex


def _check_level(w: np.ndarray, level: float) -> None:
    if w.size and float(np.min(np.abs(w - level))) <= LEVEL_MARGIN:
        raise CoverMembershipError(
            f"level {level} is within 1e-8 of the spectrum"
        )


def vacuum_line(bg: SpectralBackground, lo: float, hi: float) -> VacuumLine:
    """Line of the spectral window (lo, hi); phase starts at 1."""
    if not lo < hi:
        raise DomainError(f"window requires lo < hi, got ({lo}, {hi})")
    w, v = bg.eigensystem()
    _check_level(w, lo)
    _check_level(w, hi)
    inside = np.nonzero((w > lo) & (w < hi))[0]
    return VacuumLine(
        background=bg, lo=float(lo), hi=float(hi), frame=v[:, inside], phase=1.0 + 0.0j
    )


def line_transition(line: VacuumLine, rotation) -> VacuumLine:
    """Rotate the frame by a unitary; the phase picks up its determinant."""
    d = line.frame.shape[1]
    r = as_square(rotation)
    if r.shape[0] != d:
        raise ShapeError(f"rotation must be {d}x{d}, got {r.shape}")
    dev = float(np.max(np.abs(r.conj().T @ r - np.eye(d)))) if d else 0.0
    if dev > UNITARY_TOL:
        raise SymmetryError(f"rotation is not unitary within {UNITARY_TOL}")
    det = determinant(r) if d else 1.0 + 0.0j
    return VacuumLine(
        background=line.background,
        lo=line.lo,
        hi=line.hi,
        frame=line.frame @ r,
        phase=line.phase * det,
    )


def window_dimension(bg: SpectralBackground, lo: float, hi: float) -> int:
    return vacuum_line(bg, lo, hi).frame.shape[1]


def gerbe_triple_check(bg: SpectralBackground, l1: float, l2: float, l3: float) -> complex:
    """Unit-modulus witness comparing the (l1,l3) line with the glued (l1,l2)+(l2,l3) one.

    The witness is the determinant of the change of basis between the two
    frames of the same window; its modulus must be 1 within 1e-10. Window
    dimensions are required to add exactly.
    """
    if not (l1 < l2 < l3):
        raise DomainError(f"levels must increase: got ({l1}, {l2}, {l3})")
    low = vacuum_line(bg, l1, l2)
    high = vacuum_line(bg, l2, l3)
    full = vacuum_line(bg, l1, l3)
    glued = np.hstack([low.frame, high.frame])
    if glued.shape[1] != full.frame.shape[1]:
        raise InternalConsistencyError(
            f"window dimensions do not add: {low.frame.shape[1]}+{high.frame.shape[1]} "
            f"vs {full.frame.shape[1]}"
        )
    if full.frame.shape[1] == 0:
        return 1.0 + 0.0j
    witness = determinant(full.frame.conj().T @ glued)
    if abs(abs(witness) - 1.0) > WITNESS_TOL:
        raise InternalConsistencyError(
            f"witness modulus {abs(witness):.12f} deviates from 1 beyond {WITNESS_TOL}"
        )
    return witness


def vacuum_at_level(space: FockSpace, bg: SpectralBackground, level: float) -> np.ndarray:
    """Fill every eigenmode below `level`, in ascending eigenvalue order."""
    if bg.dim != space.modes:
        raise ShapeError(f"background is {bg.dim}x{bg.dim}, space has {space.modes} modes")
    w, v = bg.eigensystem()
    _check_level(w, level)
    filled = int(np.sum(w < level))
    state = np.zeros(space.dim, dtype=np.complex128)
    state[0] = 1.0
    for i in reversed(range(filled)):
        state = apply_creation(space, v[:, i], state)
    return state
