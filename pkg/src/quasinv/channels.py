"""Qubit channel representations and conversions.

A channel is held either as a Kraus set {E_k} acting by
rho -> sum_k E_k rho E_k^dag, or as its affine action on Bloch vectors,
r -> M r + c, with M_ij = Tr(sigma_i E(sigma_j))/2 and
c_i = Tr(sigma_i E(I))/2. Complete positivity is checked through the
Choi matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import RngStream, eig_herm4, jacobi_eigh

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
IDENTITY2 = np.eye(2, dtype=complex)

TP_TOL = 1e-10
CPTP_TOL = 1e-9
BLOCH_TOL = 1e-12
UNIT_NORM_TOL = 1e-12


def check_bloch(r, tol: float = BLOCH_TOL) -> np.ndarray:
    """Validate and return a Bloch vector (real 3-vector inside the ball)."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"Bloch vector must have shape (3,), got {r.shape}")
    if not np.all(np.isfinite(r)):
        raise ValueError("Bloch vector has non-finite entries")
    norm = float(np.linalg.norm(r))
    if norm > 1.0 + tol:
        raise ValueError(f"Bloch vector leaves the unit ball: |r| = {norm}")
    return r


@dataclass
class KrausChannel:
    """A channel given by a nonempty trace-preserving set of 2x2 Kraus operators."""

    operators: list

    def __post_init__(self):
        ops = [np.asarray(op, dtype=complex) for op in self.operators]
        if not ops:
            raise ValueError("Kraus channel needs at least one operator")
        for op in ops:
            if op.shape != (2, 2):
                raise ValueError(f"Kraus operators must be 2x2, got {op.shape}")
            if not np.all(np.isfinite(op)):
                raise ValueError("Kraus operator has non-finite entries")
        residual = _tp_residual(ops)
        if residual > TP_TOL:
            raise ValueError(f"Kraus set is not trace preserving: residual {residual:.3e}")
        self.operators = ops

    def tp_residual(self) -> float:
        """Frobenius norm of sum_k E_k^dag E_k - I."""
        return _tp_residual(self.operators)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Apply the channel to an arbitrary 2x2 matrix."""
        x = np.asarray(x, dtype=complex)
        out = np.zeros((2, 2), dtype=complex)
        for op in self.operators:
            out += op @ x @ op.conj().T
        return out


def _tp_residual(ops) -> float:
    acc = np.zeros((2, 2), dtype=complex)
    for op in ops:
        acc += op.conj().T @ op
    return float(np.linalg.norm(acc - IDENTITY2))


@dataclass
class AffineChannel:
    """Bloch-vector action r -> m r + c of a trace-preserving qubit map."""

    m: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        c = np.asarray(self.c, dtype=float)
        if m.shape != (3, 3) or c.shape != (3,):
            raise ValueError(f"need m (3,3) and c (3,), got {m.shape} and {c.shape}")
        if not (np.all(np.isfinite(m)) and np.all(np.isfinite(c))):
            raise ValueError("affine data has non-finite entries")
        cnorm = float(np.linalg.norm(c))
        if cnorm > 1.0 + BLOCH_TOL:
            raise ValueError(f"translation vector outside the ball: |c| = {cnorm}")
        gram_eigs, _ = jacobi_eigh(m.T @ m)
        smax = float(np.sqrt(max(gram_eigs[0], 0.0)))
        if smax > 1.0 + CPTP_TOL:
            raise ValueError(f"largest singular value of m is {smax} > 1")
        self.m = m
        self.c = c


def identity_channel() -> AffineChannel:
    return AffineChannel(np.eye(3), np.zeros(3))


def kraus_to_affine(k: KrausChannel) -> AffineChannel:
    """Affine (m, c) of a Kraus channel: m_ij = Tr(s_i E(s_j))/2, c_i = Tr(s_i E(I))/2."""
    if k.tp_residual() > TP_TOL:
        raise ValueError("Kraus set is not trace preserving")
    m = np.empty((3, 3))
    for j in range(3):
        out = k.evaluate(PAULIS[j])
        for i in range(3):
            m[i, j] = 0.5 * np.trace(PAULIS[i] @ out).real
    e_id = k.evaluate(IDENTITY2)
    c = np.array([0.5 * np.trace(PAULIS[i] @ e_id).real for i in range(3)])
    return AffineChannel(m, c)


def apply(e: AffineChannel, r) -> np.ndarray:
    """Image m r + c of a Bloch vector under the channel."""
    return e.m @ check_bloch(r) + e.c


def compose(e2: AffineChannel, e1: AffineChannel) -> AffineChannel:
    """Affine form of e2 after e1: (m2 m1, m2 c1 + c2)."""
    return AffineChannel(e2.m @ e1.m, e2.m @ e1.c + e2.c)


@dataclass
class UnitaryParams:
    """Unitary V = x0 I + i x.sigma with x0^2 + |x|^2 = 1."""

    x0: float
    xvec: np.ndarray

    def __post_init__(self):
        self.x0 = float(self.x0)
        xvec = np.asarray(self.xvec, dtype=float)
        if xvec.shape != (3,):
            raise ValueError(f"x must have shape (3,), got {xvec.shape}")
        norm2 = self.x0 * self.x0 + float(xvec @ xvec)
        if abs(norm2 - 1.0) > UNIT_NORM_TOL:
            raise ValueError(f"(x0, x) is not unit length: |x|^2 = {norm2}")
        self.xvec = xvec

    @classmethod
    def from_vector(cls, x4) -> "UnitaryParams":
        x4 = np.asarray(x4, dtype=float)
        if x4.shape != (4,):
            raise ValueError(f"expected a 4-vector, got shape {x4.shape}")
        return cls(x4[0], x4[1:])

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([[self.x0], self.xvec])


def unitary_matrix(u: UnitaryParams) -> np.ndarray:
    """The 2x2 matrix x0 I + i (x1 X + x2 Y + x3 Z)."""
    x = u.xvec
    return u.x0 * IDENTITY2 + 1j * (x[0] * SIGMA_X + x[1] * SIGMA_Y + x[2] * SIGMA_Z)


def unitary_to_affine(u: UnitaryParams) -> AffineChannel:
    """Rotation matrix of the conjugation rho -> V rho V^dag on Bloch vectors."""
    x0 = u.x0
    x1, x2, x3 = u.xvec
    m = np.array(
        [
            [
                1.0 - 2.0 * (x2 * x2 + x3 * x3),
                2.0 * (x0 * x3 + x1 * x2),
                -2.0 * (x0 * x2 - x1 * x3),
            ],
            [
                -2.0 * (x0 * x3 - x1 * x2),
                1.0 - 2.0 * (x1 * x1 + x3 * x3),
                2.0 * (x0 * x1 + x2 * x3),
            ],
            [
                2.0 * (x0 * x2 + x1 * x3),
                -2.0 * (x0 * x1 - x2 * x3),
                1.0 - 2.0 * (x1 * x1 + x2 * x2),
            ],
        ]
    )
    return AffineChannel(m, np.zeros(3))


def _affine_evaluate(e: AffineChannel, x: np.ndarray) -> np.ndarray:
    """Channel action on a 2x2 matrix reconstructed from the affine data.

    Decompose x = (Tr x) I/2 + sum_j Tr(s_j x) s_j / 2; the map sends I to
    I + c.sigma and s_j to sum_i m_ij s_i (trace preservation is built in).
    """
    t0 = np.trace(x)
    out = 0.5 * t0 * (IDENTITY2 + e.c[0] * SIGMA_X + e.c[1] * SIGMA_Y + e.c[2] * SIGMA_Z)
    for j in range(3):
        tj = np.trace(PAULIS[j] @ x)
        img = e.m[0, j] * SIGMA_X + e.m[1, j] * SIGMA_Y + e.m[2, j] * SIGMA_Z
        out += 0.5 * tj * img
    return out


def choi(e: AffineChannel) -> np.ndarray:
    """Choi matrix sum_ij |i><j| (x) E(|i><j|); Hermitian, trace 2."""
    c = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            eij = np.zeros((2, 2), dtype=complex)
            eij[i, j] = 1.0
            c += np.kron(eij, _affine_evaluate(e, eij))
    return c


@dataclass
class CptpReport:
    """Physicality check: trace preservation plus Choi positivity."""

    tp_exact: bool
    tp_residual: float | None
    min_choi_eigenvalue: float
    passed: bool = field(init=False)

    def __post_init__(self):
        tp_ok = self.tp_exact or self.tp_residual <= CPTP_TOL
        self.passed = bool(tp_ok and self.min_choi_eigenvalue >= -CPTP_TOL)


def validate_cptp(channel) -> CptpReport:
    """CPTP report for a KrausChannel or AffineChannel.

    Affine inputs are trace preserving by construction; Kraus inputs carry
    their completeness residual. Complete positivity is the smallest Choi
    eigenvalue being >= -1e-9.
    """
    if isinstance(channel, KrausChannel):
        residual = channel.tp_residual()
        affine = kraus_to_affine(channel)
        tp_exact = False
    elif isinstance(channel, AffineChannel):
        residual = None
        affine = channel
        tp_exact = True
    else:
        raise TypeError(f"expected KrausChannel or AffineChannel, got {type(channel)!r}")
    min_eig = float(eig_herm4(choi(affine))[-1])
    return CptpReport(tp_exact=tp_exact, tp_residual=residual, min_choi_eigenvalue=min_eig)


def _inv_sqrt_2x2(h: np.ndarray) -> np.ndarray:
    """Closed-form H^(-1/2) for a positive-definite Hermitian 2x2 matrix."""
    tr = float(np.trace(h).real)
    det = float((h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]).real)
    if det <= 0.0 or tr <= 0.0:
        raise np.linalg.LinAlgError("matrix is not positive definite")
    s = np.sqrt(det)
    t = np.sqrt(tr + 2.0 * s)
    sqrt_h = (h + s * IDENTITY2) / t
    # invert via the 2x2 adjugate; det(sqrt_h) = s
    return np.array([[sqrt_h[1, 1], -sqrt_h[0, 1]], [-sqrt_h[1, 0], sqrt_h[0, 0]]]) / s


def random_channel(rng: RngStream, n_kraus: int) -> KrausChannel:
    """Random CPTP channel with n_kraus operators (1..4).

    Draws a (2*n_kraus) x 2 complex standard-normal matrix G, orthonormalizes
    its columns as K = G (G^dag G)^(-1/2), and slices K into stacked 2x2
    blocks; K^dag K = I makes the set trace preserving. n_kraus = 1 yields a
    Haar-random unitary channel.
    """
    if not 1 <= int(n_kraus) <= 4:
        raise ValueError(f"n_kraus must be in 1..4, got {n_kraus}")
    n_kraus = int(n_kraus)
    rows = 2 * n_kraus
    for _ in range(8):
        vals = rng.normals(2 * rows * 2)
        g = vals[0::2].reshape(rows, 2) + 1j * vals[1::2].reshape(rows, 2)
        h = g.conj().T @ g
        try:
            k = g @ _inv_sqrt_2x2(h)
        except np.linalg.LinAlgError:
            continue
        return KrausChannel([k[2 * i : 2 * i + 2] for i in range(n_kraus)])
    raise RuntimeError("could not draw a non-singular Gaussian matrix")


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance between 2x2 matrices minimized over a global phase."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    overlap = np.trace(a.conj().T @ b)
    if abs(overlap) > 0.0:
        b = b * (abs(overlap) / overlap)
    return float(np.linalg.norm(a - b))
