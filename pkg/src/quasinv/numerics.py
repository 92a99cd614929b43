"""Small dense linear algebra and reproducible random sampling.

Everything here is deterministic: the eigensolver is a cyclic Jacobi
iteration with a fixed rotation order and sign convention, and the random
number generator is counter-based (splitmix64), so a given seed produces
the same sample sequence on every platform and NumPy version.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_STREAM_SALT = np.uint64(0xD1B54A32D192ED03)

# Eigenvector components below this magnitude are treated as zero when
# applying the sign convention.
SIGN_TOL = 1e-12

_JACOBI_OFF_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 64


class ConvergenceError(RuntimeError):
    """Jacobi sweep limit reached; carries the remaining off-diagonal norm."""

    def __init__(self, residual: float):
        super().__init__(f"eigensolver did not converge, off-diagonal norm {residual:.3e}")
        self.residual = residual


def _mix64(z):
    """splitmix64 output function: avalanche a 64-bit counter word."""
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


class RngStream:
    """Counter-based PRNG (splitmix64).

    Word ``j`` of a stream with seed ``s`` is ``mix64(s + (j+1)*GAMMA)``
    where GAMMA = 0x9E3779B97F4A7C15 and mix64 is the splitmix64
    finalizer; all arithmetic is mod 2**64. State is just (seed, counter),
    so sequences are bit-identical everywhere. Uniform doubles take the
    top 53 bits of a word: ``(w >> 11) * 2**-53``. Normals come from
    Box-Muller pairs; ``normals(n)`` consumes 2*ceil(n/2) uniforms.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self._counter = 0

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, counter={self._counter})"

    def _words(self, n: int) -> np.ndarray:
        with np.errstate(over="ignore"):
            idx = np.arange(self._counter + 1, self._counter + n + 1, dtype=np.uint64)
            out = _mix64(np.uint64(self.seed) + idx * _GAMMA)
        self._counter += n
        return out

    def u64(self) -> int:
        """One raw 64-bit word."""
        return int(self._words(1)[0])

    def uniforms(self, n: int) -> np.ndarray:
        """n uniform doubles in [0, 1)."""
        return (self._words(n) >> np.uint64(11)) * 2.0**-53

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def normals(self, n: int) -> np.ndarray:
        """n standard normals (Box-Muller; odd n drops the last sine)."""
        m = (n + 1) // 2
        u = self.uniforms(2 * m)
        out = _box_muller_pairs(u.reshape(m, 2)).reshape(2 * m)
        return out[:n]

    def split(self, n: int) -> list["RngStream"]:
        """n independent substreams; advances this stream by one word."""
        base = self.u64()
        return [substream(base, k) for k in range(n)]


def substream(base: int, index: int) -> RngStream:
    """Stream ``index`` derived from a base word: seed = mix64(base + (index+1)*SALT)."""
    with np.errstate(over="ignore"):
        z = np.uint64(base) + np.uint64((index + 1) & _MASK64) * _STREAM_SALT
        return RngStream(int(_mix64(z)))


def _box_muller_pairs(u: np.ndarray) -> np.ndarray:
    """Map uniform pairs (k, 2) to standard-normal pairs (k, 2)."""
    r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    t = (2.0 * np.pi) * u[:, 1]
    return np.stack([r * np.cos(t), r * np.sin(t)], axis=1)


def ball_samples(rng: RngStream, n: int) -> np.ndarray:
    """n points uniform in the unit ball, shape (n, 3).

    Each point consumes 5 uniforms: 4 for two Box-Muller pairs (the 4th
    normal is dropped) giving the direction, 1 for the radius u**(1/3).
    """
    u = rng.uniforms(5 * n).reshape(n, 5)
    g = np.empty((n, 4))
    g[:, 0:2] = _box_muller_pairs(u[:, 0:2])
    g[:, 2:4] = _box_muller_pairs(u[:, 2:4])
    d = g[:, :3]
    norm = np.linalg.norm(d, axis=1)
    radius = np.cbrt(u[:, 4])
    return d * (radius / norm)[:, None]


def sphere_samples(rng: RngStream, n: int) -> np.ndarray:
    """n points uniform on the unit 2-sphere, shape (n, 3); 4 uniforms each."""
    u = rng.uniforms(4 * n).reshape(n, 4)
    g = np.empty((n, 4))
    g[:, 0:2] = _box_muller_pairs(u[:, 0:2])
    g[:, 2:4] = _box_muller_pairs(u[:, 2:4])
    d = g[:, :3]
    return d / np.linalg.norm(d, axis=1)[:, None]


def sphere4_samples(rng: RngStream, n: int) -> np.ndarray:
    """n points uniform on the unit 3-sphere in R^4, shape (n, 4)."""
    u = rng.uniforms(4 * n).reshape(n, 4)
    g = np.empty((n, 4))
    g[:, 0:2] = _box_muller_pairs(u[:, 0:2])
    g[:, 2:4] = _box_muller_pairs(u[:, 2:4])
    return g / np.linalg.norm(g, axis=1)[:, None]


def sample_ball(rng: RngStream) -> np.ndarray:
    """One point uniform in the unit ball."""
    return ball_samples(rng, 1)[0]


def sample_sphere4(rng: RngStream) -> np.ndarray:
    """One point uniform on the unit 3-sphere."""
    return sphere4_samples(rng, 1)[0]


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    """Flip each column so its first component with |v| > SIGN_TOL is positive."""
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        nz = np.flatnonzero(np.abs(col) > SIGN_TOL)
        if nz.size and col[nz[0]] < 0.0:
            vecs[:, j] = -col
    return vecs


def jacobi_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a small real symmetric matrix by cyclic Jacobi.

    Sweeps rotate away off-diagonal entries in fixed (p, q) order until the
    off-diagonal Frobenius norm drops below 1e-14 (relative to the matrix
    scale), up to 64 sweeps. Returns (eigenvalues descending, eigenvector
    columns) under the deterministic sign convention.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))
    sweeps = 0
    off = _offdiag_norm(a)
    while off > _JACOBI_OFF_TOL * scale:
        if sweeps == _JACOBI_MAX_SWEEPS:
            raise ConvergenceError(off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                colp = v[:, p].copy()
                colq = v[:, q].copy()
                v[:, p] = c * colp - s * colq
                v[:, q] = s * colp + c * colq
        off = _offdiag_norm(a)
        sweeps += 1
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], _fix_signs(v[:, order])


def _offdiag_norm(a: np.ndarray) -> float:
    return float(np.sqrt(2.0 * np.sum(np.tril(a, -1) ** 2)))


def eig_sym4(q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a symmetric 4x4."""
    q = np.asarray(q, dtype=float)
    if q.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise ValueError("matrix has non-finite entries")
    return jacobi_eigh(0.5 * (q + q.T))


def eig_herm4(h: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues (descending) of a Hermitian 4x4 matrix.

    Uses the real embedding [[Re H, -Im H], [Im H, Re H]], whose spectrum
    is that of H with every eigenvalue doubled, and returns each once.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {h.shape}")
    dev = float(np.max(np.abs(h - h.conj().T)))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    re, im = h.real, h.imag
    b = np.block([[re, -im], [im, re]])
    w, _ = jacobi_eigh(0.5 * (b + b.T))
    return w[::2]
