"""Dense complex linear algebra: tensor products, partial transposes, and a
cyclic complex Jacobi eigensolver for Hermitian matrices."""

from dataclasses import dataclass

import numpy as np

MAX_DIM = 1 << 20  # guard against accidental huge Kronecker products


class CovwitError(Exception):
    pass


class DimensionError(CovwitError):
    pass


class ContractError(CovwitError):
    pass


class NumericalError(CovwitError):
    pass


class UnsupportedDimensionError(CovwitError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by every PSD and equality check."""

    psd_tol: float = 1e-9
    eq_tol: float = 1e-10
    jacobi_tol: float = 1e-13
    max_sweeps: int = 64

    def __post_init__(self):
        if min(self.psd_tol, self.eq_tol, self.jacobi_tol) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")


DEFAULT_TOL = Tolerances()


def asmatrix(x):
    """Coerce to a 2-d complex128 array and reject non-finite entries."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={m.ndim}")
    if not np.isfinite(m).all():
        raise ContractError("matrix contains NaN/Inf entries")
    return m


def identity(d):
    return np.eye(d, dtype=complex)


def matrix_unit(i, j, d):
    """e_ij, the d x d matrix unit (0-indexed)."""
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


def flip(d):
    """The flip (swap) operator F = sum_ij e_ij (x) e_ji on C^d (x) C^d."""
    f = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            f[i * d + j, j * d + i] = 1.0
    return f


def kron(a, b):
    """Kronecker product with the lexicographic index convention |i1 i2>."""
    a = asmatrix(a)
    b = asmatrix(b)
    if a.shape[0] * b.shape[0] > MAX_DIM or a.shape[1] * b.shape[1] > MAX_DIM:
        raise DimensionError("Kronecker product dimension overflow")
    return np.kron(a, b)


def _check_dims(x, dims):
    n = int(np.prod(dims))
    if x.shape != (n, n):
        raise DimensionError(f"matrix shape {x.shape} inconsistent with dims {dims}")


def partial_transpose(x, dims, which):
    """Transpose the selected tensor factor of a square matrix.

    dims is the ordered list of subsystem dimensions; which is the 0-based
    factor index.
    """
    x = asmatrix(x)
    dims = list(dims)
    _check_dims(x, dims)
    k = len(dims)
    if not 0 <= which < k:
        raise DimensionError(f"factor index {which} out of range for {k} factors")
    t = x.reshape(dims + dims)
    t = np.swapaxes(t, which, k + which)
    n = x.shape[0]
    return np.ascontiguousarray(t.reshape(n, n))


def partial_trace(x, dims, keep):
    """Trace out every factor not listed in keep (0-based indices)."""
    x = asmatrix(x)
    dims = list(dims)
    _check_dims(x, dims)
    k = len(dims)
    keep = sorted(keep)
    t = x.reshape(dims + dims)
    for ax in reversed([i for i in range(k) if i not in keep]):
        t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    n = int(np.prod([dims[i] for i in keep]))
    return t.reshape(n, n)


def max_abs(x):
    x = np.asarray(x)
    return float(np.abs(x).max()) if x.size else 0.0


def frob(x):
    return float(np.linalg.norm(np.asarray(x)))


def check_hermitian(x, tol=DEFAULT_TOL):
    """Raise ContractError unless x is Hermitian within eq_tol, return (x+x*)/2."""
    x = asmatrix(x)
    if x.shape[0] != x.shape[1]:
        raise DimensionError("Hermitian check requires a square matrix")
    dev = max_abs(x - x.conj().T)
    if dev > tol.eq_tol * (1.0 + max_abs(x)):
        raise ContractError(f"matrix is not Hermitian (deviation {dev:.3e})")
    return (x + x.conj().T) / 2.0


def _offdiag_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def herm_eigvals(x, tol=DEFAULT_TOL):
    """Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi.

    Sweeps 2x2 rotations over all index pairs until the off-diagonal
    Frobenius norm drops below jacobi_tol * ||x||_F.
    """
    a = check_hermitian(x, tol)
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    scale = frob(a)
    if scale == 0.0:
        return np.zeros(n)
    a = a.copy()
    for _ in range(tol.max_sweeps):
        if _offdiag_norm(a) <= tol.jacobi_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                # phase out a[p,q], then a real rotation zeroes the pair:
                # u = [[c, -s], [conj(phase)*s, conj(phase)*c]],  a <- u* a u
                phase = apq / r
                theta = 0.5 * np.arctan2(2.0 * r, (a[p, p] - a[q, q]).real)
                c = np.cos(theta)
                s = np.sin(theta)
                colp = c * a[:, p] + s * np.conj(phase) * a[:, q]
                colq = -s * a[:, p] + c * np.conj(phase) * a[:, q]
                a[:, p] = colp
                a[:, q] = colq
                rowp = c * a[p, :] + s * phase * a[q, :]
                rowq = -s * a[p, :] + c * phase * a[q, :]
                a[p, :] = rowp
                a[q, :] = rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise NumericalError(
            f"Jacobi eigensolver failed to converge in {tol.max_sweeps} sweeps"
        )
    return np.sort(np.diag(a).real)


def eigvals_fast(x, tol=DEFAULT_TOL):
    """Eigenvalues of a Hermitian matrix via LAPACK; same contract checks."""
    return np.linalg.eigvalsh(check_hermitian(x, tol))


def is_psd(x, tol=DEFAULT_TOL):
    """PSD verdict with evidence: (min eig >= -psd_tol * max(1, ||x||_F), min eig)."""
    x = asmatrix(x)
    ev = eigvals_fast(x, tol)
    lo = float(ev[0])
    return lo >= -tol.psd_tol * max(1.0, frob(x)), lo
