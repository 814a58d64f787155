"""Tripartite Werner symmetry: states invariant under U(x)U(x)U and the dual
covariant maps L_sigma indexed by S3 permutations.

An invariant operator is X = sum_sigma a_sigma V_sigma over the six
permutation operators; the dual maps L_sigma have unnormalized Choi matrix
V_sigma.  Positivity, CP, and CCP of coefficient combinations reduce to
scalar inequalities and PSD-ness of a single 2x2 block via the
C (+) C (+) M_2(C) block decomposition of the invariant algebra.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from .certificate import Certificate, tol_dict, verdict_str
from .choi import LinMap
from .linalg import (DEFAULT_TOL, ContractError, DimensionError, flip,
                     identity, matrix_unit)
from .twirl import PERMS, build_V

OMEGA = cmath.exp(2j * cmath.pi / 3)


@dataclass(frozen=True)
class S3Coeffs:
    """Coefficients over the V_sigma basis with the Hermitian reality
    pattern: a_e, a_12, a_13, a_23 real, a_132 = conj(a_123) (never stored)."""

    d: int
    a_e: float
    a_12: float
    a_13: float
    a_23: float
    a_123: complex

    def __post_init__(self):
        if self.d < 3:
            raise DimensionError(
                "d must be >= 3 (at d = 2 the V basis is dependent; "
                "use the quo family)")
        vals = (self.a_e, self.a_12, self.a_13, self.a_23)
        if not all(np.isfinite(v) and np.imag(v) == 0 for v in vals):
            raise ContractError("a_e, a_12, a_13, a_23 must be finite reals")
        if not np.isfinite(complex(self.a_123)):
            raise ContractError("a_123 must be finite")

    @property
    def r(self):
        return complex(self.a_123).real

    @property
    def s(self):
        return complex(self.a_123).imag

    def as_tuple6(self):
        return (self.a_e, self.a_12, self.a_13, self.a_23, self.r, self.s)

    def vector(self):
        """Length-6 complex coefficient vector ordered as PERMS."""
        q = complex(self.a_123)
        return np.array([self.a_e, self.a_12, self.a_13, self.a_23,
                         q, q.conjugate()])

    def scale(self):
        return max(1.0, max(abs(v) for v in self.vector()))

    def scale_by(self, f):
        return S3Coeffs(self.d, f * self.a_e, f * self.a_12, f * self.a_13,
                        f * self.a_23, f * complex(self.a_123))


@dataclass(frozen=True)
class Table2Block:
    """Image of an invariant operator in the C (+) C (+) M_2(C) picture."""

    s1: float
    s2: float
    block: np.ndarray

    def min_margin(self):
        ev = np.linalg.eigvalsh((self.block + self.block.conj().T) / 2)
        return min(self.s1, self.s2, float(ev[0]))


@dataclass(frozen=True)
class W3Extremal:
    type: str           # "I" | "II" | "III"
    params: tuple       # (A, B, C)
    sign: int
    realized: S3Coeffs
    cp: bool
    ccp: bool


def relabel(c: S3Coeffs, tau):
    """Coefficients of V_tau X V_tau: b_sigma = a_{tau sigma tau}."""
    q = complex(c.a_123)
    if tau == "12":
        return S3Coeffs(c.d, c.a_e, c.a_12, c.a_23, c.a_13, q.conjugate())
    if tau == "13":
        return S3Coeffs(c.d, c.a_e, c.a_23, c.a_13, c.a_12, q.conjugate())
    if tau == "23":
        return S3Coeffs(c.d, c.a_e, c.a_13, c.a_12, c.a_23, q.conjugate())
    raise ContractError(f"relabel expects a transposition, got {tau!r}")


def build_L(sigma, d) -> LinMap:
    """The covariant map whose unnormalized Choi matrix is V_sigma."""
    if sigma not in PERMS:
        raise ContractError(f"unknown permutation {sigma!r}")
    eye = identity(d)

    if sigma == "e":
        fn = lambda x: np.trace(x) * np.kron(eye, eye)
    elif sigma == "12":
        fn = lambda x: np.kron(x.T, eye)
    elif sigma == "13":
        fn = lambda x: np.kron(eye, x.T)
    elif sigma == "23":
        f = flip(d)
        fn = lambda x: np.trace(x) * f
    elif sigma == "123":
        def fn(x):
            out = np.zeros((d * d, d * d), dtype=complex)
            o4 = out.reshape(d, d, d, d)
            for j1 in range(d):
                for j2 in range(d):
                    if x[j1, j2] != 0:
                        for j3 in range(d):
                            o4[j2, j3, j3, j1] += x[j1, j2]
            return out
    else:  # "132"
        def fn(x):
            out = np.zeros((d * d, d * d), dtype=complex)
            o4 = out.reshape(d, d, d, d)
            for j1 in range(d):
                for j3 in range(d):
                    if x[j1, j3] != 0:
                        for j2 in range(d):
                            o4[j2, j3, j1, j2] += x[j1, j3]
            return out

    return LinMap(d, d * d, apply_fn=fn, family="werner3-L",
                  name=f"L[{sigma}]")


def build_map(c: S3Coeffs) -> LinMap:
    """L = sum_sigma a_sigma L_sigma as a single structured map."""
    maps = [build_L(s, c.d) for s in PERMS]
    w = c.vector()

    def fn(x):
        out = np.zeros((c.d * c.d, c.d * c.d), dtype=complex)
        for wi, m in zip(w, maps):
            if wi != 0:
                out += wi * m(x)
        return out

    return LinMap(c.d, c.d * c.d, apply_fn=fn, family="werner3-L", coeffs=c)


def invariant_matrix(c: S3Coeffs):
    """X = sum_sigma a_sigma V_sigma on (C^d)^3."""
    out = np.zeros((c.d**3, c.d**3), dtype=complex)
    for wi, s in zip(c.vector(), PERMS):
        if wi != 0:
            out += wi * build_V(s, c.d)
    return out


def positivity_margins_w3(c: S3Coeffs):
    """Slacks of the closed-form positivity inequalities (all >= 0 iff the
    associated map is positive iff L(e_11) is PSD)."""
    ae, a12, a13, a23, r, _ = c.as_tuple6()
    q = complex(c.a_123)
    return (
        ae + a12,
        ae + a13,
        ae - abs(a23),
        ae + a12 + a13 + a23 + 2 * r,
        (ae + a12) * (ae + a13) - abs(a23 + q) ** 2,
    )


def is_positive_w3(c: S3Coeffs, tol=DEFAULT_TOL):
    s = c.scale()
    bands = (s, s, s, s, s * s)
    return all(m >= -tol.psd_tol * b
               for m, b in zip(positivity_margins_w3(c), bands))


def F_iso(c: S3Coeffs) -> Table2Block:
    """Block image of X = sum a_sigma V_sigma; X is PSD iff all blocks are."""
    ae, a12, a13, a23, _, _ = c.as_tuple6()
    q = complex(c.a_123)
    qb = q.conjugate()
    w, wb = OMEGA, OMEGA.conjugate()
    s1 = ae + a12 + a13 + a23 + 2 * c.r
    s2 = ae - (a12 + a13 + a23) + 2 * c.r
    block = np.array([
        [ae + wb * q + w * qb, wb * a12 + w * a13 + a23],
        [w * a12 + wb * a13 + a23, ae + w * q + wb * qb],
    ])
    return Table2Block(float(s1), float(s2), block)


def G_iso(c: S3Coeffs) -> Table2Block:
    """Block image of X^{T_A}; X^{T_A} is PSD iff all blocks are."""
    d = c.d
    ae, a12, a13, a23, r, s = c.as_tuple6()
    q = complex(c.a_123)
    y = np.sqrt(d * d - 1.0) / 2
    s1 = ae + a23
    s2 = ae - a23
    b00 = ae + a23 + (d + 1) / 2 * (a12 + a13 + 2 * r)
    b11 = ae - a23 + (d - 1) / 2 * (a12 + a13 - 2 * r)
    b01 = y * (a12 - a13 - (q - q.conjugate()))
    b10 = y * (a12 - a13 + (q - q.conjugate()))
    block = np.array([[b00, b01], [b10, b11]])
    return Table2Block(float(s1), float(s2), block)


def _block_psd(tb: Table2Block, band):
    return tb.min_margin() >= -band


def is_cp_w3(c: S3Coeffs, tol=DEFAULT_TOL):
    """CP of the map / PSD-ness of the invariant matrix itself."""
    return _block_psd(F_iso(c), tol.psd_tol * c.scale())


def is_ccp_w3(c: S3Coeffs, tol=DEFAULT_TOL):
    """CCP of the map / PSD-ness of the A-partial-transposed matrix."""
    return _block_psd(G_iso(c), tol.psd_tol * c.scale())


def ppt_w3(c: S3Coeffs, tol=DEFAULT_TOL):
    """Three partial-transpose verdicts for the invariant state
    sum a_sigma V_sigma, via S3-conjugation relabelings."""
    return {
        "A-BC": is_ccp_w3(c, tol),
        "B-AC": is_ccp_w3(relabel(c, "12"), tol),
        "C-AB": is_ccp_w3(relabel(c, "13"), tol),
    }


def trace_w3(c: S3Coeffs):
    d = c.d
    return d**3 * c.a_e + d**2 * (c.a_12 + c.a_13 + c.a_23) + 2 * d * c.r


TP_TOL = 1e-12


def _tp_normalize(d, tup, type_name, params, sign):
    ae, a12, a13, a23, r, s = tup
    norm = d * d * ae + d * (a12 + a13 + a23) + 2 * r
    if norm <= TP_TOL:
        raise ContractError(
            f"degenerate trace-preservation normalizer for Type {type_name} "
            f"params {params}")
    f = 1.0 / norm
    return S3Coeffs(d, f * ae, f * a12, f * a13, f * a23,
                    complex(f * r, f * s))


def extremal_w3(type_name, A=0.0, B=0.0, C=0.0, sign=+1, d=3) -> W3Extremal:
    """Extremal trace-preserving positive covariant map of Type I/II/III."""
    if type_name not in ("I", "II", "III"):
        raise ContractError(f"unknown extremal type {type_name!r}")
    if type_name != "I":
        if A < 0 or B < 0 or A * B < C * C - TP_TOL:
            raise ContractError("need A,B >= 0 and AB >= C^2")
    sgn = 1 if sign >= 0 else -1
    ss = sgn * np.sqrt(max(A * B - C * C, 0.0))
    if type_name == "I":
        tup = (1.0, -1.0, -1.0, -1.0, 1.0, 0.0)
    elif type_name == "II":
        tup = (0.0, A, B, 0.0, C, ss)
    else:
        tup = ((A + B + 2 * C) / 2, (A - B - 2 * C) / 2,
               (-A + B - 2 * C) / 2, (A + B + 2 * C) / 2,
               -(A + B) / 2, ss)
    realized = _tp_normalize(d, tup, type_name, (A, B, C), sgn)
    if not is_positive_w3(realized):
        raise ContractError(
            f"Type {type_name} tuple failed the positivity inequalities")
    return W3Extremal(type_name, (A, B, C), sgn, realized,
                      cp=is_cp_w3(realized), ccp=is_ccp_w3(realized))


def witness_L0(d) -> S3Coeffs:
    """The canonical non-decomposable extremal witness (Type III, A=1,B=C=0),
    rescaled to a_e = 1: coefficients (1, 1, -1, 1, -1, 0).  Witness verdicts
    are scale invariant, so the trace-preserving normalization is dropped in
    favor of the canonical integer form."""
    ex = extremal_w3("III", 1.0, 0.0, 0.0, +1, d).realized
    return ex.scale_by(1.0 / ex.a_e)


def rho_t(d, t):
    """A-BC PPT entangled invariant state family; returns (coeffs, matrix)."""
    if d < 3:
        raise DimensionError("d must be >= 3")
    if t <= 0:
        raise ContractError("t must be > 0")
    pf = 1.0 / (d**3 + (t + 1) * d**2 + 2 * t)
    c = S3Coeffs(d, pf * (d + t) / d, 0.0, pf, 0.0, complex(pf * t / d, 0.0))
    return c, invariant_matrix(c)


def t_max(d=3, tol_t=1e-4, t_hi=64.0):
    """Largest t (up to tol_t) for which rho_t stays A-BC PPT, by bisection."""
    def ppt_at(t):
        return ppt_w3(rho_t(d, t)[0])["A-BC"]

    lo, hi = 1e-9, 1.0
    if not ppt_at(lo):
        raise ContractError("rho_t is not A-BC PPT even for tiny t")
    while ppt_at(hi):
        hi *= 2.0
        if hi > t_hi:
            return hi
    while hi - lo > tol_t:
        mid = (lo + hi) / 2
        if ppt_at(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _witness_coeff_grid(d, grid):
    """Coefficient vectors (ordered as PERMS) of the witness family: L0,
    Type I, and Types II/III over a compact (A-B, C, sign) grid at A+B=1."""
    rows = [("L0", witness_L0(d).vector())]
    rows.append(("I", extremal_w3("I", d=d).realized.vector()))
    for u in np.linspace(-1.0, 1.0, grid):
        A, B = (1 + u) / 2, (1 - u) / 2
        cmax = np.sqrt(A * B)
        for C in np.linspace(-cmax, cmax, grid):
            for sign in (+1, -1):
                for tname in ("II", "III"):
                    try:
                        ex = extremal_w3(tname, A, B, C, sign, d)
                    except ContractError:
                        continue
                    rows.append((f"{tname}[{A:.4f},{B:.4f},{C:.4f},{sign:+d}]",
                                 ex.realized.vector()))
    return rows


def state_check(c: S3Coeffs, tol=DEFAULT_TOL):
    """Raise unless the coefficients describe a quantum state."""
    tr = trace_w3(c)
    if abs(tr - 1.0) > tol.eq_tol * c.d**3:
        raise ContractError(f"trace {tr} != 1: not a normalized state")
    if not is_cp_w3(c, tol):
        raise ContractError("coefficient matrix is not PSD: not a state")


def detect_entanglement_w3(c: S3Coeffs, grid=64, tol=DEFAULT_TOL,
                           seed=0) -> Certificate:
    """Witness sweep over extremal covariant positive maps.

    Any witness with (id (x) L*)(rho) acquiring a negative eigenvalue proves
    entanglement across A-BC; a PPT failure proves entanglement too; otherwise
    the verdict is inconclusive at the chosen grid resolution.
    """
    state_check(c, tol)
    d = c.d
    rho = invariant_matrix(c)
    band = tol.psd_tol * max(1.0, float(np.linalg.norm(rho)))

    # (id (x) L_sigma*)(rho) is linear in the witness coefficients
    ks = np.array([build_L(s, d).adjoint().id_tensor(rho, d) for s in PERMS])
    cert = Certificate("werner3", d, {
        "a_e": c.a_e, "a_12": c.a_12, "a_13": c.a_13, "a_23": c.a_23,
        "re_123": c.r, "im_123": c.s,
    }, tolerances=tol_dict(tol), seed=seed)

    ppt = ppt_w3(c, tol)
    for part, ok in ppt.items():
        cert.add_check(f"ppt_{part}", ok)

    rows = _witness_coeff_grid(d, grid)
    coeffs = np.array([v for _, v in rows])
    outs = np.tensordot(coeffs, ks, axes=([1], [0]))
    outs = (outs + np.conj(np.swapaxes(outs, 1, 2))) / 2
    mins = np.linalg.eigvalsh(outs)[:, 0].real

    worst = int(np.argmin(mins))
    cert.witnesses.append({"id": rows[0][0], "min_eig": float(mins[0])})
    if worst != 0:
        cert.witnesses.append({"id": rows[worst][0],
                               "min_eig": float(mins[worst])})
    cert.checks["witness_sweep"] = {
        "verdict": verdict_str(bool(mins.min() >= -band)),
        "evidence": {"count": len(rows), "min_eig": float(mins.min())},
    }
    if mins.min() < -band:
        cert.verdict = "ENTANGLED"
    elif not all(ppt.values()):
        cert.verdict = "NPT-ENTANGLED"
    else:
        cert.verdict = "INCONCLUSIVE-AT-RESOLUTION"
    return cert
