"""The signed-permutation (hyperoctahedral) covariant channel family.

psi_{a,b,c} = a*psi0 + b*psi1 + c*psi2 + (1-a-b-c)*psi3 where
psi0(X) = Tr(X)/d * Id (depolarizing), psi1 = id, psi2 = transpose,
psi3 = diagonal pinching.  Every map in the family is unital and trace
preserving; membership in the positive / CP / CCP / PPT cones is decided by
explicit linear inequalities in (a, b, c), and PPT coincides with
entanglement breaking on this family.
"""

from dataclasses import dataclass

import numpy as np

from .certificate import Certificate, tol_dict, verdict_str
from .choi import LinMap
from .linalg import (DEFAULT_TOL, ContractError, DimensionError,
                     UnsupportedDimensionError, identity, is_psd)

CONSTRAINT_TAGS = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class HHCoeffs:
    """Coefficients (a, b, c) of psi_{a,b,c}; the psi3 weight is 1-a-b-c."""

    d: int
    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.d < 2:
            raise DimensionError("d must be >= 2")
        if not all(np.isfinite([self.a, self.b, self.c])):
            raise ContractError("coefficients must be finite")

    def swapped(self):
        """Transpose-composed coefficients: psi_{a,b,c} o T = psi_{a,c,b}."""
        return HHCoeffs(self.d, self.a, self.c, self.b)


@dataclass(frozen=True)
class DOCTriple:
    """The (A, B, C) matrix triple of the diagonal-orthogonal-covariant form."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray


@dataclass(frozen=True)
class HHExtremals:
    """Extremal catalogue at dimension d."""

    d: int
    cp_vertices: tuple      # 4 extremal channels (Choi PSD)
    ccp_vertices: tuple     # their transpose compositions
    ppt_vertices: tuple     # 8 vertices of the PPT channel polytope
    wh_vertices: tuple      # 4 extremal PPT channels of the b+c subfamily


def build_psi(co: HHCoeffs) -> LinMap:
    d, a, b, c = co.d, co.a, co.b, co.c
    w = 1.0 - a - b - c

    def apply_fn(x):
        out = (a * np.trace(x) / d) * identity(d)
        out += b * x + c * x.T
        out += w * np.diag(np.diag(x))
        return out

    return LinMap(d, d, apply_fn=apply_fn, family="hh", coeffs=co,
                  name=f"psi[{a},{b},{c}]")


def positivity_margins(co: HHCoeffs):
    """Slack of the six positivity inequalities; all >= 0 iff positive."""
    d, a, b, c = co.d, co.a, co.b, co.c
    return {
        1: min(a, d / (d - 1) - a),
        2: 1.0 - ((d - 2) * a / d + b + c),
        3: 1.0 - ((d - 2) * a / d + abs(b - c)),
        4: b + c + 1.0 / (d - 1),
        5: 1.0 - (b - (d - 1) * c),
        6: 1.0 - (c - (d - 1) * b),
    }


def _band(co: HHCoeffs, tol):
    return tol.psd_tol * max(1.0, abs(co.a), abs(co.b), abs(co.c))


def is_positive(co: HHCoeffs, tol=DEFAULT_TOL):
    """Positivity of psi_{a,b,c} for d >= 3; returns (bool, violated tag)."""
    if co.d < 3:
        raise UnsupportedDimensionError(
            "positivity of this family is only characterized for d >= 3")
    band = _band(co, tol)
    for tag, m in positivity_margins(co).items():
        if m < -band:
            return False, tag
    return True, None


def cptp_margins(co: HHCoeffs):
    d, a, b, c = co.d, co.a, co.b, co.c
    return (
        a,
        d / (d - 1) - a,
        b - (a / d - 1.0 / (d - 1)),
        1.0 - (d - 1) * a / d - b,
        c + a / d,
        a / d - c,
    )


def is_cptp(co: HHCoeffs, tol=DEFAULT_TOL):
    band = _band(co, tol)
    return all(m >= -band for m in cptp_margins(co))


def is_ccp(co: HHCoeffs, tol=DEFAULT_TOL):
    return is_cptp(co.swapped(), tol)


def is_ppt(co: HHCoeffs, tol=DEFAULT_TOL):
    return is_cptp(co, tol) and is_ccp(co, tol)


def on_boundary(co: HHCoeffs, tol=DEFAULT_TOL):
    """True if any CP/CCP constraint is within the tolerance band of tight."""
    band = _band(co, tol)
    ms = cptp_margins(co) + cptp_margins(co.swapped())
    return any(abs(m) <= band for m in ms)


def counterexample_vector(tag, d):
    """Unit vector whose image under psi acquires a negative eigenvalue when
    the tagged positivity inequality fails."""
    if tag not in CONSTRAINT_TAGS:
        raise ContractError(f"invalid constraint tag {tag!r}")
    v = np.zeros(d, dtype=complex)
    if tag == 1:
        v[0] = 1.0
    elif tag == 2:
        v[0] = v[1] = 1.0 / np.sqrt(2)
    elif tag == 3:
        v[0] = 1.0 / np.sqrt(2)
        v[1] = 1j / np.sqrt(2)
    elif tag == 4:
        v[:] = 1.0 / np.sqrt(d)
    else:  # tags 5 and 6 share the uniform phase vector
        v[:] = np.exp(2j * np.pi * np.arange(d) / d) / np.sqrt(d)
    return v


def extremals(d) -> HHExtremals:
    if d < 2:
        raise DimensionError("d must be >= 2")
    e = d / (d - 1)
    f = 1.0 / (d - 1)
    cp = (
        HHCoeffs(d, 0.0, 1.0, 0.0),
        HHCoeffs(d, e, 0.0, f),
        HHCoeffs(d, 0.0, -f, 0.0),
        HHCoeffs(d, e, 0.0, -f),
    )
    ccp = tuple(v.swapped() for v in cp)
    g = 1.0 / (2 * (d - 1))
    h = 1.0 / (d * (d - 1))
    ppt = (
        (0.0, 0.0, 0.0),
        (d * g, g, -g),
        (d * g, -g, g),
        (d * g, -g, -g),
        (1.0, 1.0 / d, 1.0 / d),
        (1.0, 1.0 / d, -h),
        (1.0, -h, 1.0 / d),
        (e, 0.0, 0.0),
    )
    q = d * d + d - 2.0
    wh = (
        (1.0 / (d + 2), 1.0 / (d + 2)),
        (-2.0 / q, d / q),
        (-1.0 / q, -1.0 / q),
        (d / q, -2.0 / q),
    )
    return HHExtremals(d, cp, ccp, ppt, wh)


def wh_vertices(d):
    """The four extremal PPT channels of the a = 1-b-c subfamily, as
    HHCoeffs."""
    return tuple(HHCoeffs(d, 1.0 - b - c, b, c)
                 for b, c in extremals(d).wh_vertices)


def wh_w2_identity(d, tol=DEFAULT_TOL):
    """Two separability identities behind PPT=EB on the
    orthogonal-covariant subfamily:
    (i) the Choi of the w2 vertex channel is the O(x)O twirl of a product
        pure state, and
    (ii) the A-matrix of the w1 vertex splits as a rank-1 plus diagonal
        part with nonnegative entries."""
    from .twirl import twirl_oo

    w = wh_vertices(d)
    c2 = build_psi(w[1]).choi(normalized=True)
    xi = np.zeros(d, dtype=complex)
    xi[0] = 1.0 / np.sqrt(2)
    xi[1] = 1j / np.sqrt(2)
    psi = np.kron(xi, xi)
    tw = twirl_oo(np.outer(psi, psi.conj()), d)
    ok1 = np.abs(c2 - tw).max() <= 10 * tol.eq_tol

    j = np.ones((d, d))
    a1 = (j + 2 * np.eye(d)) / (d + 2)
    v = np.ones(d)
    decomp = np.outer(v, v) / (d + 2) + 2 * np.eye(d) / (d + 2)
    ok2 = np.abs(a1 - decomp).max() <= tol.eq_tol
    return ok1 and ok2


def doc_triple(co: HHCoeffs) -> DOCTriple:
    """The diagonal-orthogonal-covariant (A, B, C) form of psi_{a,b,c}."""
    d, a, b, c = co.d, co.a, co.b, co.c
    j = np.ones((d, d), dtype=complex)
    eye = identity(d)
    diag = a / d + 1.0 - a
    amat = (a / d) * j + (1.0 - a) * eye
    bmat = b * (j - eye) + diag * eye
    cmat = c * (j - eye) + diag * eye
    return DOCTriple(amat, bmat, cmat)


def doc_is_cptp(t: DOCTriple, tol=DEFAULT_TOL):
    """CPTP test in the (A, B, C) form: A entrywise nonnegative with unit
    column sums, B PSD, C Hermitian with |C_ij|^2 <= A_ij A_ji."""
    a, b, c = t.A, t.B, t.C
    band = tol.psd_tol * max(1.0, np.abs(a).max())
    if np.min(a.real) < -band or np.abs(a.imag).max() > tol.eq_tol:
        return False
    if np.abs(a.real.sum(axis=0) - 1.0).max() > tol.eq_tol * a.shape[0]:
        return False
    if not is_psd(b, tol)[0]:
        return False
    if np.abs(c - c.conj().T).max() > tol.eq_tol:
        return False
    lim = a.real * a.real.T + band
    return bool(np.all(np.abs(c) ** 2 <= lim + 2 * band * np.abs(c)))


def decide(co: HHCoeffs, tol=DEFAULT_TOL, seed=0) -> Certificate:
    """Full certificate for a channel psi_{a,b,c} (d >= 3, CPTP required).

    EB equals PPT on this family; the certificate additionally sweeps all 8
    extremal positive maps as witnesses against the normalized Choi and
    checks that the witness verdict reproduces the PPT verdict.
    """
    if co.d < 3:
        raise UnsupportedDimensionError("decide requires d >= 3")
    if not is_cptp(co, tol):
        raise ContractError(
            "decide certifies channels; input is not CPTP "
            "(see is_cptp/is_positive for region membership)")
    cert = Certificate("hh", co.d, {"a": co.a, "b": co.b, "c": co.c},
                       tolerances=tol_dict(tol), seed=seed)
    boundary = on_boundary(co, tol)
    pos, tag = is_positive(co, tol)
    cert.add_check("positive", pos, **({} if tag is None else {"tag": tag}))
    cert.add_check("cp", True, boundary=boundary)
    ccp = is_ccp(co, tol)
    cert.add_check("ccp", ccp, boundary=boundary and ccp)
    ppt = is_ppt(co, tol)
    cert.add_check("ppt", ppt, boundary=boundary and ppt)
    cert.add_check("eb", ppt, boundary=boundary and ppt)

    rho = build_psi(co).choi(normalized=True)
    ext = extremals(co.d)
    band = tol.psd_tol * max(1.0, float(np.linalg.norm(rho)))
    all_pass = True
    for kind, vs in (("cp", ext.cp_vertices), ("ccp", ext.ccp_vertices)):
        for i, v in enumerate(vs, start=1):
            w = build_psi(v)
            lo = float(np.linalg.eigvalsh(w.id_tensor(rho, co.d))[0])
            cert.witnesses.append(
                {"id": f"extremal-{kind}-{i}",
                 "params": {"a": v.a, "b": v.b, "c": v.c},
                 "min_eig": lo})
            if lo < -band:
                all_pass = False
    cert.checks["separable_choi"] = {
        "verdict": verdict_str(all_pass, boundary and all_pass),
        "evidence": {"min_eig": min(w["min_eig"] for w in cert.witnesses)},
    }
    cert.verdict = "EB" if ppt else "NOT-EB"
    return cert
