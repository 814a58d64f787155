"""Independent brute-force verifiers: sampled positivity checks and Monte
Carlo Haar twirling.  These deliberately avoid the closed forms they verify.
"""

import time

import numpy as np

from .choi import LinMap
from .linalg import (DEFAULT_TOL, ContractError, DimensionError, is_psd,
                     partial_transpose)
from .twirl import cond_expect, std_bases, twirl_oo


def rng_from(seed):
    return np.random.default_rng(seed)


def random_unitary(rng, d):
    """Haar unitary via QR of a complex Gaussian matrix, with the R diagonal
    phase folded back in so the distribution is exactly Haar."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    q, r = np.linalg.qr(z)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def random_orthogonal(rng, d):
    """Haar orthogonal via QR of a real Gaussian matrix with sign fix."""
    z = rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * np.sign(np.diag(r))


def random_signed_permutation(rng, d):
    p = rng.permutation(d)
    signs = rng.choice([-1.0, 1.0], size=d)
    m = np.zeros((d, d))
    m[p, np.arange(d)] = signs
    return m


def random_pure_state(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def brute_positive_orbit(m: LinMap, tol=DEFAULT_TOL):
    """Positivity via a single orbit representative: valid only for families
    whose symmetry group is transitive on pure input states."""
    if m.family not in ("werner3-L", "quo-M"):
        raise ContractError(
            "orbit oracle requires a transitive family (werner3-L or quo-M); "
            f"got {m.family!r}")
    e11 = np.zeros((m.d_in, m.d_in), dtype=complex)
    e11[0, 0] = 1.0
    return is_psd(m(e11), tol)


def brute_positive_sample(m: LinMap, n=1000, seed=0, extra_vectors=(),
                          tol=DEFAULT_TOL):
    """One-sided sampling oracle: min output eigenvalue over Haar-random pure
    states plus any deterministic vectors.  False is conclusive."""
    rng = rng_from(seed)
    worst = np.inf
    for v in list(extra_vectors) + [random_pure_state(rng, m.d_in)
                                    for _ in range(n)]:
        v = np.asarray(v, dtype=complex)
        out = m(np.outer(v, v.conj()))
        lo = float(np.linalg.eigvalsh((out + out.conj().T) / 2)[0])
        worst = min(worst, lo)
    scale = max(1.0, worst if worst > 0 else -worst)
    return worst >= -tol.psd_tol * max(1.0, scale), worst


def _batched_conjugation_average(x, gens, batch=512):
    """Mean of g x g* over a generator yielding stacked (k, n, n) arrays."""
    acc = np.zeros_like(x)
    total = 0
    for g in gens:
        acc += np.einsum("kij,jl,kml->im", g, x, g.conj(), optimize=True)
        total += g.shape[0]
    return acc / total


def _stack(fn, rng, d, count):
    return np.stack([fn(rng, d) for _ in range(count)])


def haar_twirl_mc(x, family, n=10000, seed=0, d=None, batch=512):
    """Empirical twirl: average of n random-group-element conjugations.

    family: 'hh' (signed permutations S(x)S on d^2), 'uuu' (U(x)U(x)U on
    d^3), 'uubaru' (U(x)Ubar(x)U on d^3), 'oo' (O(x)O on d^2).  Converges to
    the conditional expectation at the Monte Carlo rate ~ n^{-1/2}.
    """
    x = np.asarray(x, dtype=complex)
    nn = x.shape[0]
    if family in ("hh", "oo"):
        if d is None:
            d = round(np.sqrt(nn))
        if d * d != nn:
            raise DimensionError("matrix size is not d^2")
    elif family in ("uuu", "uubaru"):
        if d is None:
            d = round(nn ** (1 / 3))
        if d**3 != nn:
            raise DimensionError("matrix size is not d^3")
    else:
        raise ContractError(f"unknown family {family!r}")

    rng = rng_from(seed)

    def gens():
        left = n
        while left > 0:
            k = min(batch, left)
            left -= k
            if family == "hh":
                s = _stack(random_signed_permutation, rng, d, k).astype(complex)
                yield np.einsum("kab,kcd->kacbd", s, s).reshape(k, nn, nn)
            elif family == "oo":
                o = _stack(random_orthogonal, rng, d, k).astype(complex)
                yield np.einsum("kab,kcd->kacbd", o, o).reshape(k, nn, nn)
            else:
                u = _stack(random_unitary, rng, d, k)
                mid = u.conj() if family == "uubaru" else u
                yield np.einsum("kab,kcd,kef->kacebdf", u, mid,
                                u).reshape(k, nn, nn)

    return _batched_conjugation_average(x, gens(), batch)


def random_hermitian(rng, n, scale=1.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (z + z.conj().T) / 2


def selftest(seed=0, level="quick", out=print):
    """Oracle-agreement suite; returns (all_ok, results) and prints a table."""
    from . import hh, quo, werner3
    from .linalg import herm_eigvals

    if level not in ("quick", "full"):
        raise ContractError("level must be 'quick' or 'full'")
    big = level == "full"
    rng = rng_from(seed)
    results = []

    def check(name, fn):
        t0 = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"exception: {exc!r}"
        results.append((name, bool(ok), detail, time.time() - t0))

    def jacobi_check():
        worst = 0.0
        for _ in range(40 if big else 10):
            n = int(rng.integers(2, 17))
            h = random_hermitian(rng, n)
            dev = np.abs(herm_eigvals(h) - np.linalg.eigvalsh(h)).max()
            worst = max(worst, dev)
        return worst < 1e-9, f"max dev {worst:.2e}"

    check("jacobi-vs-lapack", jacobi_check)

    def hh_region():
        n = 3000 if big else 500
        bad = 0
        for _ in range(n):
            a, b, c = rng.uniform(-2, 2, size=3)
            co = hh.HHCoeffs(3, a, b, c)
            closed = hh.is_cptp(co)
            numeric = is_psd(hh.build_psi(co).choi(normalized=True))[0]
            if closed != numeric and not hh.on_boundary(co):
                bad += 1
        return bad == 0, f"{bad} disagreements / {n}"

    check("hh-cptp-vs-choi", hh_region)

    def hh_witness():
        n = 600 if big else 150
        bad = 0
        for _ in range(n):
            co = _random_cptp_hh(rng, 3)
            cert = hh.decide(co)
            if cert.check_true("ppt") != cert.check_true("separable_choi"):
                bad += 1
        return bad == 0, f"{bad} disagreements / {n}"

    check("hh-ppt-vs-witness", hh_witness)

    def w3_pos():
        n = 3000 if big else 500
        bad = 0
        for _ in range(n):
            c = _random_w3(rng, 3)
            if werner3.is_positive_w3(c) != brute_positive_orbit(
                    werner3.build_map(c))[0]:
                if _w3_margin_interior(c):
                    bad += 1
        return bad == 0, f"{bad} disagreements / {n}"

    check("werner3-positivity-oracle", w3_pos)

    def table2():
        n = 1000 if big else 200
        bad = 0
        for _ in range(n):
            c = _random_w3(rng, 3)
            x = werner3.invariant_matrix(c)
            if werner3.is_cp_w3(c) != is_psd(x)[0]:
                bad += 1
            xa = partial_transpose(x, [3, 3, 3], 0)
            if werner3.is_ccp_w3(c) != is_psd(xa)[0]:
                bad += 1
        return bad == 0, f"{bad} disagreements / {2*n}"

    check("table2-blocks-vs-psd", table2)

    def rho_t_cert():
        c, _ = werner3.rho_t(3, 1.0)
        cert = werner3.detect_entanglement_w3(c, grid=8)
        lo = cert.witnesses[0]["min_eig"]
        ok = (cert.verdict == "ENTANGLED"
              and abs(lo + (2 / 3) / 47) < 1e-9
              and cert.check_true("ppt_A-BC")
              and not cert.check_true("ppt_B-AC"))
        return ok, f"L0 min_eig {lo:.6e}"

    check("rho-t-certificate", rho_t_cert)

    def quo_pos():
        n = 3000 if big else 500
        bad = 0
        for d in (2, 3):
            for _ in range(n // 2):
                c = _random_quo(rng, d)
                if is_positive_quo_strict(c) != brute_positive_orbit(
                        quo.build_map(c))[0]:
                    if _quo_margin_interior(c):
                        bad += 1
        return bad == 0, f"{bad} disagreements / {n}"

    check("quo-positivity-oracle", quo_pos)

    def quo_extremal():
        grid = 12 if big else 6
        bad = 0
        for d in (2, 3):
            types = ("III", "IV") if d == 3 else ("I'", "II'")
            for u in np.linspace(-1, 1, grid):
                aa, bb = (1 + u) / 2, (1 - u) / 2
                cmax = np.sqrt(aa * bb)
                for cc in np.linspace(-cmax, cmax, grid):
                    for sign in (1, -1):
                        for t in types:
                            try:
                                ex = quo.extremal_quo(t, aa, bb, cc, sign, d)
                            except ContractError:
                                continue
                            if not (ex.cp or ex.ccp):
                                bad += 1
        return bad == 0, f"{bad} non-CP-non-CCP extremals"

    check("quo-extremals-cp-or-ccp", quo_extremal)

    def twirl_laws():
        worst = 0.0
        for d in (2, 3):
            for name, basis in std_bases(d).items():
                x = random_hermitian(rng, basis.dim)
                p1 = cond_expect(x, basis)
                p2 = cond_expect(p1, basis)
                worst = max(worst, np.abs(p1 - p2).max(),
                            abs(np.trace(p1) - np.trace(x)))
        return worst < 1e-9, f"max dev {worst:.2e}"

    check("twirl-projector-laws", twirl_laws)

    def mc_twirl():
        d = 3
        n = 100000 if big else 20000
        x = random_hermitian(rng, d**3)
        emp = haar_twirl_mc(x, "uuu", n=n, seed=seed + 1)
        exact = cond_expect(x, std_bases(d)["uuu"])
        dev = np.abs(emp - exact).max()
        return dev < (1e-2 if big else 5e-2) * max(1.0, np.abs(x).max()), \
            f"max dev {dev:.2e} at n={n}"

    check("mc-haar-twirl", mc_twirl)

    def oo_identity():
        ok = all(hh.wh_w2_identity(d) for d in (3, 4, 5, 6))
        return ok, "d in 3..6"

    check("oo-twirl-identities", oo_identity)

    all_ok = all(ok for _, ok, _, _ in results)
    if out is not None:
        width = max(len(n) for n, _, _, _ in results)
        for name, ok, detail, dt in results:
            out(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  "
                f"({dt:5.1f}s)  {detail}")
        out(f"selftest: {'PASS' if all_ok else 'FAIL'} "
            f"({len(results)} checks, seed={seed}, level={level})")
    return all_ok, results


def _random_cptp_hh(rng, d):
    from . import hh

    while True:
        a = rng.uniform(0, d / (d - 1))
        b = rng.uniform(a / d - 1 / (d - 1), 1 - (d - 1) * a / d)
        c = rng.uniform(-a / d, a / d)
        co = hh.HHCoeffs(d, a, b, c)
        if hh.is_cptp(co):
            return co


def _random_w3(rng, d):
    from .werner3 import S3Coeffs

    v = rng.uniform(-1, 1, size=6)
    return S3Coeffs(d, v[0], v[1], v[2], v[3], complex(v[4], v[5]))


def _random_quo(rng, d):
    from .quo import QuoCoeffs

    v = rng.uniform(-1, 1, size=6)
    return QuoCoeffs(d, v[0], v[1], v[2], v[3], complex(v[4], v[5]))


def is_positive_quo_strict(c):
    from .quo import is_positive_quo

    return is_positive_quo(c)


def _w3_margin_interior(c, band=1e-7):
    from .werner3 import positivity_margins_w3

    return all(abs(m) > band for m in positivity_margins_w3(c))


def _quo_margin_interior(c, band=1e-7):
    from .quo import positivity_margins_quo

    return all(abs(m) > band for m in positivity_margins_quo(c))
