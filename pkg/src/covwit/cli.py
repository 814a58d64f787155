"""covwit command-line front end.

Subcommands: certify {hh|werner3|quo}, state rho-t, witness apply, twirl,
regions hh, sweep hh, selftest.  Exit codes: 0 success, 1 invalid input,
2 numerical failure.
"""

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import __version__, hh, oracle, quo, serialize, twirl, werner3
from .choi import LinMap
from .linalg import (ContractError, CovwitError, DimensionError,
                     NumericalError, Tolerances, UnsupportedDimensionError)


def parse_number(text):
    """Decimal or exact rational (p/q) input, reduced before conversion."""
    text = text.strip()
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ContractError(f"cannot parse number {text!r}") from exc


def parse_coeffs(text):
    """Six comma-separated numbers ae,a12,a13,a23,re123,im123."""
    parts = [parse_number(p) for p in text.split(",")]
    if len(parts) != 6:
        raise ContractError(
            f"--coeffs needs 6 comma-separated values, got {len(parts)}")
    return parts


def make_tol(args):
    kw = {}
    if getattr(args, "tol_psd", None) is not None:
        kw["psd_tol"] = args.tol_psd
    if getattr(args, "tol_eq", None) is not None:
        kw["eq_tol"] = args.tol_eq
    try:
        return Tolerances(**kw)
    except ValueError as exc:
        raise ContractError(str(exc)) from exc


def emit_certificate(cert, args):
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(cert.to_json())
    print(cert.summary())


def cmd_certify(args):
    tol = make_tol(args)
    if args.family == "hh":
        co = hh.HHCoeffs(args.d, parse_number(args.a), parse_number(args.b),
                         parse_number(args.c))
        cert = hh.decide(co, tol=tol, seed=args.seed)
    elif args.family == "werner3":
        v = parse_coeffs(args.coeffs)
        c = werner3.S3Coeffs(args.d, v[0], v[1], v[2], v[3],
                             complex(v[4], v[5]))
        cert = werner3.detect_entanglement_w3(c, grid=args.grid, tol=tol,
                                              seed=args.seed)
    else:
        v = parse_coeffs(args.coeffs)
        c = quo.QuoCoeffs(args.d, v[0], v[1], v[2], v[3], complex(v[4], v[5]))
        cert = quo.decide_quo(c, grid=args.grid, tol=tol, seed=args.seed)
    emit_certificate(cert, args)
    return 0


def cmd_state(args):
    c, rho = werner3.rho_t(args.d, parse_number(args.t))
    if args.out:
        serialize.write_matrix(rho, args.out)
    print(f"rho_t  d={args.d}  t={args.t}")
    print(f"coeffs: a_e={c.a_e!r} a_12={c.a_12!r} a_13={c.a_13!r} "
          f"a_23={c.a_23!r} a_123={complex(c.a_123)!r}")
    print(f"trace: {werner3.trace_w3(c)!r}")
    if args.out:
        print(f"wrote {rho.shape[0]}x{rho.shape[1]} matrix to {args.out}")
    return 0


def map_from_file(path):
    obj = serialize.load_json(path)
    if "choi_unnormalized" in obj:
        c = serialize.matrix_from_obj(obj["choi_unnormalized"])
        return LinMap(int(obj["d_in"]), int(obj["d_out"]), choi_unnorm=c)
    fam = obj.get("family")
    co = obj.get("coeffs")
    if fam == "hh":
        return hh.build_psi(hh.HHCoeffs(int(obj["d"]), co["a"], co["b"],
                                        co["c"]))
    if fam == "werner3-L":
        return werner3.build_map(werner3.S3Coeffs(
            int(obj["d"]), co["a_e"], co["a_12"], co["a_13"], co["a_23"],
            complex(co["re_123"], co.get("im_123", 0.0))))
    if fam == "quo-M":
        return quo.build_map(quo.QuoCoeffs(
            int(obj["d"]), co["a_e"], co["a_12"], co["a_13"], co["a_23"],
            complex(co["re_123"], co.get("im_123", 0.0))))
    raise ContractError(f"unrecognized map JSON in {path}")


def cmd_witness(args):
    w = map_from_file(args.witness)
    rho = serialize.read_matrix(args.state)
    if args.adjoint:
        w = w.adjoint()
    n = rho.shape[0]
    if n % w.d_in != 0:
        raise DimensionError(
            f"state dimension {n} is not a multiple of map input {w.d_in}")
    d_id = n // w.d_in
    out = w.id_tensor(rho, d_id)
    ev = np.linalg.eigvalsh((out + out.conj().T) / 2)
    print(f"min_eig: {float(ev[0])!r}")
    print(f"max_eig: {float(ev[-1])!r}")
    if args.out:
        serialize.write_matrix(out, args.out)
    return 0


def cmd_twirl(args):
    x = serialize.read_matrix(args.matrix_file)
    n = x.shape[0]
    if args.family == "oo":
        d = round(np.sqrt(n))
        if d * d != n:
            raise DimensionError("matrix size is not d^2")
        out = twirl.twirl_oo(x, d)
        pr = twirl.oo_projections(d)
        coeffs = [float(np.real(np.trace(p @ x))) for p in (pr.P1, pr.P2,
                                                            pr.P3)]
        res = float(np.linalg.norm(x - out))
    else:
        d = round(np.sqrt(n)) if args.family == "hh" else round(n ** (1 / 3))
        if (d * d if args.family == "hh" else d**3) != n:
            raise DimensionError("matrix size inconsistent with family")
        basis = twirl.std_bases(d)[args.family]
        coeffs = [complex(z) for z in twirl.coefficients(x, basis)]
        out = twirl.cond_expect(x, basis)
        res = float(np.linalg.norm(x - out))
        coeffs = [[z.real, z.imag] for z in coeffs]
    print(f"coefficients: {coeffs}")
    print(f"residual: {res!r}")
    if args.out:
        serialize.write_matrix(out, args.out)
    return 0


def cmd_regions(args):
    ext = hh.extremals(args.d)
    if args.emit == "vertices":
        print("# positive-extremal vertices (a, b, c)")
        for v in ext.cp_vertices:
            print(f"cp      {v.a!r} {v.b!r} {v.c!r}")
        for v in ext.ccp_vertices:
            print(f"ccp     {v.a!r} {v.b!r} {v.c!r}")
        print("# PPT polytope vertices (a, b, c)")
        for i, v in enumerate(ext.ppt_vertices):
            print(f"ppt v{i}  {v[0]!r} {v[1]!r} {v[2]!r}")
        print("# PPT subfamily vertices (b, c) with a = 1-b-c")
        for i, (b, c) in enumerate(ext.wh_vertices, start=1):
            print(f"wh w{i}   {b!r} {c!r}")
    else:
        d = args.d
        print(f"# CPTP iff:  0 <= a <= {d}/{d-1};  "
              f"a/{d} - 1/{d-1} <= b <= 1 - {d-1}a/{d};  |c| <= a/{d}")
        print("# CCP iff CPTP holds with b and c exchanged; PPT iff both")
        print(f"# positivity (d >= 3): a in [0, {d}/{d-1}];  "
              f"({d-2}/{d})a + b + c <= 1;  ({d-2}/{d})a + |b-c| <= 1;")
        print(f"#   b + c >= -1/{d-1};  b - {d-1}c <= 1;  c - {d-1}b <= 1")
    return 0


def cmd_sweep(args):
    d, n = args.d, args.grid
    if n < 2:
        raise ContractError("--grid must be >= 2")
    lines = ["a,b,c,positive,cp,ccp,ppt,eb"]
    for a in np.linspace(0.0, d / (d - 1), n):
        for b in np.linspace(-1.0, 1.0, n):
            for c in np.linspace(-1.0, 1.0, n):
                co = hh.HHCoeffs(d, a, b, c)
                pos = hh.is_positive(co)[0]
                cp = hh.is_cptp(co)
                ccp = hh.is_ccp(co)
                ppt = cp and ccp
                lines.append("%.17g,%.17g,%.17g,%d,%d,%d,%d,%d"
                             % (a, b, c, pos, cp, ccp, ppt, ppt))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote {n**3} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_selftest(args):
    ok, _ = oracle.selftest(seed=args.seed, level=args.level)
    return 0 if ok else 2


def build_parser():
    p = argparse.ArgumentParser(
        prog="covwit",
        description="certify separability / PPT / entanglement breaking for "
                    "group-covariant channels and invariant states")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol-psd", type=float, default=None)
        sp.add_argument("--tol-eq", type=float, default=None)
        sp.add_argument("--seed", type=int, default=0)

    cert = sub.add_parser("certify", help="certify a family member")
    csub = cert.add_subparsers(dest="family", required=True)
    chh = csub.add_parser("hh")
    chh.add_argument("--d", type=int, required=True)
    chh.add_argument("--a", required=True)
    chh.add_argument("--b", required=True)
    chh.add_argument("--c", required=True)
    chh.add_argument("--json", default=None)
    common(chh)
    for fam in ("werner3", "quo"):
        cf = csub.add_parser(fam)
        cf.add_argument("--d", type=int, required=True)
        cf.add_argument("--coeffs", required=True,
                        help="ae,a12,a13,a23,re123,im123")
        cf.add_argument("--grid", type=int, default=16)
        cf.add_argument("--json", default=None)
        common(cf)

    st = sub.add_parser("state", help="build a named state")
    ssub = st.add_subparsers(dest="which", required=True)
    srt = ssub.add_parser("rho-t")
    srt.add_argument("--d", type=int, required=True)
    srt.add_argument("--t", required=True)
    srt.add_argument("--out", default=None)
    common(srt)

    wit = sub.add_parser("witness", help="apply a witness map to a state")
    wsub = wit.add_subparsers(dest="which", required=True)
    wap = wsub.add_parser("apply")
    wap.add_argument("--witness", required=True)
    wap.add_argument("--state", required=True)
    wap.add_argument("--adjoint", action="store_true",
                     help="apply the adjoint of the stored map")
    wap.add_argument("--out", default=None)
    common(wap)

    tw = sub.add_parser("twirl", help="project onto an invariant algebra")
    tw.add_argument("--family", required=True,
                    choices=("hh", "uuu", "uubaru", "oo"))
    tw.add_argument("--matrix-file", required=True)
    tw.add_argument("--out", default=None)
    common(tw)

    rg = sub.add_parser("regions", help="emit region data")
    rsub = rg.add_subparsers(dest="family", required=True)
    rhh = rsub.add_parser("hh")
    rhh.add_argument("--d", type=int, required=True)
    rhh.add_argument("--emit", required=True,
                     choices=("vertices", "inequalities"))
    common(rhh)

    sw = sub.add_parser("sweep", help="grid sweep to CSV")
    wsub2 = sw.add_subparsers(dest="family", required=True)
    shh = wsub2.add_parser("hh")
    shh.add_argument("--d", type=int, required=True)
    shh.add_argument("--grid", type=int, required=True)
    shh.add_argument("--out", default=None)
    common(shh)

    se = sub.add_parser("selftest", help="run the oracle-agreement suite")
    se.add_argument("--seed", type=int, default=0)
    se.add_argument("--level", default="quick", choices=("quick", "full"))
    return p


DISPATCH = {
    "certify": cmd_certify,
    "state": cmd_state,
    "witness": cmd_witness,
    "twirl": cmd_twirl,
    "regions": cmd_regions,
    "sweep": cmd_sweep,
    "selftest": cmd_selftest,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return DISPATCH[args.command](args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ContractError, DimensionError, UnsupportedDimensionError,
            CovwitError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
