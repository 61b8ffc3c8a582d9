"""Command line entry point.

Exit codes: 0 success, 1 a FAIL verdict, 2 usage error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import __version__
from .analysis import is_isoterm, join_membership, member_MW
from .harness import Config, UnknownClaim, enumerate_Rn_basis_candidates, replay_witness, verify_paper
from .identities import SearchLimitExceeded, parse_identity, prove
from .monoids import CACHE_ENV, ResourceLimitExceeded, rees_quotient, satisfies
from .schemas import (
    SchemaError,
    enum_S,
    omega,
    phi,
    presentation,
    psi1,
    psi2,
    psi3,
    sigma,
    word_ak,
    word_ck,
)
from .words import WordParseError, parse_word, render

CONFIG_KEYS = ("bound", "max_len", "depth", "budget", "cache_dir")
DEFAULTS = {"bound": 4, "max_len": None, "depth": 12, "budget": None, "cache_dir": None}

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS so a flag given before the subcommand is not reset by it
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=_positive, default=S, help="schema truncation bound B")
    common.add_argument("--max-len", dest="max_len", type=_positive, default=S)
    common.add_argument("--depth", type=_positive, default=S)
    common.add_argument("--budget", type=_positive, default=S, help="node/state budget")
    common.add_argument("--cache-dir", dest="cache_dir", default=S)
    common.add_argument("--config", default=S, help="JSON file with default settings")
    common.add_argument("--json", action="store_true", default=S, help="machine-readable output")

    p = argparse.ArgumentParser(prog="monovar", parents=[common],
                                description="Identities, Rees quotients and monoid varieties.")
    p.add_argument("--version", action="version", version=f"monovar {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate words or identity sets")
    g.add_argument("family", choices=["a", "c", "psi1", "psi2", "psi3", "phi", "omega", "sigma",
                                      "presentation", "rn"])
    g.add_argument("name", nargs="?", help="presentation name (P, Q, R, S, N, O, with ^d for duals)")
    g.add_argument("--n", type=_nonneg, default=None)
    g.add_argument("--m", type=_nonneg, default=None)
    g.add_argument("--k", type=_nonneg, default=None)
    g.add_argument("--case", choices=["ii", "iii"], default="ii")

    mo = sub.add_parser("monoid", parents=[common], help="monoid operations")
    msub = mo.add_subparsers(dest="mcmd", required=True)
    mb = msub.add_parser("build", parents=[common], help="build M(W)")
    mb.add_argument("words", nargs="+", help="words of W")

    ch = sub.add_parser("check", parents=[common], help="satisfaction and membership checks")
    csub = ch.add_subparsers(dest="ccmd", required=True)
    cs = csub.add_parser("sat", parents=[common], help="does M(W) satisfy an identity?")
    cs.add_argument("W", help="words of W separated by commas")
    cs.add_argument("identity")
    ci = csub.add_parser("isoterm", parents=[common], help="is WORD an isoterm for the monoids?")
    ci.add_argument("word")
    ci.add_argument("monoids", nargs="+", help="each a comma separated W")
    ci.add_argument("--occ-cap", dest="occ_cap", type=_positive, default=None)
    cm = csub.add_parser("member", parents=[common], help="is M(W') in var M?")
    cm.add_argument("Wprime", help="words of W' separated by commas")
    cm.add_argument("monoids", nargs="+", help="factors of the product, each a comma separated W")
    cm.add_argument("--occ-cap", dest="occ_cap", type=_positive, default=None)
    cj = csub.add_parser("join", parents=[common], help="is M(word) in the join?")
    cj.add_argument("word")
    cj.add_argument("monoids", nargs="+")
    cj.add_argument("--occ-cap", dest="occ_cap", type=_positive, default=None)

    pr = sub.add_parser("prove", parents=[common], help="derive an identity from rules")
    pr.add_argument("identity")
    pr.add_argument("--rules", action="append", default=[],
                    help="an identity, or psi1/psi2/psi3/phiN/omegaN/sigmaI (repeatable)")

    pe = sub.add_parser("perm", parents=[common], help="permutations")
    psub = pe.add_subparsers(dest="pcmd", required=True)
    pen = psub.add_parser("enum", parents=[common], help="list the (n,m)-permutations")
    pen.add_argument("n", type=_nonneg)
    pen.add_argument("m", type=_nonneg)

    ve = sub.add_parser("verify", parents=[common], help="run registered claims")
    vsub = ve.add_subparsers(dest="vcmd", required=True)
    vp = vsub.add_parser("paper", parents=[common], help="run the claim suite")
    vp.add_argument("--select", default="*", help="claim id glob(s), comma separated")
    vp.add_argument("--workers", type=_positive, default=1)
    vp.add_argument("--out", default=None, help="write the JSON report here")

    rp = sub.add_parser("replay", parents=[common], help="re-verify FAIL witnesses of a report")
    rp.add_argument("report")
    return p


def _settings(args) -> dict:
    out = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config {args.config}: {e}")
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(data) - set(CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for k, v in data.items():
            if k != "cache_dir" and v is not None and (not isinstance(v, int) or v < 1):
                raise UsageError(f"config value {k} must be a positive integer")
            out[k] = v
    for k in CONFIG_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            out[k] = v
    if out["cache_dir"] is None:
        out["cache_dir"] = os.environ.get(CACHE_ENV)
    return out


def _W(spec: str) -> list:
    return [parse_word(x) for x in spec.split(",")]


def _emit(args, payload, text: Optional[str] = None):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=False))
    else:
        print(text if text is not None else json.dumps(payload, ensure_ascii=False, indent=2))


def _rules(specs: list, bound: int) -> list:
    out = []
    for s in specs:
        t = s.strip()
        if t in ("psi1", "psi2", "psi3"):
            out += {"psi1": psi1, "psi2": psi2, "psi3": psi3}[t](bound)
        elif t.startswith("phi") and t[3:].isdigit():
            out += phi(int(t[3:]))
        elif t.startswith("omega") and t[5:].isdigit():
            out.append(omega(int(t[5:])))
        elif t.startswith("sigma") and t[5:].isdigit():
            out.append(sigma(int(t[5:])))
        else:
            out.append(parse_identity(t))
    return out


def _cmd_gen(args, st) -> int:
    f = args.family
    if f == "a":
        w = word_ak(args.n or 2, args.m or 2, None, 3 if args.k is None else args.k)
        _emit(args, {"word": render(w)}, render(w))
        return EXIT_OK
    if f == "c":
        w = word_ck(args.case, args.n, args.m, None, args.k or 0)
        _emit(args, {"word": render(w)}, render(w))
        return EXIT_OK
    if f in ("psi1", "psi2", "psi3"):
        ids = {"psi1": psi1, "psi2": psi2, "psi3": psi3}[f](st["bound"])
    elif f == "phi":
        ids = phi(args.n or 1)
    elif f == "omega":
        ids = [omega(args.n or 1)]
    elif f == "sigma":
        ids = [sigma(args.n or 1)]
    elif f == "rn":
        ids = enumerate_Rn_basis_candidates(args.n or 1)
    else:
        if not args.name:
            raise UsageError("gen presentation needs a name")
        ids = presentation(args.name, args.n or 2, st["bound"]).expand(st["bound"])
    lines = [str(i) for i in ids]
    _emit(args, {"count": len(lines), "identities": lines}, "\n".join(lines))
    return EXIT_OK


def _cmd_monoid(args, st) -> int:
    M = rees_quotient([parse_word(w) for w in args.words], st["cache_dir"])
    data = M.to_json()
    if args.json:
        _emit(args, data)
    else:
        print(f"M(W) with {M.size} elements: " + ", ".join(data["elements"]))
    return EXIT_OK


def _verdict(args, status: str, payload: dict, t0: float) -> int:
    payload = {"status": status, **payload, "elapsed_ms": int((time.perf_counter() - t0) * 1000)}
    text = status
    if "witness" in payload:
        text += f"  witness: {payload['witness']}"
    _emit(args, payload, text)
    return EXIT_OK if status in ("PASS", "IsotermWithinBounds", "MemberWithinBounds") else EXIT_FAIL


def _cmd_check(args, st) -> int:
    t0 = time.perf_counter()
    kw = {"max_len": st["max_len"], "occ_cap": getattr(args, "occ_cap", None), "budget": st["budget"]}
    if args.ccmd == "sat":
        M = rees_quotient(_W(args.W), st["cache_dir"])
        res = satisfies(M, parse_identity(args.identity), st["budget"])
        payload = {"witness": res.labels} if not res.holds else {}
        return _verdict(args, "PASS" if res.holds else "FAIL", payload, t0)
    Ms = [rees_quotient(_W(m), st["cache_dir"]) for m in args.monoids]
    if args.ccmd == "isoterm":
        v = is_isoterm(args.word, Ms, **kw)
    elif args.ccmd == "member":
        v = member_MW(_W(args.Wprime), Ms, **kw)
    else:
        v = join_membership(args.word, Ms, **kw)
    data = v.to_json()
    status = data.pop("status")
    return _verdict(args, status, data, t0)


def _cmd_prove(args, st) -> int:
    t0 = time.perf_counter()
    goal = parse_identity(args.identity)
    rules = _rules(args.rules, st["bound"])
    kw = {"max_depth": st["depth"]}
    if st["max_len"] is not None:
        kw["max_len"] = st["max_len"]
    if st["budget"] is not None:
        kw["max_states"] = st["budget"]
    p = prove(goal, rules, **kw)
    if p is None:
        return _verdict(args, "FAIL", {"reason": f"no derivation within depth {st['depth']}"}, t0)
    payload = {"proof": p.to_json()}
    if not args.json:
        print("\n".join(render(w) for w in p.chain))
    else:
        payload.update(status="PASS", elapsed_ms=int((time.perf_counter() - t0) * 1000))
        _emit(args, payload)
    return EXIT_OK


def _cmd_perm(args, st) -> int:
    perms = enum_S(args.n, args.m)
    lines = [" ".join(str(i) for i in p.images) for p in perms]
    _emit(args, {"count": len(perms), "permutations": [list(p.images) for p in perms]},
          "\n".join(lines + [f"{len(perms)} permutations"]))
    return EXIT_OK


def _cmd_verify(args, st) -> int:
    cfg = Config(bound=st["bound"], max_len=st["max_len"], depth=st["depth"], budget=st["budget"],
                 cache_dir=st["cache_dir"], workers=args.workers)
    reports = verify_paper(args.select, cfg)
    data = [r.to_json() for r in reports]
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, ensure_ascii=False, indent=2)
            fh.write("\n")
    if args.json:
        print(json.dumps(data, ensure_ascii=False))
    else:
        for r in reports:
            print(f"{r.status:<13} {r.id}  ({r.elapsed_ms} ms)")
    return EXIT_FAIL if any(r.status == "FAIL" for r in reports) else EXIT_OK


def _cmd_replay(args, st) -> int:
    try:
        with open(args.report) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read report: {e}")
    out = []
    for r in data:
        if r.get("status") != "FAIL":
            continue
        ok = replay_witness(r["id"], r["witness"])
        out.append({"id": r["id"], "replayed": ok})
    if args.json:
        print(json.dumps(out))
    else:
        for o in out:
            print(f"{'confirmed' if o['replayed'] else 'NOT confirmed':<14} {o['id']}")
    # a confirmed FAIL is still a FAIL
    return EXIT_FAIL if out else EXIT_OK


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    for k in CONFIG_KEYS + ("config",):
        if not hasattr(args, k):
            setattr(args, k, None)
    if not hasattr(args, "json"):
        args.json = False
    handlers = {"gen": _cmd_gen, "monoid": _cmd_monoid, "check": _cmd_check, "prove": _cmd_prove,
                "perm": _cmd_perm, "verify": _cmd_verify, "replay": _cmd_replay}
    try:
        st = _settings(args)
        return handlers[args.cmd](args, st)
    except (UsageError, WordParseError, SchemaError, UnknownClaim, KeyError) as e:
        print(f"monovar: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"monovar: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SearchLimitExceeded, ResourceLimitExceeded) as e:
        print(f"monovar: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
