"""Command-line front end: ``hooklab <subcommand> ...``.

Exit codes: 0 success (PASS or CONJECTURE-CONSISTENT), 1 theorem failure,
2 conjecture failure, 3 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .elliptic import c_table
from .harness import ConfigError, VerificationConfig, get, registry, verify
from .littlewood import CoreQuotient, KernelPair, phi, phi_inverse, psi, psi_inverse
from .partitions import bf_set, bottom_hooks_mod, enumerate_r_cores, hook_multiset_mod, parse_partition
from .weights import KINDS

EXIT_OK, EXIT_THEOREM, EXIT_CONJECTURE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _partition(text):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from None


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _cap(text):
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected VAR=N, got {text!r}")
    return name, _nonneg(value)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hooklab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hooklab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="r-core/r-quotient or r-kernel/cofactor of a partition")
    d.add_argument("--mode", choices=("phi", "psi"), required=True)
    d.add_argument("-r", type=_positive, required=True)
    d.add_argument("--invert", action="store_true",
                   help="read the JSON produced by decompose and rebuild the partition")
    d.add_argument("arg")

    h = sub.add_parser("hooks", help="hook lengths divisible by r")
    h.add_argument("-r", type=_positive, default=1)
    h.add_argument("--bottom", action="store_true", help="bottom squares only")
    h.add_argument("partition", type=_partition)

    b = sub.add_parser("bf", help="squares counted by the BF statistic")
    b.add_argument("-a", "--alpha", type=_positive, required=True)
    b.add_argument("-b", "--beta", type=_nonneg, required=True)
    b.add_argument("partition", type=_partition)

    c = sub.add_parser("cores", help="list r-cores")
    c.add_argument("-r", type=_positive, required=True)
    c.add_argument("--max-size", type=_nonneg, required=True)

    lst = sub.add_parser("list", help="registered identities")
    lst.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="verify identities")
    v.add_argument("ids", nargs="+", metavar="ID")
    v.add_argument("--r", "-r", type=_positive)
    v.add_argument("--core", type=_partition)
    v.add_argument("--cap", type=_cap, action="append", default=[], metavar="VAR=N")
    v.add_argument("--seed", type=_nonneg, default=0)
    v.add_argument("--rho", choices=KINDS)
    v.add_argument("--alpha", type=_positive)
    v.add_argument("--beta", type=_nonneg)
    v.add_argument("--points", type=_positive, help="number of rational points for elliptic checks")
    v.add_argument("--json", action="store_true")

    t = sub.add_parser("ctable", help="the integers C(m, l, n1, n2)")
    t.add_argument("--p-cap", type=_positive, required=True)
    return p


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _decompose(a) -> str:
    if not a.invert:
        lam = _partition(a.arg)
        out = phi(lam, a.r) if a.mode == "phi" else psi(lam, a.r)
        return _dump(out.as_json())
    try:
        data = json.loads(a.arg)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--invert expects JSON: {exc.msg}") from None
    try:
        if a.mode == "phi":
            lam = phi_inverse(CoreQuotient(tuple(data["core"]), tuple(tuple(q) for q in data["quotient"])), a.r)
        else:
            lam = psi_inverse(KernelPair(tuple(data["kernel"]), tuple(data["cofactor"])), a.r)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed decomposition JSON: {exc}") from None
    return _dump(list(lam))


def _list(a) -> str:
    rows = registry()
    if a.json:
        return _dump([{"id": d.id, "title": d.title, "conjecture": d.conjecture,
                       "parameters": d.parameters(), "default_caps": dict(d.caps),
                       **({"default_r": d.r} if d.r is not None else {}),
                       **({"default_rho": d.rho} if d.rho else {}),
                       **({"default_alpha_beta": list(d.bf)} if d.bf else {})} for d in rows])
    w = max(len(d.id) for d in rows)
    lines = []
    for d in rows:
        caps = ",".join(f"{k}:{v}" for k, v in d.caps.items())
        kind = "conjecture" if d.conjecture else "theorem"
        lines.append(f"{d.id:<{w}}  {kind:<10}  {caps:<16}  {d.title}")
    return "\n".join(lines)


def _verify_one(cfg: VerificationConfig) -> tuple[dict, int]:
    rep = verify(cfg)
    return rep.as_json(), rep.exit_code


def _threads() -> int:
    raw = os.environ.get("HOOKLAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"HOOKLAB_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def _verify(a) -> tuple[str, int, str]:
    for i in a.ids:
        get(i)  # unknown ids are usage errors before any work starts
    caps = dict(a.cap)
    cfgs = [VerificationConfig(i, r=a.r, core=tuple(a.core) if a.core is not None else None, caps=caps,
                               seed=a.seed, rho=a.rho, alpha=a.alpha, beta=a.beta, points=a.points)
            for i in a.ids]
    n = min(_threads(), len(cfgs))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_verify_one, cfgs))
    else:
        results = [_verify_one(c) for c in cfgs]
    code = max(c for _, c in results)
    reports = [r for r, _ in results]
    if a.json:
        out = _dump(reports[0] if len(reports) == 1 else reports)
    else:
        w = max(len(r["identity"]) for r in reports)
        lines = []
        for r in reports:
            line = f"{r['identity']:<{w}}  {r['status']:<22}  {r['elapsed_ms']:>7} ms"
            mm = r["first_mismatch"]
            if mm is not None:
                line += f"  first mismatch at {mm['monomial']}: lhs {mm['lhs']}, rhs {mm['rhs']}"
            if "error" in r["params"]:
                line += f"  {r['params']['error']}"
            lines.append(line)
        out = "\n".join(lines)
    err = "".join(f"hooklab: error: {r['identity']}: {r['params']['error']}\n"
                  for r in reports if r["status"] == "ERROR")
    return out, code, err


def run(argv=None) -> tuple[int, str, str]:
    """Run a command; returns ``(exit code, stdout text, stderr text)``."""
    try:
        a = build_parser().parse_args(argv)
        code, err = EXIT_OK, ""
        if a.command == "decompose":
            out = _decompose(a)
        elif a.command == "hooks":
            hm = bottom_hooks_mod(a.partition, a.r) if a.bottom else hook_multiset_mod(a.partition, a.r)
            out = _dump(hm.as_json())
        elif a.command == "bf":
            sq = bf_set(a.partition, a.alpha, a.beta)
            out = _dump({"squares": [list(s) for s in sq], "statistic": len(sq)})
        elif a.command == "cores":
            out = _dump([list(c) for c in enumerate_r_cores(a.r, a.max_size)])
        elif a.command == "list":
            out = _list(a)
        elif a.command == "verify":
            out, code, err = _verify(a)
        else:
            out = _dump(c_table(a.p_cap).rows())
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), "", ""
    except (UsageError, ConfigError, ValueError, argparse.ArgumentTypeError) as exc:
        msg = " ".join(str(exc).split())
        return EXIT_ERROR, "", f"hooklab: error: {msg}\n"
    return code, out + "\n", err


def main(argv=None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
