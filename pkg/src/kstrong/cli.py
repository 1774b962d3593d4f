"""Command-line interface.

Exit status: 0 when the verdict is true (or the command succeeded), 1 when
the verdict is false or a search ran out of budget, 2 on usage or input
errors.  Every command accepts ``--format text|structured``.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from . import io as kio
from .completion import is_defining_set
from .constructions import (build_C_partition, build_P, build_Q, build_Qk, c_union,
                            witness_P, witness_Q_route)
from .errors import BudgetExceeded, KStrongError, ParseError
from .pls import PLS, LatinSquare, back_circulant
from .render import square_svg, tessellation_svg, trade_svg
from .strength import (default_workers, extract_chain,
                       search_min_k_strong, verify_k_strong, verify_minimal_k_strong)
from .tessellation import (Tessellation, doubletool_tessellation, e11_tessellation,
                           sparse_tessellations, tessellate_rectangle, tessellation_to_trade,
                           tripletool_tessellation, validate_tessellation)
from .trades import enumerate_trades, smallest_trade_size, validate_bitrade

VERSION = "0.1.0"
WORKERS_ENV = "KSTRONG_WORKERS"


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    argv: list
    inputs: dict = field(default_factory=dict)
    version: str = VERSION
    workers: int = 1
    elapsed: float = 0.0
    result_digest: str = ""

    def to_obj(self) -> dict:
        return {"argv": self.argv, "inputs": self.inputs, "version": self.version,
                "workers": self.workers, "elapsed": round(self.elapsed, 6),
                "result_digest": self.result_digest}


def _digest_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class Output:
    """Collects a command's result for text or structured printing."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def render(self) -> str:
        if self.fmt == "structured":
            return kio.dumps(self.data)
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _square(spec: str) -> LatinSquare:
    return LatinSquare.from_pls(kio.resolve_square(spec))


def _pls_arg(spec: str) -> PLS:
    if spec.startswith("Bn:"):
        return kio.resolve_square(spec)
    return kio.load_pls(spec)


def _cell(text: str) -> tuple[int, int]:
    try:
        r, c = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--cell expects r,c; got {text!r}") from None
    return r, c


def _emit_pls(P: PLS, out: Output, path: Optional[str], fmt: str) -> None:
    text = kio.pls_to_text(P) if fmt == "text" else kio.dumps(kio.pls_to_obj(P))
    if path:
        kio.write_text(path, text)
        out.line(f"wrote {len(P)} triples to {path}")
    else:
        out.line(text.rstrip("\n"))
    out.data.update(kio.pls_to_obj(P))


# -- commands -----------------------------------------------------------------

def cmd_construct(a, out: Output) -> int:
    name = a.name
    if name == "P":
        P = build_P(a.n)
    elif name == "Q":
        P = build_Q(a.n)
    elif name == "Qk":
        if a.k is None:
            raise UsageError("--k is required for --name Qk")
        P = build_Qk(a.n, a.k)
    else:
        if a.k is not None:
            if not 1 <= a.k <= 4:
                raise UsageError(f"--k must lie in 1..4 for --name C, got {a.k}")
            P = c_union(a.n, a.k)
        else:
            P = build_C_partition(a.n)[a.part - 1]
    _emit_pls(P, out, a.out, a.format)
    return 0


def cmd_witness(a, out: Output) -> int:
    r, c = _cell(a.cell)
    e = (r % a.n, c % a.n, (r + c) % a.n)
    if a.set == "P":
        t, route = witness_P(a.n, e), "construction"
        base = build_P(a.n)
    else:
        t, route = witness_Q_route(a.n, e)
        base = build_Q(a.n)
    hits = len(t.T.intersection(base))
    out.data = {"trade": kio.trade_to_obj(t), "route": route, "hits": hits}
    if a.out:
        kio.write_trade(t, a.out)
        out.line(f"wrote trade of size {len(t)} to {a.out}")
    out.line(f"trade of size {len(t)} through {e} meets {a.set}_{a.n} {hits} times (route: {route})")
    return 0


def cmd_verify(a, out: Output) -> int:
    L = _square(a.square)
    D = _pls_arg(a.set)
    if a.what == "defining-set":
        ok = is_defining_set(D, L)
        out.data = {"verdict": ok}
        out.line(f"defining set: {ok}")
        return 0 if ok else 1
    if a.k is None:
        raise UsageError("--k is required")
    if a.what == "k-strong":
        rep = verify_k_strong(D, L, a.k, a.method)
        out.data = {"verdict": rep.verdict, "k": a.k, "checked_subsets": rep.checked_subsets}
        out.line(f"{a.k}-strong: {rep.verdict}")
        if rep.violating_trade is not None:
            out.data["violating_trade"] = kio.trade_to_obj(rep.violating_trade)
            out.line(f"violating trade of size {len(rep.violating_trade)} meets the set "
                     f"{rep.violating_trade.hits(D)} times")
        return 0 if rep.verdict else 1
    rep = verify_k_strong(D, L, a.k, a.method)
    if not rep.verdict:
        out.data = {"verdict": False, "k": a.k, "reason": "not k-strong"}
        out.line(f"minimally {a.k}-strong: False (not {a.k}-strong)")
        return 1
    ok = verify_minimal_k_strong(D, L, a.k, a.method)
    out.data = {"verdict": ok, "k": a.k}
    out.line(f"minimally {a.k}-strong: {ok}")
    return 0 if ok else 1


def cmd_trades(a, out: Output) -> int:
    if a.what == "validate":
        with open(a.file, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise ParseError("trade document must be a JSON object")
        T, M = kio.raw_trade_from_obj(doc)
        chk = validate_bitrade(T, M)
        out.data = {"verdict": chk.ok, "reason": chk.reason}
        out.line(f"valid bitrade: {chk.ok}" + (f" ({chk.reason})" if chk.reason else ""))
        return 0 if chk.ok else 1
    L = _square(a.square)
    if a.what == "smallest":
        d = smallest_trade_size(L)
        out.data = {"n": L.n, "smallest_trade_size": d}
        out.line(str(d))
        return 0
    trades = enumerate_trades(L, minimal_only=a.minimal)
    sizes: dict = {}
    for t in trades:
        sizes[len(t)] = sizes.get(len(t), 0) + 1
    out.data = {"n": L.n, "count": len(trades), "sizes": {str(k): v for k, v in sorted(sizes.items())}}
    if a.out:
        kio.write_text(a.out, kio.dumps({"n": L.n, "trades": [kio.trade_to_obj(t) for t in trades]}))
        out.line(f"wrote {len(trades)} trades to {a.out}")
    out.line(f"{len(trades)} {'minimal ' if a.minimal else ''}trades")
    for s, c in sorted(sizes.items()):
        out.line(f"  size {s}: {c}")
    return 0


def _build_tessellation(a) -> Tessellation:
    if a.kind == "e11":
        return e11_tessellation()
    if a.kind == "doubletool":
        return doubletool_tessellation(a.m, a.n)
    if a.kind == "tripletool":
        return tripletool_tessellation(a.m, a.n)
    if a.kind == "rect":
        return tessellate_rectangle(a.w, a.h)
    for tess, _ in sparse_tessellations(a.n, a.x):
        if validate_tessellation(tess):
            return tess
    raise UsageError("no good sparse tessellation found")


def cmd_tess(a, out: Output) -> int:
    if a.what == "build":
        S = _build_tessellation(a)
        text = kio.dumps(kio.tessellation_to_obj(S))
        if a.out:
            kio.write_text(a.out, text)
            out.line(f"wrote {len(S)} triangles to {a.out}")
        else:
            out.line(text.rstrip("\n"))
        out.data = kio.tessellation_to_obj(S)
        return 0
    S = kio.load_document(a.file)
    if not isinstance(S, Tessellation):
        raise ParseError(f"{a.file} is not a tessellation")
    if a.what == "validate":
        chk = validate_tessellation(S)
        out.data = {"verdict": chk.ok, "reason": chk.reason, "triangles": len(S)}
        out.line(f"good tessellation: {chk.ok}" + (f" ({chk.reason})" if chk.reason else ""))
        return 0 if chk.ok else 1
    if a.what == "compile":
        t = tessellation_to_trade(S)
        out.data = kio.trade_to_obj(t)
        if a.out:
            kio.write_trade(t, a.out)
            out.line(f"wrote trade of size {len(t)} to {a.out}")
        else:
            for r, c, s in t.T.triples:
                out.line(f"({r},{c}) {s} -> {t.T_mate[r, c]}")
        return 0
    svg = tessellation_svg(S, title=a.title or "")
    kio.write_text(a.svg, svg)
    out.data = {"svg": a.svg, "triangles": len(S)}
    out.line(f"wrote {a.svg}")
    return 0


def _cert_obj(cert) -> dict:
    return {
        "square": kio.pls_to_obj(cert.L), "k": cert.k, "optimum": cert.optimum,
        "lower_bound": cert.lower_bound, "exact": cert.exact,
        "witness": kio.pls_to_obj(cert.witness) if cert.witness is not None else None,
        "pool": [kio.trade_to_obj(t) for t in cert.trade_pool],
        "trace": [list(row) for row in cert.trace],
        "symmetry_breaking": cert.symmetry_breaking, "method": cert.method,
        "rounds": cert.rounds,
    }


def cmd_search(a, out: Output) -> int:
    L = _square(a.square)
    mode = "pool-only" if a.pool_only else "exact"
    incumbent = kio.load_pls(a.incumbent) if a.incumbent else None
    try:
        cert = search_min_k_strong(L, a.k, mode, method=a.method, incumbent=incumbent,
                                   symmetry_breaking=a.symmetry_breaking, budget=a.budget)
    except BudgetExceeded as exc:
        out.data = {"error": str(exc), "lower": exc.lower, "upper": exc.upper}
        out.line(f"budget exceeded: {exc} (lower={exc.lower}, upper={exc.upper})")
        return 1
    obj = _cert_obj(cert)
    if a.cert:
        kio.write_text(a.cert, kio.dumps(obj))
    out.data = {k: obj[k] for k in ("k", "optimum", "lower_bound", "exact", "witness", "rounds")}
    out.data["pool_size"] = len(cert.trade_pool)
    if cert.exact:
        out.line(f"sds(L,{a.k}) = {cert.optimum}  (rounds {cert.rounds}, pool {len(cert.trade_pool)})")
    else:
        out.line(f"sds(L,{a.k}) >= {cert.lower_bound}  (pool-only bound, pool {len(cert.trade_pool)})")
    if a.cert:
        out.line(f"certificate written to {a.cert}")
    return 0


def cmd_chain(a, out: Output) -> int:
    L = _square(a.square)
    ch = extract_chain(L)
    out.data = {"sizes": list(ch.sizes), "sets": [kio.pls_to_obj(s) for s in ch.sets]}
    if a.out:
        kio.write_text(a.out, kio.dumps(out.data))
        out.line(f"wrote chain to {a.out}")
    out.line("chain sizes: " + " < ".join(str(s) for s in ch.sizes))
    return 0


def cmd_render(a, out: Output) -> int:
    doc = kio.load_document(a.file)
    title = a.title or ""
    if isinstance(doc, Tessellation):
        svg = tessellation_svg(doc, title=title)
    elif isinstance(doc, PLS):
        if doc.is_full() or a.plain:
            svg = square_svg(doc, title=title)
        else:
            svg = square_svg(doc, full=back_circulant(doc.n) if doc.issubset(back_circulant(doc.n)) else None,
                             title=title)
    else:
        svg = trade_svg(doc, title=title)
    kio.write_text(a.svg, svg)
    out.data = {"svg": a.svg}
    out.line(f"wrote {a.svg}")
    return 0


def load_table1() -> dict:
    text = resources.files("kstrong").joinpath("data/table1.json").read_text(encoding="utf-8")
    return {int(n): v for n, v in json.loads(text)["values"].items()}


def cmd_reproduce_table1(a, out: Output) -> int:
    expected = load_table1()
    mismatches = 0
    rows = {}
    for n in range(2, a.n_max + 1):
        L = back_circulant(n)
        d = smallest_trade_size(L)
        got = []
        for k in range(1, d + 1):
            cert = search_min_k_strong(L, k)
            got.append(cert.optimum)
        exp = expected.get(n)
        ok = exp == got
        mismatches += not ok
        rows[str(n)] = {"computed": got, "expected": exp, "match": ok}
        out.line(f"n={n}: {' '.join(map(str, got))}  {'ok' if ok else f'MISMATCH (expected {exp})'}")
    out.data = {"table": rows, "mismatches": mismatches}
    return 0 if mismatches == 0 else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--manifest", help="write a run manifest (JSON) to this path")

    p = argparse.ArgumentParser(prog="kstrong", description="k-strong defining sets of Latin squares")
    p.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build P, Q, Qk or C sets")
    c.add_argument("--name", choices=("P", "Q", "Qk", "C"), required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--part", type=int, choices=(1, 2, 3, 4), default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    w = sub.add_parser("witness", parents=[common], help="witness trade for an entry of P or Q")
    w.add_argument("--set", choices=("P", "Q"), required=True)
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--cell", required=True)
    w.add_argument("--out")
    w.set_defaults(func=cmd_witness)

    v = sub.add_parser("verify", parents=[common], help="defining-set and strength checks")
    v.add_argument("what", choices=("defining-set", "k-strong", "minimal"))
    v.add_argument("--square", required=True)
    v.add_argument("--set", required=True)
    v.add_argument("--k", type=int)
    v.add_argument("--method", choices=("subsets", "trades", "auto"), default="subsets")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trades", parents=[common], help="enumerate, size or validate trades")
    t.add_argument("what", choices=("enumerate", "smallest", "validate"))
    t.add_argument("file", nargs="?")
    t.add_argument("--square")
    t.add_argument("--minimal", action="store_true")
    t.add_argument("--out")
    t.set_defaults(func=cmd_trades)

    g = sub.add_parser("tess", parents=[common], help="tessellations of E_n")
    g.add_argument("what", choices=("validate", "compile", "render", "build"))
    g.add_argument("file", nargs="?")
    g.add_argument("--svg")
    g.add_argument("--out")
    g.add_argument("--title")
    g.add_argument("--kind", choices=("e11", "doubletool", "tripletool", "rect", "sparse"))
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--x", type=int)
    g.add_argument("--w", type=int)
    g.add_argument("--h", type=int)
    g.set_defaults(func=cmd_tess)

    s = sub.add_parser("search", parents=[common], help="minimum k-strong defining set")
    s.add_argument("--square", required=True)
    s.add_argument("--k", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--pool-only", action="store_true")
    s.add_argument("--budget", type=int, help="maximum number of lazy rounds")
    s.add_argument("--cert")
    s.add_argument("--incumbent")
    s.add_argument("--method", choices=("subsets", "trades", "auto"), default="auto")
    s.add_argument("--symmetry-breaking", action="store_true")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_search)

    ch = sub.add_parser("chain", parents=[common], help="nested minimally t-strong sets")
    ch.add_argument("--square", required=True)
    ch.add_argument("--out")
    ch.set_defaults(func=cmd_chain)

    r = sub.add_parser("render", parents=[common], help="SVG drawing of a square, trade or tessellation")
    r.add_argument("file")
    r.add_argument("--svg", required=True)
    r.add_argument("--title")
    r.add_argument("--plain", action="store_true", help="do not embed a PLS in B_n")
    r.set_defaults(func=cmd_render)

    t1 = sub.add_parser("reproduce-table1", parents=[common], help="recompute sds(B_n,k) for small n")
    t1.add_argument("--n-max", type=int, default=5, choices=(2, 3, 4, 5))
    t1.set_defaults(func=cmd_reproduce_table1)
    return p


def _check_args(a) -> None:
    if a.command == "tess":
        if a.what == "build":
            need = {"e11": [], "doubletool": ["m", "n"], "tripletool": ["m", "n"],
                    "rect": ["w", "h"], "sparse": ["n", "x"]}
            if a.kind is None:
                raise UsageError("--kind is required for tess build")
            for f in need[a.kind]:
                if getattr(a, f) is None:
                    raise UsageError(f"--{f} is required for --kind {a.kind}")
        elif a.file is None:
            raise UsageError(f"tess {a.what} needs a tessellation file")
        if a.what == "render" and not a.svg:
            raise UsageError("--svg is required for tess render")
    if a.command == "trades":
        if a.what == "validate" and not a.file:
            raise UsageError("trades validate needs a trade file")
        if a.what != "validate" and not a.square:
            raise UsageError(f"--square is required for trades {a.what}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    a = parser.parse_args(argv)
    out = Output(a.format)
    start = time.perf_counter()
    try:
        _check_args(a)
        code = a.func(a, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kstrong: error: {exc}", file=sys.stderr)
        return 2
    except (KStrongError, OSError, json.JSONDecodeError) as exc:
        print(f"kstrong: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = out.render()
    sys.stdout.write(text)
    if a.manifest:
        inputs = {}
        for key in ("square", "set", "file", "incumbent"):
            val = getattr(a, key, None)
            if val and not val.startswith("Bn:") and os.path.exists(val):
                with open(val, "rb") as fh:
                    inputs[val] = hashlib.sha256(fh.read()).hexdigest()
            elif val:
                inputs[val] = "inline"
        workers = getattr(a, "workers", None) or default_workers()
        man = RunManifest(argv, inputs, VERSION, workers, time.perf_counter() - start,
                          _digest_text(kio.dumps(out.data)))
        kio.write_text(a.manifest, kio.dumps(man.to_obj()))
    return code


if __name__ == "__main__":
    sys.exit(main())
