"""Reading and writing squares, trades, tessellations and certificates.

Two encodings are supported for a PLS: a text grid

    n=3
    0 1 .
    . . 0
    2 . .

and a JSON document ``{"n": 3, "triples": [[0, 0, 0], ...]}``.  Trades and
tessellations are JSON only.  Writers sort triples by (row, col) and end
with a single LF, so output is byte-for-byte reproducible.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .errors import InvalidBitrade, InvalidPLS, ParseError
from .pls import PLS, back_circulant
from .tessellation import En, GoodTriangle, Rect, Tessellation
from .trades import Bitrade

PathLike = Union[str, Path]


# -- PLS ----------------------------------------------------------------------

def pls_to_text(P: PLS) -> str:
    grid = P.to_rows(empty=".")
    lines = [f"n={P.n}"] + [" ".join(str(v) for v in row) for row in grid]
    return "\n".join(lines) + "\n"


def pls_from_text(text: str) -> PLS:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise ParseError("text grid must start with a line 'n=<order>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ParseError(f"bad order line {lines[0]!r}") from None
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    triples = []
    for r, line in enumerate(rows):
        toks = line.split()
        if len(toks) != n:
            raise ParseError(f"row {r} has {len(toks)} tokens, expected {n}")
        for c, tok in enumerate(toks):
            if tok == ".":
                continue
            try:
                triples.append((r, c, int(tok)))
            except ValueError:
                raise ParseError(f"bad token {tok!r} at row {r}, column {c}") from None
    try:
        return PLS(n, triples)
    except InvalidPLS as exc:
        raise ParseError(str(exc)) from None


def _triples(P: PLS) -> list[list[int]]:
    return [list(t) for t in P.triples]


def pls_to_obj(P: PLS) -> dict:
    return {"n": P.n, "triples": _triples(P)}


def _pls_from_list(n: int, data: Any, what: str) -> PLS:
    try:
        return PLS(n, [tuple(t) for t in data])
    except (InvalidPLS, TypeError, ValueError) as exc:
        raise ParseError(f"{what}: {exc}") from None


def pls_from_obj(obj: dict) -> PLS:
    try:
        n = int(obj["n"])
        data = obj["triples"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("structured PLS needs fields 'n' and 'triples'") from None
    return _pls_from_list(n, data, "triples")


# -- trades -------------------------------------------------------------------

def trade_to_obj(t: Bitrade) -> dict:
    return {"n": t.n, "T": _triples(t.T), "T_mate": _triples(t.T_mate)}


def trade_from_obj(obj: dict) -> Bitrade:
    try:
        n = int(obj["n"])
        T = _pls_from_list(n, obj["T"], "T")
        M = _pls_from_list(n, obj["T_mate"], "T_mate")
    except (KeyError, TypeError, ValueError):
        raise ParseError("trade document needs fields 'n', 'T' and 'T_mate'") from None
    try:
        return Bitrade(T, M)
    except InvalidBitrade as exc:
        raise ParseError(str(exc)) from None


def raw_trade_from_obj(obj: dict) -> tuple[PLS, PLS]:
    """The two halves of a trade document, without checking the trade axioms."""
    try:
        n = int(obj["n"])
        return _pls_from_list(n, obj["T"], "T"), _pls_from_list(n, obj["T_mate"], "T_mate")
    except (KeyError, TypeError, ValueError):
        raise ParseError("trade document needs fields 'n', 'T' and 'T_mate'") from None


# -- tessellations ------------------------------------------------------------

def tessellation_to_obj(S: Tessellation) -> dict:
    reg = S.region
    if isinstance(reg, En):
        region = {"kind": "En", "n": reg.n}
    else:
        region = {"kind": "rect", "x0": reg.x0, "y0": reg.y0, "h": reg.h, "w": reg.w}
    return {"region": region,
            "triangles": [{"rv": [t.x, t.y], "k": t.k} for t in S.triangles]}


def tessellation_from_obj(obj: dict) -> Tessellation:
    try:
        reg = obj["region"]
        kind = reg["kind"]
        if kind == "En":
            region = En(int(reg["n"]))
        elif kind == "rect":
            region = Rect(int(reg["x0"]), int(reg["y0"]), int(reg["h"]), int(reg["w"]))
        else:
            raise ParseError(f"unknown region kind {kind!r}")
        tris = []
        for t in obj["triangles"]:
            if "rv" in t:
                x, y = t["rv"]
                tris.append(GoodTriangle(int(x), int(y), int(t["k"])))
            else:
                tris.append(GoodTriangle.from_vertices(t["vertices"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad tessellation document: {exc}") from None
    return Tessellation(region, tuple(tris))


# -- generic ------------------------------------------------------------------

def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def write_text(path: PathLike, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_pls(P: PLS, path: PathLike, fmt: str = "text") -> None:
    write_text(path, pls_to_text(P) if fmt == "text" else dumps(pls_to_obj(P)))


def write_trade(t: Bitrade, path: PathLike) -> None:
    write_text(path, dumps(trade_to_obj(t)))


def write_tessellation(S: Tessellation, path: PathLike) -> None:
    write_text(path, dumps(tessellation_to_obj(S)))


def load_document(path: PathLike):
    """Parse a file into a PLS, Bitrade or Tessellation, by content."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_document(text)


def parse_document(text: str):
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object")
        if "triangles" in obj:
            return tessellation_from_obj(obj)
        if "T" in obj:
            return trade_from_obj(obj)
        if "triples" in obj:
            return pls_from_obj(obj)
        raise ParseError("unrecognised document: expected triples, T/T_mate or triangles")
    return pls_from_text(text)


def load_pls(path: PathLike) -> PLS:
    doc = load_document(path)
    if not isinstance(doc, PLS):
        raise ParseError(f"{path} does not hold a partial Latin square")
    return doc


def resolve_square(spec: str) -> PLS:
    """``Bn:<n>`` for the back-circulant square, otherwise a file path."""
    if spec.startswith("Bn:"):
        try:
            n = int(spec[3:])
        except ValueError:
            raise ParseError(f"bad inline square {spec!r}; expected Bn:<n>") from None
        if n < 1:
            raise ParseError(f"order must be >= 1 in {spec!r}")
        return back_circulant(n)
    P = load_pls(spec)
    if not P.is_full():
        raise ParseError(f"{spec} is not a full Latin square")
    return P
