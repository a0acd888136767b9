"""Plain-text readers and writers: .hg, .trn, .col, .rhg and .mpg."""

from __future__ import annotations

import itertools
import math
from pathlib import Path

import numpy as np

from .constructions import Colouring
from .core import Hypergraph, lex_rank
from .graphlab import MultipartiteGraph
from .orientation import Tournament
from .reduced import ReducedHypergraph


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[list[str]]:
    """Non-blank, non-comment lines split on whitespace."""
    out = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        out.append(s.split())
    return out


def _ints(tokens, where: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"{where}: expected integers, got {' '.join(tokens)!r}") from None


def _read(path) -> str:
    text = Path(path).read_text()
    if text and not text.endswith("\n"):
        raise FormatError(f"{path}: missing trailing newline")
    return text


# ---------------------------------------------------------------------------
# .hg


def hypergraph_to_text(H: Hypergraph) -> str:
    out = [f"{H.k} {H.n} {len(H.edges)}"]
    out += [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(out) + "\n"


def hypergraph_from_text(text: str) -> Hypergraph:
    rows = _lines(text)
    if not rows or len(rows[0]) != 3:
        raise FormatError("header must be 'k n m'")
    k, n, m = _ints(rows[0], "header")
    if len(rows) - 1 != m:
        raise FormatError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for i, row in enumerate(rows[1:], 2):
        e = _ints(row, f"edge line {i}")
        if len(e) != k or any(a >= b for a, b in zip(e, e[1:])):
            raise FormatError(f"edge {e} must list {k} ascending ids")
        edges.append(e)
    try:
        H = Hypergraph(k, n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if len(H.edges) != m:
        raise FormatError("duplicate edges")
    return H


def write_hypergraph(H: Hypergraph, path) -> None:
    Path(path).write_text(hypergraph_to_text(H))


def read_hypergraph(path) -> Hypergraph:
    return hypergraph_from_text(_read(path))


# ---------------------------------------------------------------------------
# .trn  (+ is the ascending enumeration, - its negation)


def tournament_to_text(T: Tournament) -> str:
    out = [f"{T.r} {T.n}"]
    for s, sign in zip(itertools.combinations(range(1, T.n + 1), T.r), T.signs.tolist()):
        out.append(" ".join(map(str, s)) + (" +" if sign > 0 else " -"))
    return "\n".join(out) + "\n"


def tournament_from_text(text: str) -> Tournament:
    rows = _lines(text)
    if not rows or len(rows[0]) != 2:
        raise FormatError("header must be 'r n'")
    r, n = _ints(rows[0], "header")
    total = math.comb(n, r)
    if len(rows) - 1 != total:
        raise FormatError(f"expected {total} oriented subsets, found {len(rows) - 1}")
    signs = np.zeros(total, dtype=np.int8)
    for row in rows[1:]:
        if len(row) != r + 1 or row[-1] not in "+-" or len(row[-1]) != 1:
            raise FormatError(f"bad line {' '.join(row)!r}")
        s = _ints(row[:-1], "subset")
        if any(a >= b for a, b in zip(s, s[1:])) or s[0] < 1 or s[-1] > n:
            raise FormatError(f"subset {s} must be ascending within 1..{n}")
        i = int(lex_rank(np.array(s), n))
        if signs[i]:
            raise FormatError(f"subset {s} listed twice")
        signs[i] = 1 if row[-1] == "+" else -1
    return Tournament(r, n, signs)


def write_tournament(T: Tournament, path) -> None:
    Path(path).write_text(tournament_to_text(T))


def read_tournament(path) -> Tournament:
    return tournament_from_text(_read(path))


# ---------------------------------------------------------------------------
# .col


def colouring_to_text(col: Colouring) -> str:
    out = [f"{col.arity} {col.n} {col.palette}"]
    for s, c in zip(itertools.combinations(range(1, col.n + 1), col.arity), col.colours.tolist()):
        out.append(" ".join(map(str, s + (c,))))
    return "\n".join(out) + "\n"


def colouring_from_text(text: str) -> Colouring:
    rows = _lines(text)
    if not rows or len(rows[0]) != 3:
        raise FormatError("header must be 'r n c'")
    r, n, c = _ints(rows[0], "header")
    total = math.comb(n, r)
    if len(rows) - 1 != total:
        raise FormatError(f"expected {total} coloured subsets, found {len(rows) - 1}")
    colours = np.zeros(total, dtype=np.int64)
    for row in rows[1:]:
        vals = _ints(row, "colour line")
        if len(vals) != r + 1:
            raise FormatError(f"bad line {' '.join(row)!r}")
        s = vals[:-1]
        if r and (any(a >= b for a, b in zip(s, s[1:])) or s[0] < 1 or s[-1] > n):
            raise FormatError(f"subset {s} must be ascending within 1..{n}")
        i = int(lex_rank(np.array(s, dtype=np.int64), n))
        if colours[i]:
            raise FormatError(f"subset {s} listed twice")
        colours[i] = vals[-1]
    try:
        return Colouring(r, n, c, colours)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_colouring(col: Colouring, path) -> None:
    Path(path).write_text(colouring_to_text(col))


def read_colouring(path) -> Colouring:
    return colouring_from_text(_read(path))


# ---------------------------------------------------------------------------
# .rhg: vertices are written as "x-tuple:ordinal", e.g. 1,3:2


def _token(x, v) -> str:
    return ",".join(map(str, x)) + f":{v}"


def _parse_token(tok: str) -> tuple[tuple[int, ...], int]:
    try:
        xs, v = tok.split(":")
        return tuple(int(t) for t in xs.split(",")), int(v)
    except ValueError:
        raise FormatError(f"bad vertex token {tok!r}") from None


def reduced_to_text(A: ReducedHypergraph) -> str:
    from .reduced import class_order

    out = [f"{A.k} {A.m}"]
    for x, size in A.class_sizes.items():
        out.append(" ".join(map(str, x + (size,))))
    for y, edges in A.constituents.items():
        out.append(f"{' '.join(map(str, y))}: {len(edges)}")
        order = class_order(y)
        for e in sorted(edges):
            out.append(" ".join(_token(x, v) for x, v in zip(order, e)))
    return "\n".join(out) + "\n"


def reduced_from_text(text: str) -> ReducedHypergraph:
    from .reduced import class_order

    rows = _lines(text)
    if not rows or len(rows[0]) != 2:
        raise FormatError("header must be 'k m'")
    k, m = _ints(rows[0], "header")
    xs = list(itertools.combinations(range(1, m + 1), k - 1))
    if len(rows) < 1 + len(xs):
        raise FormatError("missing class lines")
    sizes = {}
    for x, row in zip(xs, rows[1 : 1 + len(xs)]):
        vals = _ints(row, "class line")
        if tuple(vals[:-1]) != x:
            raise FormatError(f"class line {vals} out of order; expected {x}")
        sizes[x] = vals[-1]
    cons: dict = {}
    i = 1 + len(xs)
    while i < len(rows):
        head = " ".join(rows[i])
        if ":" not in head:
            raise FormatError(f"expected a block header 'y: e', got {head!r}")
        ypart, epart = head.split(":", 1)
        y = tuple(_ints(ypart.split(), "block header"))
        counts = _ints(epart.split(), "block header")
        if len(counts) != 1:
            raise FormatError(f"block header {head!r} must end with one edge count")
        e = counts[0]
        if y in cons:
            raise FormatError(f"block {y} repeated")
        order = class_order(y)
        edges = []
        for row in rows[i + 1 : i + 1 + e]:
            toks = [_parse_token(t) for t in row]
            if [x for x, _ in toks] != order:
                raise FormatError(f"edge of block {y} must list classes {order}")
            edges.append(tuple(v for _, v in toks))
        if len(edges) != e:
            raise FormatError(f"block {y} announces {e} edges")
        cons[y] = edges
        i += 1 + e
    try:
        return ReducedHypergraph(k, m, sizes, cons)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_reduced(A: ReducedHypergraph, path) -> None:
    Path(path).write_text(reduced_to_text(A))


def read_reduced(path) -> ReducedHypergraph:
    return reduced_from_text(_read(path))


# ---------------------------------------------------------------------------
# .mpg


def multipartite_to_text(G: MultipartiteGraph) -> str:
    out = [str(G.m), " ".join(map(str, G.sizes))]
    for (i, j) in sorted(G.pairs):
        edges = G.edge_list(i, j)
        out.append(f"pair {i} {j} {len(edges)}")
        out += [f"{u} {v}" for u, v in edges]
    return "\n".join(out) + "\n"


def multipartite_from_text(text: str) -> MultipartiteGraph:
    rows = _lines(text)
    if len(rows) < 2 or len(rows[0]) != 1:
        raise FormatError("expected 'm' and then the class sizes")
    (m,) = _ints(rows[0], "header")
    sizes = _ints(rows[1], "class sizes")
    if len(sizes) != m:
        raise FormatError(f"{len(sizes)} class sizes given for m = {m}")
    edges: dict = {}
    i = 2
    while i < len(rows):
        row = rows[i]
        if row[0] != "pair" or len(row) != 4:
            raise FormatError(f"expected 'pair i j e', got {' '.join(row)!r}")
        a, b, e = _ints(row[1:], "pair header")
        if (a, b) in edges:
            raise FormatError(f"pair {a} {b} repeated")
        block = [tuple(_ints(r, "edge line")) for r in rows[i + 1 : i + 1 + e]]
        if len(block) != e or any(len(t) != 2 for t in block):
            raise FormatError(f"pair {a} {b} announces {e} edges")
        if not 1 <= a < b <= m:
            raise FormatError(f"pair {a} {b} must satisfy 1 <= i < j <= {m}")
        if any(not (1 <= u <= sizes[a - 1] and 1 <= v <= sizes[b - 1]) for u, v in block):
            raise FormatError(f"pair {a} {b} has an edge outside its classes")
        edges[(a, b)] = block
        i += 1 + e
    try:
        G = MultipartiteGraph.from_edges(sizes, edges)
    except (ValueError, IndexError) as exc:
        raise FormatError(str(exc)) from None
    return G


def write_multipartite(G: MultipartiteGraph, path) -> None:
    Path(path).write_text(multipartite_to_text(G))


def read_multipartite(path) -> MultipartiteGraph:
    return multipartite_from_text(_read(path))
