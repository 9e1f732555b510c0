"""Edge-list text format.

Graphs: a `p edge <n> <m>` header, then one `e <u> <v> [w]` line per edge
with 1-indexed vertices and an optional weight token.  Lines starting with
`c` are comments.  Matchings travel in sidecar files of `m <u> <v>` lines.
"""

from __future__ import annotations

from .graph import Edge, Graph, GraphError


class ParseError(ValueError):
    """Malformed edge-list input."""


def _parse_weight(token: str) -> float:
    try:
        return int(token)
    except ValueError:
        try:
            return float(token)
        except ValueError as exc:
            raise ParseError(f"bad weight token {token!r}") from exc


def parse_edge_list(text: str) -> Graph:
    n = -1
    declared_m = -1
    edges: list[Edge] = []
    weights: dict[Edge, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n >= 0:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad problem line") from exc
        elif parts[0] == "e":
            if n < 0:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(parts) not in (3, 4):
                raise ParseError(f"line {lineno}: expected 'e <u> <v> [w]'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad vertex token") from exc
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
            e = (min(u, v) - 1, max(u, v) - 1)
            edges.append(e)
            if len(parts) == 4:
                weights[e] = _parse_weight(parts[3])
        else:
            raise ParseError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n < 0:
        raise ParseError("missing 'p edge' problem line")
    if declared_m != len(edges):
        raise ParseError(f"header declares {declared_m} edges, found {len(edges)}")
    try:
        return Graph(n, edges, weights)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def write_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        for chunk in comment.splitlines():
            lines.append(f"c {chunk}")
    lines.append(f"p edge {g.n} {g.m}")
    for u, v in g.edges:
        w = g.weights[(u, v)]
        if w == 1:
            lines.append(f"e {u + 1} {v + 1}")
        else:
            tok = str(int(w)) if float(w).is_integer() else repr(w)
            lines.append(f"e {u + 1} {v + 1} {tok}")
    return "\n".join(lines) + "\n"


def parse_matching(text: str, g: Graph) -> frozenset[Edge]:
    out: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "m" or len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'm <u> <v>'")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad vertex token") from exc
        if not (1 <= u <= g.n and 1 <= v <= g.n):
            raise ParseError(f"line {lineno}: vertex out of range 1..{g.n}")
        e = (min(u, v) - 1, max(u, v) - 1)
        if not g.has_edge_canon(e):
            raise ParseError(f"line {lineno}: edge {u}-{v} absent from graph")
        out.add(e)
    return frozenset(out)


def write_matching(matching, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"c {comment}")
    for u, v in sorted(matching):
        lines.append(f"m {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
