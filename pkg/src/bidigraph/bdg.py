"""The ``.bdg`` text format and Graphviz export.

Grammar, one record per line::

    bdg 1
    v <name>
    e <name> <u> <sign> <v> <sign>      # sign is + or -

``#`` starts a comment that runs to the end of the line; blank lines are
ignored.  Edge order in the file is the default edge ordering for reduction.
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional

from .errors import ParseError
from .graph import BidirectedGraph, Edge, sign_char

FORMAT_VERSION = "1"
_SIGNS = {"+": 1, "-": -1}


def parse_bdg(text: str) -> BidirectedGraph:
    vertices = []
    vseen = set()
    edges = []
    eseen = set()
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not header_seen:
            if parts != ["bdg", FORMAT_VERSION]:
                raise ParseError(f"expected header 'bdg {FORMAT_VERSION}', got {line!r}", lineno)
            header_seen = True
            continue
        kind = parts[0]
        if kind == "v":
            if len(parts) != 2:
                raise ParseError("vertex record must be 'v <name>'", lineno)
            name = parts[1]
            if name in vseen:
                raise ParseError(f"duplicate vertex {name!r}", lineno)
            vseen.add(name)
            vertices.append(name)
        elif kind == "e":
            if len(parts) != 6:
                raise ParseError("edge record must be 'e <name> <u> <sign> <v> <sign>'", lineno)
            _, name, u, su, v, sv = parts
            if name in eseen:
                raise ParseError(f"duplicate edge {name!r}", lineno)
            for s in (su, sv):
                if s not in _SIGNS:
                    raise ParseError(f"bad sign token {s!r} (expected + or -)", lineno)
            for end in (u, v):
                if end not in vseen:
                    raise ParseError(f"edge {name!r} uses undeclared vertex {end!r}", lineno)
            eseen.add(name)
            edges.append(Edge(name, u, _SIGNS[su], v, _SIGNS[sv]))
        elif kind == "bdg":
            raise ParseError("repeated header", lineno)
        else:
            raise ParseError(f"unknown record type {kind!r}", lineno)
    if not header_seen:
        raise ParseError(f"missing 'bdg {FORMAT_VERSION}' header", 1)
    return BidirectedGraph(vertices, edges)


def _token(x) -> str:
    s = str(x)
    if not s or any(c.isspace() for c in s) or "#" in s:
        raise ValueError(f"{s!r} cannot be written as a .bdg token")
    return s


def serialize_bdg(G: BidirectedGraph, comments: Iterable[str] = ()) -> str:
    """Canonical text: header, optional ``#`` comments, vertices, then edges, in graph order."""
    lines = [f"bdg {FORMAT_VERSION}"]
    lines.extend(f"# {c}" for c in comments)
    lines.extend(f"v {_token(v)}" for v in G.vertices)
    for e in G.edges:
        lines.append(
            f"e {_token(e.id)} {_token(e.u)} {sign_char(e.tau_u)} {_token(e.v)} {sign_char(e.tau_v)}"
        )
    return "\n".join(lines) + "\n"


_STYLES = {
    "added": 'style=dashed, color="#1f77b4"',
    "removed": 'style=dotted, color="#888888"',
    "circuit-member": 'color="#d62728", penwidth=2',
}


def _quote(x) -> str:
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(G: BidirectedGraph, annotations: Optional[Mapping[object, Iterable[str]]] = None, name: str = "G") -> str:
    """Undirected DOT; each edge labelled ``s_u,s_v`` and styled by its annotation classes."""
    annotations = annotations or {}
    lines = [f"graph {_quote(name)} {{"]
    for v in G.vertices:
        lines.append(f"  {_quote(v)};")
    for e in G.edges:
        classes = sorted(annotations.get(e.id, ()))
        attrs = [f'label="{sign_char(e.tau_u)},{sign_char(e.tau_v)}"', f"id={_quote(e.id)}"]
        if classes:
            attrs.append(f'class="{" ".join(classes)}"')
            attrs.extend(_STYLES[c] for c in classes if c in _STYLES)
        lines.append(f"  {_quote(e.u)} -- {_quote(e.v)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_annotations(**groups: Iterable) -> Dict[object, set]:
    """``dot_annotations(added=[...], removed=[...])`` -> edge id to class set (underscores become dashes)."""
    out: Dict[object, set] = {}
    for cls, ids in groups.items():
        for eid in ids:
            out.setdefault(eid, set()).add(cls.replace("_", "-"))
    return out
