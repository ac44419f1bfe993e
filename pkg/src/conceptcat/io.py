"""File formats: Burmeister ``.cxt``, JSON contexts and mapping pairs, DOT and JSON lattices."""

from __future__ import annotations

import json
from typing import Any

from . import bits
from .context import Context
from .errors import DimensionError, ParseError
from .lattice import ConceptLattice
from .morphisms import MappingPair

# ---------------------------------------------------------------------------
# Burmeister .cxt


def parse_cxt_named(text: str) -> tuple[str, Context]:
    """Parse a ``.cxt`` document into its name and context.

    Layout: ``B``, the name (possibly empty), the object count, the attribute
    count, one blank line, the object names, the attribute names, then one
    row of ``X``/``.`` per object. The document must end in a newline.
    """
    if not text.endswith("\n"):
        raise ParseError("missing trailing newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")

    def line(i: int) -> str:
        if i >= len(lines):
            raise ParseError("unexpected end of file", i + 1)
        return lines[i]

    if line(0) != "B":
        raise ParseError("expected 'B'", 1, 1)
    name = line(1)
    counts = []
    for i in (2, 3):
        s = line(i)
        if not s.isdigit() or not s.isascii():
            raise ParseError(f"expected a count, got {s!r}", i + 1, 1)
        counts.append(int(s))
    n_obj, n_att = counts
    if line(4) != "":
        raise ParseError("expected a blank line", 5, 1)
    pos = 5
    objects = [line(pos + i) for i in range(n_obj)]
    pos += n_obj
    attributes = [line(pos + i) for i in range(n_att)]
    pos += n_att
    rows = []
    for g in range(n_obj):
        s = line(pos + g)
        for col, ch in enumerate(s):
            if ch not in "X.":
                raise ParseError(f"unexpected character {ch!r}", pos + g + 1, col + 1)
        if len(s) != n_att:
            raise ParseError(f"row has {len(s)} entries, expected {n_att}", pos + g + 1, min(len(s), n_att) + 1)
        rows.append(bits.mask(j for j, ch in enumerate(s) if ch == "X"))
    pos += n_obj
    if pos < len(lines):
        raise ParseError("unexpected content after the incidence rows", pos + 1, 1)
    for where, names in ((6, objects), (6 + n_obj, attributes)):
        seen = set()
        for i, nm in enumerate(names):
            if nm in seen:
                raise ParseError(f"duplicate name {nm!r}", where + i, 1)
            seen.add(nm)
    return name, Context(objects, attributes, rows)


def parse_cxt(text: str) -> Context:
    return parse_cxt_named(text)[1]


def emit_cxt(ctx: Context, name: str = "") -> str:
    for nm in (name, *ctx.objects, *ctx.attributes):
        if "\n" in nm:
            raise ValueError("names must not contain newlines")
    out = ["B", name, str(ctx.n_objects), str(ctx.n_attributes), ""]
    out += ctx.objects
    out += ctx.attributes
    for r in ctx.rows:
        out.append("".join("X" if r >> m & 1 else "." for m in range(ctx.n_attributes)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# JSON


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParseError(msg)


def context_to_json(ctx: Context) -> dict:
    return {"objects": list(ctx.objects), "attributes": list(ctx.attributes), "incidence": ctx.matrix()}


def context_from_json(data: Any) -> Context:
    _require(isinstance(data, dict), "context must be a JSON object")
    for key in ("objects", "attributes", "incidence"):
        _require(key in data, f"missing key {key!r}")
    objs, atts, inc = data["objects"], data["attributes"], data["incidence"]
    _require(isinstance(objs, list) and all(isinstance(x, str) for x in objs), "objects must be a list of strings")
    _require(isinstance(atts, list) and all(isinstance(x, str) for x in atts), "attributes must be a list of strings")
    _require(isinstance(inc, list) and len(inc) == len(objs), "incidence needs one row per object")
    for i, row in enumerate(inc):
        _require(isinstance(row, list) and len(row) == len(atts), f"incidence row {i} needs one entry per attribute")
        _require(all(isinstance(x, bool) for x in row), f"incidence row {i} must hold booleans")
    try:
        return Context.from_matrix(objs, atts, inc)
    except ValueError as e:
        raise ParseError(str(e)) from None


def pair_to_json(p: MappingPair) -> dict:
    return {
        "alpha": {p.source.objects[g]: p.target.objects[h] for g, h in enumerate(p.alpha)},
        "beta": {p.source.attributes[m]: p.target.attributes[n] for m, n in enumerate(p.beta)},
    }


def pair_from_json(data: Any, source: Context, target: Context) -> MappingPair:
    """Name maps ``alpha`` (objects) and ``beta`` (attributes); both must be total."""
    _require(isinstance(data, dict), "mapping pair must be a JSON object")

    def read(key, dom, cod):
        m = data.get(key)
        _require(isinstance(m, dict), f"{key!r} must be an object mapping names to names")
        extra = set(m) - set(dom)
        _require(not extra, f"{key!r} maps unknown names {sorted(extra)}")
        missing = [x for x in dom if x not in m]
        _require(not missing, f"{key!r} is not total: missing {missing}")
        index = {y: i for i, y in enumerate(cod)}
        out = []
        for x in dom:
            y = m[x]
            _require(isinstance(y, str) and y in index, f"{key!r} sends {x!r} to unknown name {y!r}")
            out.append(index[y])
        return out

    alpha = read("alpha", source.objects, target.objects)
    beta = read("beta", source.attributes, target.attributes)
    return MappingPair(source, target, alpha, beta)


def load_context(path: str) -> Context:
    """Read a context from ``.cxt`` or ``.json`` (by extension, else by content)."""
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    if path.endswith(".json") or (not path.endswith(".cxt") and text.lstrip().startswith("{")):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from None
        return context_from_json(data)
    return parse_cxt(text)


def load_pair(path: str, source: Context, target: Context) -> MappingPair:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from None
    try:
        return pair_from_json(data, source, target)
    except DimensionError as e:
        raise ParseError(str(e)) from None


# ---------------------------------------------------------------------------
# lattices


def reduced_labels(cl: ConceptLattice) -> list[tuple[list[str], list[str]]]:
    """Per concept: objects whose object concept it is, attributes whose attribute concept it is."""
    ctx = cl.context
    out: list[tuple[list[str], list[str]]] = [([], []) for _ in cl.concepts]
    for g, c in enumerate(cl.gamma):
        out[c][0].append(ctx.objects[g])
    for m, c in enumerate(cl.mu):
        out[c][1].append(ctx.attributes[m])
    return out


def _dot_string(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def lattice_to_dot(cl: ConceptLattice, name: str = "concepts") -> str:
    """Hasse diagram, bottom to top; attributes label their attribute concept from above,
    objects their object concept from below."""
    lines = [f"digraph {_dot_string(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, (objs, atts) in enumerate(reduced_labels(cl)):
        label = "\n".join(x for x in (", ".join(atts), ", ".join(objs)) if x) or ""
        lines.append(f"  c{i} [label={_dot_string(label)}];")
    lat = cl.lattice
    for x in range(lat.size):
        for y in bits.members(lat.covers[x]):
            lines.append(f"  c{x} -> c{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_json(cl: ConceptLattice) -> dict:
    ctx = cl.context
    labels = reduced_labels(cl)
    return {
        "concepts": [
            {
                "extent": [ctx.objects[g] for g in bits.members(c.extent)],
                "intent": [ctx.attributes[m] for m in bits.members(c.intent)],
                "objects": labels[i][0],
                "attributes": labels[i][1],
            }
            for i, c in enumerate(cl.concepts)
        ],
        "covers": [[x, y] for x in range(cl.lattice.size) for y in bits.members(cl.lattice.covers[x])],
    }


def concept_lines(cl: ConceptLattice) -> list[str]:
    ctx = cl.context
    out = []
    for i, c in enumerate(cl.concepts):
        ext = ", ".join(ctx.objects[g] for g in bits.members(c.extent))
        itt = ", ".join(ctx.attributes[m] for m in bits.members(c.intent))
        out.append(f"{i}: ({{{ext}}}, {{{itt}}})")
    return out

