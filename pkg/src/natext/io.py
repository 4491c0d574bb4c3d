"""JSON documents for algebras, structures, alter egos and maps.

Algebra::

    {"kind": "algebra", "signature": [{"name": "median", "arity": 3}],
     "size": 2, "tables": {"median": [[[0, 0], [0, 1]], [[0, 1], [1, 1]]]},
     "labels": ["0", "1"]}

Structure::

    {"kind": "structure", "size": 2,
     "relations": [{"name": "≤", "arity": 2, "tuples": [[0, 0], [0, 1], [1, 1]]}],
     "operations": [{"name": "•", "arity": 1, "table": [1, 0]}],
     "partial_operations": [{"name": "h", "arity": 2, "domain": [[0, 1]], "values": [1]}],
     "constants": {"0": 0, "1": 1}}

An alter ego is ``{"kind": "ego", "name": ..., "algebra": ..., "structure": ...}``
and a map is ``{"kind": "map", "name": ..., "source": ..., "target": ...,
"ego": ..., "table": [...]}``, where nested documents may also be
``"builtin:NAME"`` strings.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .algebra import FiniteAlgebra, Signature
from .duality import AlterEgo
from .structure import FiniteStructure, StructureSignature


class ParseError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '<document>'}: {message}")
        self.path = path


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else str(key)


def _field(doc, key, path, kind=None):
    if not isinstance(doc, dict):
        raise ParseError(path, "expected an object")
    if key not in doc:
        raise ParseError(_join(path, key), "missing field")
    value = doc[key]
    if kind is not None and not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(_join(path, key), f"expected {names}, got {type(value).__name__}")
    return value


def _index(value, size: int, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(path, f"expected an element index, got {value!r}")
    if not 0 <= value < size:
        raise ParseError(path, f"entry {value} is out of range 0..{size - 1}")
    return value


def _table(value, size: int, arity: int, path: str):
    if arity == 0:
        return _index(value, size, path)
    if not isinstance(value, list) or len(value) != size:
        raise ParseError(path, f"expected a list of {size} entries")
    return [_table(v, size, arity - 1, _join(path, i)) for i, v in enumerate(value)]


def _size(doc, path) -> int:
    n = _field(doc, "size", path, int)
    if n < 1:
        raise ParseError(_join(path, "size"), "carrier must be nonempty")
    return n


def _labels(doc, n, path):
    if "labels" not in doc:
        return None
    labels = _field(doc, "labels", path, list)
    if len(labels) != n:
        raise ParseError(_join(path, "labels"), f"expected {n} labels, got {len(labels)}")
    return [str(x) for x in labels]


def _symbols(doc, key, path, min_arity=0) -> list:
    out = []
    for i, entry in enumerate(doc.get(key, [])):
        p = _join(_join(path, key), i)
        name = _field(entry, "name", p, str)
        k = _field(entry, "arity", p, int)
        if k < min_arity:
            raise ParseError(_join(p, "arity"), f"arity must be at least {min_arity}")
        out.append((name, k, entry, p))
    return out


def parse_algebra(doc, path: str = "") -> FiniteAlgebra:
    if isinstance(doc, str):
        return resolve_builtin_algebra(doc, path)
    n = _size(doc, path)
    ops = _symbols(doc, "signature", path)
    if not ops:
        _field(doc, "signature", path, list)
    try:
        sig = Signature(tuple((name, k) for name, k, _, _ in ops))
    except ValueError as exc:
        raise ParseError(_join(path, "signature"), str(exc)) from None
    tables_doc = _field(doc, "tables", path, dict)
    tables = {}
    for name, k, _, _ in ops:
        p = _join(_join(path, "tables"), name)
        if name not in tables_doc:
            raise ParseError(p, "missing table")
        tables[name] = _table(tables_doc[name], n, k, p)
    for name in tables_doc:
        if name not in tables:
            raise ParseError(_join(_join(path, "tables"), name), "symbol not in the signature")
    return FiniteAlgebra(sig, n, tables, _labels(doc, n, path))


def parse_structure(doc, path: str = "") -> FiniteStructure:
    n = _size(doc, path)
    rels = _symbols(doc, "relations", path, 1)
    ops = _symbols(doc, "operations", path, 1)
    parts = _symbols(doc, "partial_operations", path, 1)
    consts = doc.get("constants", {})
    if not isinstance(consts, dict):
        raise ParseError(_join(path, "constants"), "expected an object")
    try:
        sig = StructureSignature(tuple((a, k) for a, k, _, _ in rels),
                                 tuple((a, k) for a, k, _, _ in ops),
                                 tuple((a, k) for a, k, _, _ in parts), tuple(consts))
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None
    relations = {}
    for name, k, entry, p in rels:
        tuples = _field(entry, "tuples", p, list)
        rel = []
        for i, t in enumerate(tuples):
            tp = _join(_join(p, "tuples"), i)
            if not isinstance(t, list) or len(t) != k:
                raise ParseError(tp, f"expected a tuple of length {k}")
            rel.append(tuple(_index(v, n, _join(tp, j)) for j, v in enumerate(t)))
        relations[name] = rel
    operations = {name: _table(_field(entry, "table", p), n, k, _join(p, "table"))
                  for name, k, entry, p in ops}
    partial = {}
    for name, k, entry, p in parts:
        dom = _field(entry, "domain", p, list)
        vals = _field(entry, "values", p, list)
        if len(dom) != len(vals):
            raise ParseError(_join(p, "values"), "domain and values differ in length")
        table = {}
        for i, (t, v) in enumerate(zip(dom, vals)):
            tp = _join(_join(p, "domain"), i)
            if not isinstance(t, list) or len(t) != k:
                raise ParseError(tp, f"expected a tuple of length {k}")
            table[tuple(_index(a, n, _join(tp, j)) for j, a in enumerate(t))] = _index(
                v, n, _join(_join(p, "values"), i))
        partial[name] = table
    constants = {c: _index(v, n, _join(_join(path, "constants"), c)) for c, v in consts.items()}
    return FiniteStructure(sig, n, relations, operations, partial, constants, _labels(doc, n, path))


def parse_ego(doc, path: str = "") -> AlterEgo:
    if isinstance(doc, str):
        return resolve_builtin_ego(doc, path)
    A = parse_algebra(_field(doc, "algebra", path), _join(path, "algebra"))
    X = parse_structure(_field(doc, "structure", path, dict), _join(path, "structure"))
    if A.size != X.size:
        raise ParseError(_join(path, "structure.size"), "alter ego and algebra carriers differ")
    return AlterEgo(A, X, str(doc.get("name", "")))


def parse_map(doc, path: str = ""):
    """A map document as (source algebra, target algebra, ego, table, name)."""
    A = parse_algebra(_field(doc, "source", path), _join(path, "source"))
    B = parse_algebra(_field(doc, "target", path), _join(path, "target"))
    ego = parse_ego(doc["ego"], _join(path, "ego")) if "ego" in doc else default_ego(A, path)
    table = _field(doc, "table", path, list)
    if len(table) != A.size:
        raise ParseError(_join(path, "table"), f"expected {A.size} entries")
    table = [_index(v, B.size, _join(_join(path, "table"), i)) for i, v in enumerate(table)]
    return A, B, ego, tuple(table), str(doc.get("name", "u"))


# -- emitting ------------------------------------------------------------------

def _tolist(t):
    return t.tolist() if isinstance(t, np.ndarray) else int(t)


def emit_algebra(A: FiniteAlgebra) -> dict:
    return {"kind": "algebra",
            "signature": [{"name": n, "arity": k} for n, k in A.signature.ops],
            "size": A.size,
            "tables": {n: _tolist(A.tables[n]) for n, _ in A.signature.ops},
            "labels": list(A.labels)}


def emit_structure(X: FiniteStructure) -> dict:
    sig = X.signature
    return {"kind": "structure", "size": X.size,
            "relations": [{"name": n, "arity": k, "tuples": [list(t) for t in sorted(X.relations[n])]}
                          for n, k in sig.relations],
            "operations": [{"name": n, "arity": k, "table": X.operations[n].tolist()}
                           for n, k in sig.operations],
            "partial_operations": [
                {"name": n, "arity": k,
                 "domain": [list(t) for t in sorted(X.partial_operations[n])],
                 "values": [X.partial_operations[n][t] for t in sorted(X.partial_operations[n])]}
                for n, k in sig.partial_operations],
            "constants": dict(X.constants),
            "labels": list(X.labels)}


def emit_ego(ego: AlterEgo) -> dict:
    return {"kind": "ego", "name": ego.name, "algebra": emit_algebra(ego.algebra),
            "structure": emit_structure(ego.structure)}


def dumps(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


# -- builtins and files --------------------------------------------------------

def resolve_builtin_algebra(name: str, path: str = "") -> FiniteAlgebra:
    from .library import boolean_lattice, chain, median2, median_power

    key = name.removeprefix("builtin:")
    patterns = [(r"median2", lambda: median2()),
                (r"median-power-(\d)", lambda k: median_power(int(k))),
                (r"chain-(\d)", lambda k: chain(int(k))),
                (r"boolean-lattice-(\d)", lambda k: boolean_lattice(int(k)))]
    for pat, make in patterns:
        m = re.fullmatch(pat, key)
        if m:
            return make(*m.groups())
    raise ParseError(path, f"unknown builtin algebra {name!r}; known: median2, median-power-K, "
                           f"chain-N, boolean-lattice-K")


def resolve_builtin_ego(name: str, path: str = "") -> AlterEgo:
    from .library import dl_ego, median_ego

    key = name.removeprefix("builtin:")
    egos = {"median": lambda: median_ego(), "median-without-bullet": lambda: median_ego(False),
            "bounded-dl": dl_ego}
    if key not in egos:
        raise ParseError(path, f"unknown builtin alter ego {name!r}; known: {sorted(egos)}")
    return egos[key]()


def default_ego(A: FiniteAlgebra, path: str = "") -> AlterEgo:
    from .library import BDL, MEDIAN, dl_ego, median_ego

    if A.signature == MEDIAN:
        return median_ego()
    if A.signature == BDL:
        return dl_ego()
    raise ParseError(path, "no alter ego given and none is built in for this signature")


def load_document(ref: str):
    """A parsed JSON document from a path, or the string itself for ``builtin:`` names."""
    if ref.startswith("builtin:"):
        return ref
    try:
        text = Path(ref).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(ref, f"cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{ref}:{exc.lineno}:{exc.colno}", exc.msg) from None


def load_algebra(ref: str) -> FiniteAlgebra:
    doc = load_document(ref)
    if isinstance(doc, dict) and doc.get("kind") == "map":
        raise ParseError(ref, "expected an algebra document, got a map")
    return parse_algebra(doc)


def load_ego(ref: str) -> AlterEgo:
    return parse_ego(load_document(ref))
