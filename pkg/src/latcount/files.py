"""JSON instance files.

Two shapes are accepted, distinguished by their keys::

    {"A": [[1, 1, 3], [1, 1, 1]], "y": [5, 3]}
    {"n": 4, "edges": [[1, 3], [1, 4], [2, 3], [2, 4]], "b": [2, 2, 2, 2],
     "partition": [[1, 2], [3, 4]]}

Either may carry ``"stable_set"``: a list of row (vertex) indices.  Vertex
and row indices in files are 1-based.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

from .counter import Instance, validate
from .errors import InputError
from .matching import Hypergraph, make_hypergraph

MATRIX_KEYS = {"A", "y", "stable_set"}
HYPERGRAPH_KEYS = {"n", "edges", "b", "partition", "stable_set"}


class InstanceFileError(InputError):
    pass


@dataclass(frozen=True)
class InstanceFile:
    value: Union[Instance, Hypergraph]
    stable_set: Optional[Tuple[int, ...]] = None
    source: str = "<input>"

    @property
    def is_hypergraph(self) -> bool:
        return isinstance(self.value, Hypergraph)


def _int_list(value, field, source):
    if not isinstance(value, list):
        raise InstanceFileError(f"{source}: field {field!r} must be a list")
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InstanceFileError(f"{source}: field {field!r}[{i}] = {v!r} is not an integer")
    return value


def _one_based(value, limit, field, source):
    out = []
    for i, v in enumerate(_int_list(value, field, source)):
        if not 1 <= v <= limit:
            raise InstanceFileError(f"{source}: field {field!r}[{i}] = {v} is outside 1..{limit}")
        out.append(v - 1)
    return out


def _rewrap(exc: InputError, source: str, field: str) -> InputError:
    return type(exc)(f"{source}: field {field!r}: {exc}")


def load_instance(doc: dict, source: str = "<input>") -> InstanceFile:
    """Build an :class:`InstanceFile` from an already-decoded JSON object."""
    if not isinstance(doc, dict):
        raise InstanceFileError(f"{source}: top level must be a JSON object")
    keys = set(doc)
    if "A" in keys:
        unknown = keys - MATRIX_KEYS
        if unknown:
            raise InstanceFileError(f"{source}: unexpected fields {sorted(unknown)} in a matrix instance")
        if "y" not in doc:
            raise InstanceFileError(f"{source}: matrix instance is missing field 'y'")
        A = doc["A"]
        if not isinstance(A, list) or not A:
            raise InstanceFileError(f"{source}: field 'A' must be a nonempty list of rows")
        for k, row in enumerate(A):
            _int_list(row, f"A[{k}]", source)
        y = _int_list(doc["y"], "y", source)
        try:
            inst = validate(A, y)
        except InputError as exc:
            raise _rewrap(exc, source, "A") from None
        hint = None
        if "stable_set" in doc:
            hint = tuple(_one_based(doc["stable_set"], inst.n, "stable_set", source))
        return InstanceFile(inst, hint, source)
    if "edges" in keys or "n" in keys:
        unknown = keys - HYPERGRAPH_KEYS
        if unknown:
            raise InstanceFileError(f"{source}: unexpected fields {sorted(unknown)} in a hypergraph instance")
        for f in ("n", "edges"):
            if f not in doc:
                raise InstanceFileError(f"{source}: hypergraph instance is missing field {f!r}")
        n = doc["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InstanceFileError(f"{source}: field 'n' must be a positive integer")
        if not isinstance(doc["edges"], list):
            raise InstanceFileError(f"{source}: field 'edges' must be a list")
        edges = [_one_based(e, n, f"edges[{i}]", source) for i, e in enumerate(doc["edges"])]
        b = _int_list(doc["b"], "b", source) if doc.get("b") is not None else None
        partition = None
        if doc.get("partition") is not None:
            if not isinstance(doc["partition"], list):
                raise InstanceFileError(f"{source}: field 'partition' must be a list of lists")
            partition = [_one_based(p, n, f"partition[{i}]", source)
                         for i, p in enumerate(doc["partition"])]
        try:
            H = make_hypergraph(n, edges, b=b, partition=partition)
        except InputError as exc:
            raise _rewrap(exc, source, "edges") from None
        hint = None
        if "stable_set" in doc:
            hint = tuple(_one_based(doc["stable_set"], n, "stable_set", source))
        return InstanceFile(H, hint, source)
    raise InstanceFileError(f"{source}: expected either 'A'/'y' or 'n'/'edges' fields")


def parse_instance(path: Union[str, Path, None] = None) -> InstanceFile:
    """Read and validate an instance file; ``None`` or ``"-"`` reads standard input."""
    if path is None or str(path) == "-":
        source, text = "<stdin>", sys.stdin.read()
    else:
        source = str(path)
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InstanceFileError(f"{source}: cannot read ({exc.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFileError(
            f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load_instance(doc, source)


def dump_instance(inst: Instance) -> dict:
    return {"A": [list(r) for r in inst.A], "y": list(inst.y)}


def dump_hypergraph(H: Hypergraph) -> dict:
    doc = {"n": H.vertex_count, "edges": [[v + 1 for v in e] for e in H.edges]}
    if H.b is not None:
        doc["b"] = list(H.b)
    if H.partition is not None:
        doc["partition"] = [[v + 1 for v in p] for p in H.partition]
    return doc
