"""On-disk formats.

Hypergraph text file (UTF-8, LF line endings)::

    # optional comment lines start with '#'
    n r
    1 2 3
    1 2 4

The header is the first non-comment line. Each further nonempty line is one
edge: ``r`` strictly ascending 1-based labels separated by single spaces.
Readers accept edges in any order; writers emit them lexicographically.

Partition document (JSON; blocks one per line, parts ascending, prefix parts
first and the last part at the end)::

    {
      "n": 4,
      "r": 3,
      "source": "greedy",
      "valid": true,
      "blocks": [
        [[1], [3], [2, 4]],
        [[2], [4], [1, 3]]
      ]
    }

``valid`` is the verification status at write time, or ``null`` when the
writer was not given the hypergraph.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Union

from .errors import MalformedBlock, ParseError
from .hypercore import Block, Hypergraph, Partition, Prefix, verify_partition

PathLike = Union[str, os.PathLike]


def parse_hypergraph(text: str) -> Hypergraph:
    header = None
    edges = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split(" ")
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(nums) != 2 or nums[0] < 0 or nums[1] < 1:
                raise ParseError(f"malformed header {line!r}; expected 'n r'", lineno)
            header = tuple(nums)
            continue
        n, r = header
        edge = tuple(nums)
        if len(edge) != r:
            raise ParseError(f"edge has {len(edge)} vertices, expected {r}", lineno)
        if any(a >= b for a, b in zip(edge, edge[1:])):
            raise ParseError(f"vertices not strictly ascending: {line!r}", lineno)
        if edge[0] < 1 or edge[-1] > n:
            raise ParseError(f"vertex outside 1..{n}: {line!r}", lineno)
        if edge in edges:
            raise ParseError(f"duplicate edge {line!r}", lineno)
        edges.add(edge)
    if header is None:
        raise ParseError("missing header line 'n r'", 1)
    return Hypergraph(header[0], header[1], frozenset(edges))


def format_hypergraph(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.r}"]
    lines.extend(" ".join(map(str, e)) for e in H.sorted_edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(path: PathLike) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text(encoding="utf-8"))


def write_hypergraph(H: Hypergraph, path: PathLike) -> None:
    Path(path).write_text(format_hypergraph(H), encoding="utf-8", newline="\n")


def format_partition(part: Partition, H: Hypergraph | None = None) -> str:
    valid = None if H is None else verify_partition(H, part).valid
    head = [
        "{",
        f'  "n": {part.n},',
        f'  "r": {part.r},',
        f'  "source": {json.dumps(part.source)},',
        f'  "valid": {json.dumps(valid)},',
    ]
    if not part.blocks:
        return "\n".join(head + ['  "blocks": []', "}"]) + "\n"
    rows = [json.dumps(b.as_lists()) for b in part.blocks]
    body = ",\n".join(f"    {row}" for row in rows)
    return "\n".join(head + ['  "blocks": [', body, "  ]", "}"]) + "\n"


def parse_partition(text: str) -> tuple[Partition, bool | None]:
    """Parse a partition document; returns the partition and its embedded
    ``valid`` flag."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("partition document must be a JSON object")
    for key in ("n", "r", "blocks"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    n, r = doc["n"], doc["r"]
    if not (isinstance(n, int) and isinstance(r, int) and n >= 0 and r >= 1):
        raise ParseError("fields 'n' and 'r' must be nonnegative integers")
    blocks = []
    for i, raw in enumerate(doc["blocks"]):
        if not isinstance(raw, list) or len(raw) != r:
            raise ParseError(f"block {i} must list exactly {r} parts")
        parts = []
        for part in raw:
            if (not isinstance(part, list) or not part
                    or not all(isinstance(v, int) and not isinstance(v, bool) for v in part)):
                raise ParseError(f"block {i} has a part that is not a nonempty integer array")
            if len(set(part)) != len(part):
                raise ParseError(f"block {i} repeats a vertex within a part")
            parts.append(frozenset(part))
        try:
            blocks.append(Block(Prefix(tuple(parts[:-1])), parts[-1]))
        except MalformedBlock as exc:
            raise ParseError(f"block {i}: {exc}") from None
    valid = doc.get("valid")
    return Partition(n, r, tuple(blocks), str(doc.get("source", "external"))), valid


def read_partition(path: PathLike) -> Partition:
    return parse_partition(Path(path).read_text(encoding="utf-8"))[0]


def write_partition(part: Partition, path: PathLike, H: Hypergraph | None = None) -> None:
    Path(path).write_text(format_partition(part, H), encoding="utf-8", newline="\n")
