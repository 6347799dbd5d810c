"""Strict JSON documents holding a loop and, for multi-polygons, its signs.

Canonical form: keys in the order kind, vertices, signs and no whitespace.
Parsing a canonical document and serializing it again is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import ValidationError
from .lattice_core import Vec, vec

__all__ = ["KINDS", "LoopDocument", "parse_document", "serialize_document", "load_document"]

KINDS = ("unimodular", "legal", "multipolygon")
_FIELDS = ("kind", "vertices", "signs")


@dataclass(frozen=True)
class LoopDocument:
    kind: str
    vertices: tuple[Vec, ...]
    signs: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}", rule="kind")
        object.__setattr__(self, "vertices", tuple(vec(v) for v in self.vertices))
        if self.kind == "multipolygon":
            if self.signs is None:
                raise ValidationError("a multipolygon document needs signs", rule="signs")
        elif self.signs is not None:
            raise ValidationError(f"signs are only allowed for multipolygon documents, not {self.kind}", rule="signs")
        if self.signs is not None:
            signs = tuple(self.signs)
            if len(signs) != len(self.vertices):
                raise ValidationError(
                    f"{len(signs)} signs for {len(self.vertices)} vertices", rule="arity"
                )
            for i, s in enumerate(signs):
                if isinstance(s, bool) or s not in (1, -1):
                    raise ValidationError(f"sign {i} is {s!r}, expected 1 or -1", index=i, rule="sign")
            object.__setattr__(self, "signs", signs)


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValidationError(f"duplicate field {k!r}", rule="syntax")
        out[k] = v
    return out


def _reject_float(text):
    raise ValidationError(f"non-integer number {text}", rule="integer")


def _reject_constant(text):
    raise ValidationError(f"non-finite number {text}", rule="integer")


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValidationError(f"{where} is {x!r}, expected an integer", rule="integer")
    return x


def parse_document(text: str) -> LoopDocument:
    try:
        raw = json.loads(
            text,
            object_pairs_hook=_no_duplicates,
            parse_float=_reject_float,
            parse_constant=_reject_constant,
        )
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed document: {exc}", rule="syntax") from None
    if not isinstance(raw, dict):
        raise ValidationError("document must be a JSON object", rule="syntax")
    extra = sorted(set(raw) - set(_FIELDS))
    if extra:
        raise ValidationError(f"unknown field(s): {', '.join(extra)}", rule="unknown-field")
    for key in ("kind", "vertices"):
        if key not in raw:
            raise ValidationError(f"missing field {key!r}", rule="missing-field")
    if not isinstance(raw["kind"], str):
        raise ValidationError("kind must be a string", rule="kind")
    verts = raw["vertices"]
    if not isinstance(verts, list):
        raise ValidationError("vertices must be a list", rule="syntax")
    pts = []
    for i, p in enumerate(verts):
        if not isinstance(p, list) or len(p) != 2:
            raise ValidationError(f"vertex {i} must be a pair of integers", index=i, rule="arity")
        pts.append(Vec(_int(p[0], f"vertex {i} x"), _int(p[1], f"vertex {i} y")))
    signs = raw.get("signs")
    if signs is not None:
        if not isinstance(signs, list):
            raise ValidationError("signs must be a list", rule="syntax")
        for i, s in enumerate(signs):
            _int(s, f"sign {i}")
        signs = tuple(signs)
    return LoopDocument(raw["kind"], tuple(pts), signs)


def serialize_document(doc: LoopDocument) -> str:
    body = {"kind": doc.kind, "vertices": [[v.x, v.y] for v in doc.vertices]}
    if doc.signs is not None:
        body["signs"] = list(doc.signs)
    return json.dumps(body, separators=(",", ":"))


def load_document(path: str) -> LoopDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())
