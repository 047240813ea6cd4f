"""The plain-text algebra description format.

Three fixed section kinds, order-insensitive, ``#`` comments::

    vertices: 1 2 3
    arrow a: 1 -> 2
    arrow b: 2 -> 3
    relation: a b
    field: rational

Unknown keys are rejected so golden files stay bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MonomialAlgebra, Quiver, build_algebra
from .errors import AlgebraFileError

_FIELDS = ("rational", "gf2", "gf3")


@dataclass(frozen=True)
class AlgebraFile:
    vertices: tuple[int, ...]
    arrows: tuple[tuple[str, int, int], ...]
    relations: tuple[tuple[str, ...], ...]
    field: str

    def build(self) -> MonomialAlgebra:
        return build_algebra(Quiver(self.vertices, self.arrows), self.relations, self.field)


def parse_algebra_file(text: str) -> AlgebraFile:
    vertices = None
    field_tag = None
    arrows = []
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise AlgebraFileError(f"line {lineno}: expected 'key: value'")
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key == "vertices":
            if vertices is not None:
                raise AlgebraFileError(f"line {lineno}: duplicate vertices section")
            try:
                vertices = tuple(int(tok) for tok in rest.split())
            except ValueError as exc:
                raise AlgebraFileError(f"line {lineno}: bad vertex id") from exc
            if not vertices:
                raise AlgebraFileError(f"line {lineno}: empty vertex list")
        elif key.startswith("arrow "):
            name = key[len("arrow "):].strip()
            if not name:
                raise AlgebraFileError(f"line {lineno}: arrow needs a name")
            parts = rest.split("->")
            if len(parts) != 2:
                raise AlgebraFileError(f"line {lineno}: arrow needs 'source -> target'")
            try:
                arrows.append((name, int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise AlgebraFileError(f"line {lineno}: bad arrow endpoints") from exc
        elif key == "relation":
            toks = tuple(rest.split())
            if len(toks) < 2:
                raise AlgebraFileError(f"line {lineno}: a relation needs >= 2 arrows")
            relations.append(toks)
        elif key == "field":
            if field_tag is not None:
                raise AlgebraFileError(f"line {lineno}: duplicate field section")
            if rest not in _FIELDS:
                raise AlgebraFileError(f"line {lineno}: field must be one of {_FIELDS}")
            field_tag = rest
        else:
            raise AlgebraFileError(f"line {lineno}: unknown key {key!r}")
    if vertices is None:
        raise AlgebraFileError("missing vertices section")
    if field_tag is None:
        field_tag = "rational"
    model = AlgebraFile(vertices, tuple(arrows), tuple(relations), field_tag)
    try:
        Quiver(model.vertices, model.arrows)
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from exc
    return model


def serialize_algebra_file(model: AlgebraFile) -> str:
    lines = ["vertices: " + " ".join(str(v) for v in model.vertices)]
    for name, s, t in model.arrows:
        lines.append(f"arrow {name}: {s} -> {t}")
    for rel in model.relations:
        lines.append("relation: " + " ".join(rel))
    lines.append(f"field: {model.field}")
    return "\n".join(lines) + "\n"


def load_algebra(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        model = parse_algebra_file(fh.read())
    return model, model.build()
