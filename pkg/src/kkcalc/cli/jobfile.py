"""Job files: named groups, maps and subgroups plus a command list, as JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from kkcalc.errors import IllFormedMap, InvalidElement, JobFileError, ParseError
from kkcalc.graded import GradedGroup, GradedSubgroup
from kkcalc.groups import FgaGroup, GroupMap
from kkcalc.matrix import IntMatrix
from kkcalc.cli.grammar import parse_group

SCHEMA_VERSION = 1

GROUP_ARGS = ("group", "a", "b", "g")


@lru_cache(maxsize=None)
def schema() -> dict:
    text = resources.files("kkcalc.cli").joinpath("jobfile.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class Subgroup:
    """Generators of a subgroup of a graded or ungraded ambient group."""

    ambient: FgaGroup | GradedGroup
    generators: tuple[tuple[int, ...], ...] = ()
    graded: GradedSubgroup | None = None


@dataclass
class Job:
    groups: dict[str, FgaGroup | GradedGroup] = field(default_factory=dict)
    maps: dict[str, GroupMap] = field(default_factory=dict)
    subgroups: dict[str, Subgroup] = field(default_factory=dict)
    commands: list[dict[str, Any]] = field(default_factory=list)

    def group(self, ref: str) -> FgaGroup | GradedGroup:
        """A named group, or an inline expression when no name matches."""
        if ref in self.groups:
            return self.groups[ref]
        try:
            return parse_group(ref)
        except ParseError as exc:
            raise JobFileError(f"{ref!r} is neither a group name nor a valid expression: {exc}") from exc

    def map(self, ref: str) -> GroupMap:
        if ref not in self.maps:
            raise JobFileError(f"unknown map {ref!r}")
        return self.maps[ref]

    def subgroup(self, ref: str) -> Subgroup:
        if ref not in self.subgroups:
            raise JobFileError(f"unknown subgroup {ref!r}")
        return self.subgroups[ref]


def _vector(G: FgaGroup, v, where: str) -> tuple[int, ...]:
    if len(v) != G.ngens:
        raise JobFileError(f"{where}: vector {v} has {len(v)} entries, {G} has {G.ngens} generators")
    return tuple(v)


def _ungraded(job: Job, ref: str, where: str) -> FgaGroup:
    G = job.group(ref)
    if not isinstance(G, FgaGroup):
        raise JobFileError(f"{where}: {ref!r} must be an ungraded group")
    return G


def _build_map(job: Job, name: str, spec: dict) -> GroupMap:
    where = f"map {name!r}"
    A = _ungraded(job, spec["domain"], where)
    B = _ungraded(job, spec["codomain"], where)
    rows = spec["matrix"]
    if len(rows) != B.ngens or any(len(r) != A.ngens for r in rows):
        raise JobFileError(f"{where}: matrix must be {B.ngens} rows of {A.ngens} integers "
                           f"(codomain {B}, domain {A})")
    M = IntMatrix.from_rows(rows) if B.ngens else IntMatrix.zeros(0, A.ngens)
    try:
        return GroupMap(A, B, M)
    except (IllFormedMap, InvalidElement) as exc:
        raise JobFileError(f"{where}: {exc}") from exc


def _build_subgroup(job: Job, name: str, spec: dict) -> Subgroup:
    where = f"subgroup {name!r}"
    K = job.group(spec["ambient"])
    if isinstance(K, GradedGroup):
        if "generators" in spec:
            raise JobFileError(f"{where}: graded ambient takes 'even' and 'odd' generator lists")
        ev = tuple(_vector(K.even, v, where) for v in spec.get("even", []))
        od = tuple(_vector(K.odd, v, where) for v in spec.get("odd", []))
        return Subgroup(K, graded=GradedSubgroup(K, ev, od))
    if "even" in spec or "odd" in spec:
        raise JobFileError(f"{where}: ungraded ambient takes a 'generators' list")
    return Subgroup(K, tuple(_vector(K, v, where) for v in spec.get("generators", [])))


def _check_refs(job: Job, cmd: dict) -> None:
    for key, val in cmd.items():
        if key in ("op", "deg"):
            continue
        if key == "maps":
            for ref in val:
                job.map(ref)
        elif key == "subgroup":
            job.subgroup(val)
        elif cmd["op"] == "snake" or key == "map":
            job.map(val)
        elif key in GROUP_ARGS:
            job.group(val)


def load(source: str | Path | dict) -> Job:
    """Validate against the schema, build every named object, check references."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise JobFileError(f"cannot read job file {source}: {exc}") from exc
    try:
        jsonschema.validate(data, schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise JobFileError(f"job file invalid at {path}: {exc.message}") from exc

    job = Job(commands=list(data["commands"]))
    for name, text in data.get("groups", {}).items():
        try:
            job.groups[name] = parse_group(text)
        except ParseError as exc:
            raise JobFileError(f"group {name!r}: {exc}") from exc
    for name, spec in data.get("maps", {}).items():
        job.maps[name] = _build_map(job, name, spec)
    for name, spec in data.get("subgroups", {}).items():
        job.subgroups[name] = _build_subgroup(job, name, spec)
    for cmd in job.commands:
        _check_refs(job, cmd)
    return job
