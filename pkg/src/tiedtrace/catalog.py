"""Bundled link catalog and reference values."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .braid import BraidWord, components, parse_braid
from .scalar import ScalarValue, parse_scalar

SOURCES = ("paper_appendix_A", "paper_section_8_3", "external_table")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    braid: str
    components: int
    source: str
    aliases: tuple[str, ...] = field(default=())

    def word(self) -> BraidWord:
        return parse_braid(self.braid)

    def validate(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"{self.name}: unknown source {self.source!r}")
        found = components(self.word()).count
        if found != self.components:
            raise ValueError(f"{self.name}: expected {self.components} components, braid has {found}")


def _read_text(name: str) -> str:
    return resources.files("tiedtrace").joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def load_catalog() -> dict[str, CatalogEntry]:
    entries: dict[str, CatalogEntry] = {}
    for line in _read_text("catalog.jsonl").splitlines():
        if not line.strip():
            continue
        raw = json.loads(line)
        entry = CatalogEntry(
            name=raw["name"],
            braid=raw["braid"],
            components=int(raw["components"]),
            source=raw["source"],
            aliases=tuple(raw.get("aliases", ())),
        )
        entry.validate()
        entries[entry.name] = entry
    return entries


def _normalize_name(name: str) -> str:
    name = name.strip()
    m = re.fullmatch(r"(.+?)\.(\d+)", name)
    if m and not name.endswith("}"):
        return f"{m.group(1)}{{{','.join(m.group(2))}}}"
    return name


def lookup(name: str) -> CatalogEntry:
    catalog = load_catalog()
    key = _normalize_name(name)
    if key in catalog:
        return catalog[key]
    for entry in catalog.values():
        if key in entry.aliases:
            return entry
    raise KeyError(f"unknown link name {name!r}")


@lru_cache(maxsize=1)
def reference_values() -> dict:
    return json.loads(_read_text("reference_values.json"))


def reference_theta(name: str) -> ScalarValue:
    return parse_scalar(reference_values()["theta"][name])


def reference_homflypt(name: str) -> ScalarValue:
    return parse_scalar(reference_values()["homflypt"][name])


def reference_differences() -> list[tuple[str, str, ScalarValue]]:
    return [
        (d["first"], d["second"], parse_scalar(d["value"]))
        for d in reference_values()["differences"]
    ]
