"""Frozen reference data for the five supported spaces.

Each space ships a JSON document with:

* ``label_map`` -- per module, the ordered list of roots behind the
  display labels ``b<i>^<j>`` (index i within module j).  The order was
  fixed once from the standard Euclidean realizations of the exceptional
  root systems and is frozen; fiber *sets* always equal the computed
  isotropy fibers.
* ``pair_lists`` -- per module pair, the reference list of compatible
  label-index pairs, with a ``complete``/``suspect`` marking describing
  how trustworthy the source list is.
* ``families`` -- reference structural families, as (module, index)
  members, with ``suspect: true`` on entries whose source reading is
  ambiguous (truncated cells, impossible labels).  Suspect entries are
  verified but never hard-fail acceptance.

The environment variable ``FLAGROOTS_FIXTURES`` overrides the bundled
fixture directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from ..flag import PaintedDiagram, paint
from ..rootsys import FlagrootsError, LieType, Root, root_system

ENV_FIXTURE_DIR = "FLAGROOTS_FIXTURES"

SPACE_IDS = ("G2_12", "F4_34", "E6_36", "E7_56", "E8_12")

_SPACE_DEFS: dict[str, tuple[LieType, tuple[int, int]]] = {
    "G2_12": (LieType.G2, (1, 2)),
    "F4_34": (LieType.F4, (3, 4)),
    "E6_36": (LieType.E6, (3, 6)),
    "E7_56": (LieType.E7, (5, 6)),
    "E8_12": (LieType.E8, (1, 2)),
}


class FixtureError(FlagrootsError):
    """A fixture document is missing, malformed, or inconsistent."""


def parse_space(spec: str) -> tuple[LieType, tuple[int, ...]]:
    """Resolve a space spec: canonical id ("F4_34") or "F4:3,4" form."""
    if spec in _SPACE_DEFS:
        return _SPACE_DEFS[spec]
    if ":" in spec:
        fam, _, nodes = spec.partition(":")
        try:
            lie_type = LieType[fam.strip()]
            painted = tuple(int(x) for x in nodes.split(",") if x.strip())
        except (KeyError, ValueError) as exc:
            raise FixtureError(f"bad space spec {spec!r}") from exc
        if not painted:
            raise FixtureError(f"bad space spec {spec!r}: no painted nodes")
        return lie_type, painted
    raise FixtureError(
        f"unknown space {spec!r}; use one of {', '.join(SPACE_IDS)} or FAMILY:n1,n2")


def space_diagram(spec: str) -> PaintedDiagram:
    lie_type, painted = parse_space(spec)
    return paint(root_system(lie_type), painted)


@dataclass(frozen=True)
class PairList:
    """Reference compatibility pairs for one ordered module pair."""

    modules: tuple[int, int]
    pairs: tuple[tuple[int, int], ...]
    complete: bool
    suspect: bool = False
    note: str | None = None


@dataclass(frozen=True)
class FixtureFamily:
    """One reference family as (module, label index) members."""

    members: tuple[tuple[int, int], ...]
    suspect: bool = False
    note: str | None = None
    source: str | None = None


@dataclass(frozen=True)
class FixtureSet:
    space_id: str
    label_map: dict[int, tuple[Root, ...]]
    pair_lists: tuple[PairList, ...]
    families: tuple[FixtureFamily, ...]
    notes: tuple[str, ...] = ()

    def root_of_label(self, module: int, index: int) -> Root:
        """The root behind display label b<index>^<module> (1-based)."""
        try:
            return self.label_map[module][index - 1]
        except (KeyError, IndexError) as exc:
            raise FixtureError(
                f"no label b{index}^{module} in {self.space_id}") from exc

    def family_roots(self, family: FixtureFamily) -> list[Root]:
        return [self.root_of_label(m, i) for m, i in family.members]

    def label_of_root(self, root: Sequence[int]) -> tuple[int, int]:
        v = tuple(root)
        for module, roots in self.label_map.items():
            for i, r in enumerate(roots, start=1):
                if tuple(r) == v:
                    return module, i
        raise FixtureError(f"{v} carries no label in {self.space_id}")


def _fixture_dir() -> Path | None:
    override = os.environ.get(ENV_FIXTURE_DIR)
    if override:
        return Path(override)
    return None


def _read_fixture_text(space_id: str) -> str:
    override = _fixture_dir()
    name = f"{space_id.lower()}.json"
    if override is not None:
        path = override / name
        if not path.is_file():
            raise FixtureError(f"fixture file not found: {path}")
        return path.read_text()
    ref = resources.files(__package__) / name
    if not ref.is_file():
        raise FixtureError(f"no bundled fixture for {space_id}")
    return ref.read_text()


def load_fixture(space_id: str) -> FixtureSet:
    """Load and validate the fixture document of a canonical space."""
    if space_id not in _SPACE_DEFS:
        raise FixtureError(f"no fixtures for space {space_id!r}")
    doc = json.loads(_read_fixture_text(space_id))
    if doc.get("space") != space_id:
        raise FixtureError(f"fixture space mismatch: {doc.get('space')!r}")
    pd = space_diagram(space_id)
    system = pd.system
    label_map: dict[int, tuple[Root, ...]] = {}
    for key, roots in doc["label_map"].items():
        label_map[int(key)] = tuple(system.root(r) for r in roots)
    modules = pd.isotropy_decomposition()
    if sorted(label_map) != list(range(1, len(modules) + 1)):
        raise FixtureError(f"{space_id}: label map does not cover the modules")
    for k, mod in enumerate(modules, start=1):
        if {tuple(r) for r in label_map[k]} != {tuple(r) for r in mod.roots}:
            raise FixtureError(
                f"{space_id}: label map fiber {k} disagrees with the computed fiber")
    pair_lists = tuple(
        PairList(
            modules=tuple(p["modules"]),
            pairs=tuple(tuple(x) for x in p["pairs"]),
            complete=p["complete"],
            suspect=p.get("suspect", False),
            note=p.get("note"),
        )
        for p in doc.get("pair_lists", [])
    )
    families = tuple(
        FixtureFamily(
            members=tuple(tuple(m) for m in f["members"]),
            suspect=f.get("suspect", False),
            note=f.get("note"),
            source=f.get("source"),
        )
        for f in doc.get("families", [])
    )
    fixture = FixtureSet(
        space_id=space_id,
        label_map=label_map,
        pair_lists=pair_lists,
        families=families,
        notes=tuple(doc.get("notes", [])),
    )
    for pl in pair_lists:
        sizes = (len(label_map[pl.modules[0]]), len(label_map[pl.modules[1]]))
        for i, j in pl.pairs:
            if not (1 <= i <= sizes[0] and 1 <= j <= sizes[1]):
                raise FixtureError(
                    f"{space_id}: pair ({i},{j}) out of range for modules {pl.modules}")
    for fam in families:
        for m, i in fam.members:
            fixture.root_of_label(m, i)
    return fixture
