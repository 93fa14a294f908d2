"""Named group presets and key=value config files."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path

from .affine import Apartment
from .root_system import build_root_system, normalize_char


class UnknownPreset(KeyError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    name: str
    cartan_label: str
    node_perm: tuple[int, ...]
    simply_connected: bool = True
    residue_char: int = 0

    def with_char(self, char) -> "GroupSpec":
        return replace(self, residue_char=normalize_char(char))

    @property
    def apartment(self) -> Apartment:
        return _apartment(self.cartan_label, self.node_perm)


@lru_cache(maxsize=None)
def _apartment(label: str, node_perm: tuple[int, ...]) -> Apartment:
    return Apartment(build_root_system(label), node_perm)


def _split(name: str, label: str, rank: int) -> GroupSpec:
    return GroupSpec(name, label, tuple(range(rank + 1)))


def preset(name: str) -> GroupSpec:
    key = name.strip()
    fixed = {
        "Sp4": _split("Sp4", "C_2", 2),
        "G2": _split("G2", "G_2", 2),
        "SL3": _split("SL3", "A_2", 2),
        "A1": _split("A1", "A_1", 1),
        "SU3q": GroupSpec("SU3q", "A_2", (0, 2, 1)),
    }
    if key in fixed:
        return fixed[key]
    m = re.fullmatch(r"SL1D\((\d+)\)", key)
    if m and 2 <= int(m.group(1)) <= 8:
        n = int(m.group(1))
        return GroupSpec(key, f"A_{n - 1}", tuple((i + 1) % n for i in range(n)))
    m = re.fullmatch(r"SL(\d+)(?:-split)?", key)
    if m and 2 <= int(m.group(1)) <= 8:
        n = int(m.group(1))
        return _split(f"SL{n}", f"A_{n - 1}", n - 1)
    raise UnknownPreset(name)


PRESET_NAMES = ("Sp4", "G2", "SL3", "SU3q", "A1", "SL1D(n), 2<=n<=8", "SLn, 2<=n<=8")


def load_config(path: str | Path) -> GroupSpec:
    """Parse key=value lines: name, cartan, node_perm, char, simply_connected."""
    data: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        data[k] = v
    label = build_root_system(data["cartan"]).cartan_label
    rank = int(label.split("_")[1])
    perm = tuple(int(x) for x in data["node_perm"].split(",")) if "node_perm" in data else tuple(range(rank + 1))
    sc = data.get("simply_connected", "true").lower() in ("1", "true", "yes")
    spec = GroupSpec(data.get("name", Path(path).stem), label, perm, sc, normalize_char(data.get("char", "zero")))
    spec.apartment  # validates the Frobenius
    return spec


def resolve(group: str) -> GroupSpec:
    """Preset name or path to a config file."""
    p = Path(group)
    if p.suffix in (".cfg", ".conf", ".txt", ".ini") or (p.exists() and p.is_file()):
        if not p.exists():
            raise UnknownPreset(group)
        return load_config(p)
    return preset(group)
