"""Size caps. Each can be overridden with an environment variable of the same
name prefixed by ``FORGE_`` (e.g. ``FORGE_CARRIER_CAP=8192``)."""

from __future__ import annotations

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(f"FORGE_{name}")
    return int(raw) if raw else default


@dataclass
class Caps:
    carrier_cap: int = _env_int("CARRIER_CAP", 4096)
    automorphism_cap: int = _env_int("AUTOMORPHISM_CAP", 256)
    subgroup_cap: int = _env_int("SUBGROUP_CAP", 512)
    enumeration_cap: int = _env_int("ENUMERATION_CAP", 6)
    # orders of semigroups that factor searches may enumerate on the fly
    on_the_fly_order: int = _env_int("ON_THE_FLY_ORDER", 4)


caps = Caps()
