"""Fat-point configurations: bidegree, points with multiplicities, field and expectations."""

from __future__ import annotations

import json
import re
import sys
from dataclasses import dataclass, field, replace
from importlib import resources
from math import comb
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from ..errors import BadParameters, DuplicatePoints

DEFAULT_PRIME = 32003
DEFAULT_RETRIES = 8
PRESETS = ("c3", "c2")

Point = tuple[int, int, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FatPointConfig:
    """A bidegree ``(a, b)`` linear system with imposed fat points over F_p.

    Either ``points`` lists explicit ``(x, y, m)`` triples, or ``random_points``
    is ``(count, m)`` and coordinates are drawn from ``seed``.
    """

    a: int
    b: int
    points: tuple[Point, ...] | None = None
    random_points: tuple[int, int] | None = None
    p: int = DEFAULT_PRIME
    seed: int = 0
    expected_kernel_dim: int | None = None
    expected_rank: int | None = None
    retries: int = DEFAULT_RETRIES
    deformation: tuple[int, int] = (1, 0)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise BadParameters(f"bidegree must be positive, got ({self.a}, {self.b})")
        if not _is_prime(self.p) or self.p >= 2 ** 31:
            raise BadParameters(f"p must be a prime below 2^31, got {self.p}")
        if (self.points is None) == (self.random_points is None):
            raise BadParameters("give exactly one of explicit points or a random point spec")
        if self.random_points is not None:
            n, m = self.random_points
            if n < 1 or m < 2:
                raise BadParameters(f"random spec needs N >= 1 and m >= 2, got {self.random_points}")
        else:
            pts = tuple((int(x) % self.p, int(y) % self.p, int(m)) for x, y, m in self.points)
            if any(m < 2 for _, _, m in pts):
                raise BadParameters("point multiplicities must be at least 2")
            seen = {(x, y) for x, y, _ in pts}
            if len(seen) != len(pts):
                raise DuplicatePoints("explicit point list contains repeated coordinates")
            object.__setattr__(self, "points", pts)
        if self.retries < 1:
            raise BadParameters("retries must be at least 1")
        dx, dy = self.deformation
        if (dx % self.p, dy % self.p) == (0, 0):
            raise BadParameters("deformation direction must be nonzero")
        if self.expected_kernel_dim is None:
            object.__setattr__(self, "expected_kernel_dim", self.naive_kernel_dim)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        if self.points is not None:
            return tuple(m for _, _, m in self.points)
        n, m = self.random_points
        return (m,) * n

    @property
    def n_points(self) -> int:
        return len(self.multiplicities)

    @property
    def n_monomials(self) -> int:
        return (self.a + 1) * (self.b + 1)

    @property
    def n_conditions(self) -> int:
        return sum(comb(m + 1, 2) for m in self.multiplicities)

    @property
    def naive_kernel_dim(self) -> int:
        """Dimension count assuming the vanishing conditions are independent."""
        return self.n_monomials - self.n_conditions

    @property
    def target_degree(self) -> int:
        """Degree of the maps: the restriction to ``x = 0`` has degree ``b``."""
        return self.b

    @property
    def target_dimension(self) -> int:
        return self.expected_kernel_dim - 1

    def with_seed(self, seed: int) -> FatPointConfig:
        return replace(self, seed=seed)

    def to_dict(self) -> dict[str, Any]:
        if self.points is not None:
            pts: Any = [list(pt) for pt in self.points]
        else:
            pts = f"random:{self.random_points[0]}:{self.random_points[1]}"
        out = {"a": self.a, "b": self.b, "points": pts, "p": self.p, "seed": self.seed,
               "expected_kernel_dim": self.expected_kernel_dim, "expected_rank": self.expected_rank,
               "retries": self.retries}
        if self.deformation != (1, 0):
            out["deformation"] = list(self.deformation)
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], name: str = "") -> FatPointConfig:
        known = {"a", "b", "points", "p", "seed", "expected_kernel_dim", "expected_rank", "retries",
                 "deformation", "name"}
        extra = set(data) - known
        if extra:
            raise BadParameters(f"unknown config keys: {', '.join(sorted(extra))}")
        for key in ("a", "b", "points"):
            if key not in data:
                raise BadParameters(f"config is missing {key!r}")
        pts = data["points"]
        kwargs: dict[str, Any] = {}
        if isinstance(pts, str):
            m = re.fullmatch(r"random:(\d+):(\d+)", pts.strip())
            if not m:
                raise BadParameters(f"points spec must look like 'random:N:m', got {pts!r}")
            kwargs["random_points"] = (int(m.group(1)), int(m.group(2)))
        else:
            try:
                kwargs["points"] = tuple((int(x), int(y), int(mult)) for x, y, mult in pts)
            except (TypeError, ValueError) as exc:
                raise BadParameters("explicit points must be [x, y, m] triples") from exc
        try:
            return cls(
                a=int(data["a"]), b=int(data["b"]), p=int(data.get("p", DEFAULT_PRIME)),
                seed=int(data.get("seed", 0)),
                expected_kernel_dim=(None if data.get("expected_kernel_dim") is None
                                     else int(data["expected_kernel_dim"])),
                expected_rank=None if data.get("expected_rank") is None else int(data["expected_rank"]),
                retries=int(data.get("retries", DEFAULT_RETRIES)),
                deformation=tuple(int(v) for v in data.get("deformation", (1, 0))),
                name=str(data.get("name", name)),
                **kwargs,
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, BadParameters):
                raise
            raise BadParameters(str(exc)) from exc


def load_config(path: str | Path) -> FatPointConfig:
    """Read a TOML (``.toml``) or JSON (anything else) config file."""
    path = Path(path)
    raw = path.read_bytes()
    try:
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(raw.decode("utf-8"))
        else:
            data = json.loads(raw)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise BadParameters(f"cannot parse {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise BadParameters(f"{path}: top level must be a table/object")
    return FatPointConfig.from_dict(data, name=path.stem)


def preset(name: str) -> FatPointConfig:
    if name not in PRESETS:
        raise BadParameters(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    text = resources.files(__package__).joinpath("presets", f"{name}.toml").read_text(encoding="utf-8")
    return FatPointConfig.from_dict(tomllib.loads(text), name=name)
