"""Named polygons and hedgehogs loaded from (or written to) a JSON scene file."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .polygon import ConvexPolygon, from_vertices, negate
from .support_fn import SupportFunction, TrigPolynomial
from .tolerances import DEFAULT_TOL, ToleranceConfig


class UnknownName(KeyError):
    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class Scene:
    polygons: dict = field(default_factory=dict)
    hedgehogs: dict = field(default_factory=dict)
    tolerances: ToleranceConfig = DEFAULT_TOL
    samples: int = 4096
    pass_tol: float = 1e-9

    def polygon(self, name: str) -> ConvexPolygon:
        try:
            return self.polygons[name]
        except KeyError:
            raise UnknownName(f"unknown polygon {name!r}; have {sorted(self.polygons)}") from None

    def hedgehog(self, name: str) -> SupportFunction:
        try:
            return self.hedgehogs[name]
        except KeyError:
            raise UnknownName(f"unknown hedgehog {name!r}; have {sorted(self.hedgehogs)}") from None

    def to_dict(self) -> dict:
        return {
            "polygons": {k: p.to_dict() for k, p in self.polygons.items()},
            "hedgehogs": {k: h.to_dict() for k, h in self.hedgehogs.items()},
            "defaults": {
                "samples": self.samples,
                "pass_tol": self.pass_tol,
                "tolerances": self.tolerances.to_dict(),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Scene":
        extra = set(data) - {"polygons", "hedgehogs", "defaults"}
        if extra:
            raise ValueError(f"unknown scene keys: {sorted(extra)}")
        defaults = data.get("defaults", {})
        tol = ToleranceConfig.from_dict(defaults.get("tolerances", {}))
        return cls(
            polygons={k: from_vertices(v["vertices"], tol) for k, v in data.get("polygons", {}).items()},
            hedgehogs={k: SupportFunction.from_dict(v, tol) for k, v in data.get("hedgehogs", {}).items()},
            tolerances=tol,
            samples=int(defaults.get("samples", 4096)),
            pass_tol=float(defaults.get("pass_tol", 1e-9)),
        )

    @classmethod
    def load(cls, path) -> "Scene":
        return cls.from_dict(json.loads(Path(path).read_text()))


def figure1_scene() -> Scene:
    """Built-in scene: the cut rectangle Q, its reflection P, and the example hedgehogs."""
    Q = from_vertices([(1, 4), (3, 2), (3, -4), (-3, -4), (-3, 4)])
    return Scene(
        polygons={"P": negate(Q), "Q": Q},
        hedgehogs={
            "disk": SupportFunction.constant(0.77),
            "sin4": SupportFunction.analytic(TrigPolynomial(0.0, (), (0.0, 0.0, 0.0, 1.0))),
            "trefoil": SupportFunction.analytic(TrigPolynomial(1.0, (), (0.0, 0.0, 2.0))),
            "kinked": SupportFunction.piecewise(
                [
                    ((0.0, math.pi), TrigPolynomial(0.77)),
                    ((math.pi, 2 * math.pi), TrigPolynomial(0.77, (), (-0.1,))),
                ]
            ),
        },
    )


BUILTIN_SCENES = {"figure1": figure1_scene}
