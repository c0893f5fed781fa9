"""Exception types raised across the package."""


class GeometryError(ValueError):
    pass


class NonDifferentiableAt(GeometryError):
    def __init__(self, theta: float):
        super().__init__(f"support function has a derivative jump at theta={theta!r}")
        self.theta = theta


class DiscontinuousSupportFunction(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class Degenerate(GeometryError):
    pass


class DegenerateDirection(GeometryError):
    def __init__(self, theta: float, reason: str = ""):
        super().__init__(f"degenerate direction theta={theta!r}" + (f": {reason}" if reason else ""))
        self.theta = theta
        self.reason = reason


class InvertedSlab(GeometryError):
    def __init__(self, slab):
        super().__init__(
            f"inverted slab at theta={slab.direction.theta!r}: lower={slab.lower!r} > upper={slab.upper!r}"
        )
        self.slab = slab


class ContainmentViolated(GeometryError):
    pass


class NotCentrallySymmetric(GeometryError):
    pass
