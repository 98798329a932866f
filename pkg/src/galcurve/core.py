"""Vector algebra of the Galilean space G3.

The scalar product is degenerate: any vector with a nonzero x-component
(non-isotropic) only "sees" the x-components of its partner; only two
isotropic vectors (x = 0) use the Euclidean product of their (y, z) parts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "ISO_EPS",
    "GVec3",
    "VectorClass",
    "IsometryParams",
    "g_dot",
    "g_norm",
    "g_cross",
    "classify",
    "is_isotropic",
    "apply_point",
    "apply_vector",
]

ISO_EPS = 1e-12


class VectorClass(enum.Enum):
    ISOTROPIC = "isotropic"
    NON_ISOTROPIC = "non-isotropic"


@dataclass(frozen=True)
class GVec3:
    """A vector (or point) with Galilean coordinate ``x`` and Euclidean ``y``, ``z``."""

    x: float
    y: float
    z: float

    def __add__(self, other: GVec3) -> GVec3:
        return GVec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: GVec3) -> GVec3:
        return GVec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> GVec3:
        return GVec3(-self.x, -self.y, -self.z)

    def __mul__(self, k: float) -> GVec3:
        return GVec3(k * self.x, k * self.y, k * self.z)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> GVec3:
        return GVec3(self.x / k, self.y / k, self.z / k)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def euclid_norm(self) -> float:
        """Plain Euclidean length; used for residuals, not a Galilean quantity."""
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    @property
    def vector_class(self) -> VectorClass:
        return classify(self)


def is_isotropic(u: GVec3) -> bool:
    return abs(u.x) <= ISO_EPS


def classify(u: GVec3) -> VectorClass:
    return VectorClass.ISOTROPIC if is_isotropic(u) else VectorClass.NON_ISOTROPIC


def g_dot(u: GVec3, v: GVec3) -> float:
    """Galilean scalar product."""
    if is_isotropic(u) and is_isotropic(v):
        return u.y * v.y + u.z * v.z
    return u.x * v.x


def g_norm(u: GVec3) -> float:
    """Galilean norm: ``|x|`` for non-isotropic vectors, else ``hypot(y, z)``."""
    if is_isotropic(u):
        return math.hypot(u.y, u.z)
    return abs(u.x)


def g_cross(u: GVec3, v: GVec3) -> GVec3:
    """Galilean cross product.

    When either factor is non-isotropic this is the determinant with first
    row ``(0, e2, e3)``; for two isotropic factors the Euclidean formula is
    used, which collapses to a pure x-direction vector.
    """
    if is_isotropic(u) and is_isotropic(v):
        return GVec3(
            u.y * v.z - u.z * v.y,
            u.z * v.x - u.x * v.z,
            u.x * v.y - u.y * v.x,
        )
    return GVec3(0.0, v.x * u.z - u.x * v.z, u.x * v.y - v.x * u.y)


@dataclass(frozen=True)
class IsometryParams:
    """Coefficients of the similarity group H8.

    Translations ``a11, a21, a31``; x-column ``a12, a22, a32``; scale
    ``a23``; rotation angle ``phi`` (radians).  The defaults are the identity.
    The isometry subgroup B6 is ``a12 == a23 == 1``.
    """

    a11: float = 0.0
    a21: float = 0.0
    a31: float = 0.0
    a12: float = 1.0
    a22: float = 0.0
    a32: float = 0.0
    a23: float = 1.0
    phi: float = 0.0

    def is_b6(self) -> bool:
        return self.a12 == 1 and self.a23 == 1


def apply_vector(iso: IsometryParams, v: GVec3) -> GVec3:
    """Linear part of the group action (translations dropped)."""
    c, s = math.cos(iso.phi), math.sin(iso.phi)
    return GVec3(
        iso.a12 * v.x,
        iso.a22 * v.x + iso.a23 * v.y * c + iso.a23 * v.z * s,
        # a23 (not a separate a33) scales both rotated terms of this row
        iso.a32 * v.x - iso.a23 * v.y * s + iso.a23 * v.z * c,
    )


def apply_point(iso: IsometryParams, p: GVec3) -> GVec3:
    lin = apply_vector(iso, p)
    return GVec3(iso.a11 + lin.x, iso.a21 + lin.y, iso.a31 + lin.z)
