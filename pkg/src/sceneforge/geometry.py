"""Shared geometric kernel: rigid transforms, meshes, pinhole projection.

Conventions used throughout the package:

* world units are scene units, the ground plane is z = 0, +z is up;
* image coordinates live in [0, 1]^2 with (0, 0) the bottom-left corner and
  (1, 1) the top-right; pixel (i, j) of a W x H raster has its center at
  ((i + 0.5) / W, (j + 0.5) / H) counting j from the bottom row;
* quaternions are (w, x, y, z), unit norm;
* angles are degrees at every public boundary, radians internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Camera",
    "Footprint",
    "RigidPose",
    "TriMesh",
    "center_of_mass",
    "circles_intersect",
    "circumcircle",
    "project",
    "unproject_to_ground",
]

_DEG = math.pi / 180.0


def sincos_deg(angle_deg: float) -> tuple[float, float]:
    """(sin, cos) of an angle in degrees, exact at quadrant multiples.

    Exactness at 0/90/180/270 makes a full 360 turn the identity map bit
    for bit, which downstream edit identities rely on.
    """
    r = math.fmod(angle_deg, 360.0)
    if r < 0.0:
        r += 360.0
    if r == 0.0:
        return 0.0, 1.0
    if r == 90.0:
        return 1.0, 0.0
    if r == 180.0:
        return 0.0, -1.0
    if r == 270.0:
        return -1.0, 0.0
    return math.sin(r * _DEG), math.cos(r * _DEG)


# ---------------------------------------------------------------------------
# quaternions


def quat_identity() -> np.ndarray:
    return np.array([1.0, 0.0, 0.0, 0.0])


def quat_normalize(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=np.float64)
    n = math.sqrt(float(q @ q))
    if n == 0.0:
        raise ValueError("zero quaternion")
    return q / n


def quat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ]
    )


def quat_from_axis_angle(axis: np.ndarray, angle_deg: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=np.float64)
    n = math.sqrt(float(axis @ axis))
    if n == 0.0:
        raise ValueError("zero rotation axis")
    s, c = sincos_deg(0.5 * angle_deg)
    return np.array([c, *(axis / n * s)])


def quat_about_z(angle_deg: float) -> np.ndarray:
    s, c = sincos_deg(0.5 * angle_deg)
    return np.array([c, 0.0, 0.0, s])


def quat_from_two_vectors(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Smallest rotation taking direction ``src`` to direction ``dst``."""
    a = np.asarray(src, dtype=np.float64)
    b = np.asarray(dst, dtype=np.float64)
    a = a / math.sqrt(float(a @ a))
    b = b / math.sqrt(float(b @ b))
    d = float(a @ b)
    if d > 1.0 - 1e-14:
        return quat_identity()
    if d < -1.0 + 1e-14:
        # antiparallel: 180 degrees about any axis orthogonal to a
        helper = np.array([1.0, 0.0, 0.0]) if abs(a[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        axis = np.cross(a, helper)
        axis /= math.sqrt(float(axis @ axis))
        return np.array([0.0, *axis])
    axis = np.cross(a, b)
    q = np.array([1.0 + d, *axis])
    return quat_normalize(q)


def quat_to_matrix(q: np.ndarray) -> np.ndarray:
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def rotate_points(q: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Apply quaternion rotation to an (N, 3) array (or a single point)."""
    return np.asarray(points, dtype=np.float64) @ quat_to_matrix(q).T


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class RigidPose:
    """Rotation followed by translation: x -> R x + t."""

    rotation: np.ndarray  # unit quaternion (w, x, y, z)
    translation: np.ndarray  # (3,)

    def __post_init__(self):
        q = np.asarray(self.rotation, dtype=np.float64)
        t = np.asarray(self.translation, dtype=np.float64)
        if abs(float(q @ q) - 1.0) > 1e-9:
            raise ValueError("pose quaternion is not unit norm")
        if not (np.isfinite(q).all() and np.isfinite(t).all()):
            raise ValueError("pose has non-finite components")
        object.__setattr__(self, "rotation", q)
        object.__setattr__(self, "translation", t)

    def apply(self, points: np.ndarray) -> np.ndarray:
        return rotate_points(self.rotation, points) + self.translation

    @staticmethod
    def identity() -> "RigidPose":
        return RigidPose(quat_identity(), np.zeros(3))


@dataclass(frozen=True)
class TriMesh:
    """Indexed triangle mesh with per-vertex uv and normals."""

    vertices: np.ndarray  # (N, 3) float64
    triangles: np.ndarray  # (M, 3) int32
    uv: np.ndarray  # (N, 2) float64 in [0, 1]^2
    normals: np.ndarray  # (N, 3) float64, unit

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=np.float64)
        t = np.ascontiguousarray(self.triangles, dtype=np.int32)
        uv = np.ascontiguousarray(self.uv, dtype=np.float64)
        n = np.ascontiguousarray(self.normals, dtype=np.float64)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)
        object.__setattr__(self, "uv", uv)
        object.__setattr__(self, "normals", n)

    def validate(self) -> None:
        v, t = self.vertices, self.triangles
        if len(v) == 0 or len(t) == 0:
            raise ValueError("empty mesh")
        if not np.isfinite(v).all():
            raise ValueError("non-finite vertex coordinates")
        if t.min() < 0 or t.max() >= len(v):
            raise ValueError("triangle index out of range")
        if self.uv.shape != (len(v), 2) or self.normals.shape != (len(v), 3):
            raise ValueError("uv/normal arrays must be per-vertex")
        if self.uv.min() < -1e-9 or self.uv.max() > 1.0 + 1e-9:
            raise ValueError("uv outside [0, 1]^2")
        if triangle_areas(self).min() <= 1e-12:
            raise ValueError("degenerate triangle (area <= 1e-12)")

    def transformed(self, pose: RigidPose, scale: float = 1.0) -> "TriMesh":
        verts = pose.apply(self.vertices * scale)
        normals = rotate_points(pose.rotation, self.normals)
        return TriMesh(verts, self.triangles, self.uv, normals)


def triangle_areas(mesh: TriMesh) -> np.ndarray:
    v = mesh.vertices
    t = mesh.triangles
    e1 = v[t[:, 1]] - v[t[:, 0]]
    e2 = v[t[:, 2]] - v[t[:, 0]]
    return 0.5 * np.linalg.norm(np.cross(e1, e2), axis=1)


@dataclass(frozen=True)
class Camera:
    """Pinhole camera looking at ``target`` (the world origin in practice)."""

    position: np.ndarray  # (3,)
    target: np.ndarray = field(default_factory=lambda: np.zeros(3))
    up: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    vertical_fov: float = 50.0  # degrees
    resolution: tuple[int, int] = (256, 256)  # (width, height)

    def __post_init__(self):
        p = np.asarray(self.position, dtype=np.float64)
        t = np.asarray(self.target, dtype=np.float64)
        u = np.asarray(self.up, dtype=np.float64)
        object.__setattr__(self, "position", p)
        object.__setattr__(self, "target", t)
        object.__setattr__(self, "up", u)
        if p[2] <= 0.0:
            raise ValueError("camera must sit above the ground plane")
        if np.linalg.norm(p - t) == 0.0:
            raise ValueError("camera position and target coincide")
        if not 10.0 < self.vertical_fov < 120.0:
            raise ValueError("vertical fov must lie in (10, 120) degrees")

    def basis(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Orthonormal (right, up, forward) triple of the view frame."""
        fwd = self.target - self.position
        fwd = fwd / np.linalg.norm(fwd)
        right = np.cross(fwd, self.up)
        n = np.linalg.norm(right)
        if n < 1e-12:
            raise ValueError("view direction parallel to up vector")
        right = right / n
        true_up = np.cross(right, fwd)
        return right, true_up, fwd

    @property
    def aspect(self) -> float:
        w, h = self.resolution
        return w / h

    def ray_direction(self, coord: tuple[float, float]) -> np.ndarray:
        """Unit world-space direction of the ray through an image coordinate."""
        right, up, fwd = self.basis()
        tan_half = math.tan(0.5 * self.vertical_fov * _DEG)
        x, y = coord
        d = fwd + (2.0 * x - 1.0) * tan_half * self.aspect * right + (2.0 * y - 1.0) * tan_half * up
        return d / np.linalg.norm(d)


@dataclass(frozen=True)
class Footprint:
    """Axis-aligned x-y bounding box of a placed object."""

    center: tuple[float, float]
    half_extents: tuple[float, float]

    def __post_init__(self):
        hx, hy = self.half_extents
        if not (hx > 0.0 and hy > 0.0):
            raise ValueError("footprint half extents must be positive")

    @property
    def max_side(self) -> float:
        return 2.0 * max(self.half_extents)


def footprint_of_points(xy: np.ndarray) -> Footprint:
    """Tight footprint of an (N, 2) or (N, 3) point array."""
    xy = np.asarray(xy, dtype=np.float64)[:, :2]
    lo = xy.min(axis=0)
    hi = xy.max(axis=0)
    c = 0.5 * (lo + hi)
    h = np.maximum(0.5 * (hi - lo), 1e-12)
    return Footprint((float(c[0]), float(c[1])), (float(h[0]), float(h[1])))


# ---------------------------------------------------------------------------
# operations


def project(camera: Camera, p: np.ndarray) -> tuple[float, float] | None:
    """Perspective-project a world point into image coordinates.

    Returns None when the point lies at or behind the camera plane. Results
    may fall outside [0, 1]^2; callers decide whether that matters.
    """
    right, up, fwd = camera.basis()
    rel = np.asarray(p, dtype=np.float64) - camera.position
    depth = float(rel @ fwd)
    if depth <= 1e-12:
        return None
    tan_half = math.tan(0.5 * camera.vertical_fov * _DEG)
    x = float(rel @ right) / (depth * tan_half * camera.aspect)
    y = float(rel @ up) / (depth * tan_half)
    return (0.5 * (x + 1.0), 0.5 * (y + 1.0))


def unproject_to_ground(camera: Camera, coord: tuple[float, float]) -> np.ndarray | None:
    """Intersect the viewing ray of an image coordinate with the plane z = 0.

    Returns None when the ray points at or above the horizon.
    """
    d = camera.ray_direction(coord)
    if d[2] >= -1e-12:
        return None
    t = -camera.position[2] / d[2]
    hit = camera.position + t * d
    return np.array([hit[0], hit[1], 0.0])


def view_depth(camera: Camera, p: np.ndarray) -> float:
    """Distance of a point along the view axis (the pinhole depth)."""
    _, _, fwd = camera.basis()
    return float((np.asarray(p, dtype=np.float64) - camera.position) @ fwd)


def circumcircle(f: Footprint) -> tuple[tuple[float, float], float]:
    hx, hy = f.half_extents
    return f.center, math.hypot(hx, hy)


def circles_intersect(
    a: tuple[tuple[float, float], float], b: tuple[tuple[float, float], float]
) -> bool:
    """True iff the open discs overlap; tangent circles do not intersect."""
    (ax, ay), ra = a
    (bx, by), rb = b
    return math.hypot(bx - ax, by - ay) < ra + rb


def center_of_mass(mesh: TriMesh) -> np.ndarray:
    """Volume centroid via signed tetrahedra, with a surface fallback.

    Meshes whose signed volume is below 1e-9 (open or flat shells) fall back
    to the area-weighted surface centroid.
    """
    if len(mesh.vertices) == 0 or len(mesh.triangles) == 0:
        raise ValueError("empty mesh")
    v = mesh.vertices
    t = mesh.triangles
    a, b, c = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    signed = np.einsum("ij,ij->i", a, np.cross(b, c)) / 6.0
    volume = signed.sum()
    if abs(volume) > 1e-9:
        tet_centroids = (a + b + c) / 4.0  # fourth vertex is the origin
        return (signed[:, None] * tet_centroids).sum(axis=0) / volume
    areas = triangle_areas(mesh)
    tri_centroids = (a + b + c) / 3.0
    return (areas[:, None] * tri_centroids).sum(axis=0) / areas.sum()


def signed_volume(mesh: TriMesh) -> float:
    v = mesh.vertices
    t = mesh.triangles
    a, b, c = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    return float((np.einsum("ij,ij->i", a, np.cross(b, c)) / 6.0).sum())
