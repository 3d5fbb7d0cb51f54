"""Procedural primitive meshes used as catalog assets.

All generators return closed, outward-oriented meshes with per-vertex uv in
[0, 1]^2 and unit normals, and are bit-deterministic in (kind, params, seed).
Composites (l-block, table) are concatenations of closed boxes, so signed
volumes and volume centroids stay exact.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import TriMesh

__all__ = ["PRIMITIVE_KINDS", "generate_primitive"]

PRIMITIVE_KINDS = ("box", "sphere", "cylinder", "cone", "torus", "lblock", "table")


def generate_primitive(kind: str, params: dict, seed: int = 0) -> TriMesh:
    """Build a primitive mesh.

    Supported kinds and parameter ranges:

    * box: size_x, size_y, size_z > 0
    * sphere: radius > 0, subdivisions in 1..6
    * cylinder: radius, height > 0, segments in 3..256
    * cone: radius, height > 0, segments in 3..256
    * torus: major_radius > minor_radius > 0, segments_major/minor in 3..256
    * lblock: size_x, size_y, size_z > 0, notch_x, notch_y in (0, 1)
    * table: width, depth, height > 0, top_thickness, leg_side fractions

    ``seed`` is reserved for parameterized variation; present kinds are pure
    functions of their params.
    """
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown primitive kind: {kind!r}") from None
    mesh = builder(dict(params))
    mesh.validate()
    return mesh


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _box_arrays(cx, cy, cz, hx, hy, hz):
    """Closed 8-vertex box centered at (cx, cy, cz)."""
    _check(hx > 0 and hy > 0 and hz > 0, "box dimensions must be positive")
    corners = np.array(
        [
            [-1, -1, -1], [1, -1, -1], [1, 1, -1], [-1, 1, -1],
            [-1, -1, 1], [1, -1, 1], [1, 1, 1], [-1, 1, 1],
        ],
        dtype=np.float64,
    )
    verts = corners * [hx, hy, hz] + [cx, cy, cz]
    tris = np.array(
        [
            [0, 2, 1], [0, 3, 2],  # bottom (z-)
            [4, 5, 6], [4, 6, 7],  # top (z+)
            [0, 1, 5], [0, 5, 4],  # front (y-)
            [2, 3, 7], [2, 7, 6],  # back (y+)
            [0, 4, 7], [0, 7, 3],  # left (x-)
            [1, 2, 6], [1, 6, 5],  # right (x+)
        ],
        dtype=np.int32,
    )
    # corner-direction normals; the renderer flat-shades when these disagree
    # with the face normal beyond the smoothing angle
    normals = corners / np.linalg.norm(corners, axis=1, keepdims=True)
    uv = 0.5 * (corners[:, :2] + 1.0)
    return verts, tris, uv, normals


def _box(params) -> TriMesh:
    sx = float(params.get("size_x", 1.0))
    sy = float(params.get("size_y", 1.0))
    sz = float(params.get("size_z", 1.0))
    v, t, uv, n = _box_arrays(0.0, 0.0, 0.0, sx / 2, sy / 2, sz / 2)
    return TriMesh(v, t, uv, n)


def _sphere(params) -> TriMesh:
    radius = float(params.get("radius", 0.5))
    sub = int(params.get("subdivisions", 3))
    _check(radius > 0, "sphere radius must be positive")
    _check(1 <= sub <= 6, "sphere subdivisions must lie in 1..6")

    phi = (1.0 + math.sqrt(5.0)) / 2.0
    verts = np.array(
        [
            [-1, phi, 0], [1, phi, 0], [-1, -phi, 0], [1, -phi, 0],
            [0, -1, phi], [0, 1, phi], [0, -1, -phi], [0, 1, -phi],
            [phi, 0, -1], [phi, 0, 1], [-phi, 0, -1], [-phi, 0, 1],
        ],
        dtype=np.float64,
    )
    verts /= np.linalg.norm(verts, axis=1, keepdims=True)
    tris = np.array(
        [
            [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
            [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
            [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
            [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
        ],
        dtype=np.int32,
    )
    for _ in range(sub):
        edge_mid: dict[tuple[int, int], int] = {}
        new_verts = [verts]
        next_idx = len(verts)

        def midpoint(i: int, j: int) -> int:
            nonlocal next_idx
            key = (i, j) if i < j else (j, i)
            if key in edge_mid:
                return edge_mid[key]
            m = verts[i] + verts[j]
            m /= np.linalg.norm(m)
            new_verts.append(m[None, :])
            edge_mid[key] = next_idx
            next_idx += 1
            return edge_mid[key]

        new_tris = []
        for a, b, c in tris:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_tris += [[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]
        verts = np.concatenate(new_verts, axis=0)
        tris = np.array(new_tris, dtype=np.int32)

    normals = verts.copy()
    u = (np.arctan2(verts[:, 1], verts[:, 0]) / (2 * math.pi)) % 1.0
    v = np.arccos(np.clip(verts[:, 2], -1, 1)) / math.pi
    uv = np.stack([u, v], axis=1)
    return TriMesh(verts * radius, tris, uv, normals)


def _disk_fan(center_idx: int, ring: np.ndarray, flip: bool) -> list[list[int]]:
    tris = []
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        tris.append([center_idx, b, a] if flip else [center_idx, a, b])
    return tris


def _cylinder(params) -> TriMesh:
    radius = float(params.get("radius", 0.5))
    height = float(params.get("height", 1.0))
    segs = int(params.get("segments", 32))
    _check(radius > 0 and height > 0, "cylinder dimensions must be positive")
    _check(3 <= segs <= 256, "cylinder segments must lie in 3..256")

    ang = 2 * math.pi * np.arange(segs) / segs
    ring = np.stack([np.cos(ang), np.sin(ang)], axis=1) * radius
    z0, z1 = -height / 2, height / 2

    # side rings carry radial normals; cap rings are duplicated with axial
    # normals so the caps shade flat
    side_bot = np.column_stack([ring, np.full(segs, z0)])
    side_top = np.column_stack([ring, np.full(segs, z1)])
    radial = np.column_stack([np.cos(ang), np.sin(ang), np.zeros(segs)])
    u = np.arange(segs) / segs

    verts = [side_bot, side_top, side_bot, side_top, [[0, 0, z0]], [[0, 0, z1]]]
    normals = [
        radial, radial,
        np.tile([0.0, 0.0, -1.0], (segs, 1)), np.tile([0.0, 0.0, 1.0], (segs, 1)),
        [[0.0, 0.0, -1.0]], [[0.0, 0.0, 1.0]],
    ]
    uvs = [
        np.stack([u, np.zeros(segs)], 1), np.stack([u, np.ones(segs)], 1),
        0.5 + ring / (2 * radius) * 0.5, 0.5 + ring / (2 * radius) * 0.5,
        [[0.5, 0.5]], [[0.5, 0.5]],
    ]
    sb, st, cb, ct = 0, segs, 2 * segs, 3 * segs
    c0, c1 = 4 * segs, 4 * segs + 1
    tris = []
    for i in range(segs):
        j = (i + 1) % segs
        tris += [[sb + i, sb + j, st + j], [sb + i, st + j, st + i]]
    tris += _disk_fan(c0, np.arange(cb, cb + segs), flip=True)
    tris += _disk_fan(c1, np.arange(ct, ct + segs), flip=False)
    return TriMesh(
        np.concatenate([np.asarray(a, dtype=np.float64) for a in verts]),
        np.array(tris, dtype=np.int32),
        np.clip(np.concatenate([np.asarray(a, dtype=np.float64) for a in uvs]), 0, 1),
        np.concatenate([np.asarray(a, dtype=np.float64) for a in normals]),
    )


def _cone(params) -> TriMesh:
    radius = float(params.get("radius", 0.5))
    height = float(params.get("height", 1.0))
    segs = int(params.get("segments", 32))
    _check(radius > 0 and height > 0, "cone dimensions must be positive")
    _check(3 <= segs <= 256, "cone segments must lie in 3..256")

    ang = 2 * math.pi * np.arange(segs) / segs
    ring = np.stack([np.cos(ang), np.sin(ang)], axis=1) * radius
    z0, z1 = -height / 2, height / 2  # base at z0, apex at z1
    slant = math.hypot(radius, height)
    side_n = np.column_stack(
        [np.cos(ang) * height / slant, np.sin(ang) * height / slant, np.full(segs, radius / slant)]
    )
    u = np.arange(segs) / segs

    side_ring = np.column_stack([ring, np.full(segs, z0)])
    verts = [side_ring, [[0, 0, z1]], side_ring, [[0, 0, z0]]]
    normals = [side_n, [[0.0, 0.0, 1.0]], np.tile([0.0, 0.0, -1.0], (segs, 1)), [[0.0, 0.0, -1.0]]]
    uvs = [np.stack([u, np.zeros(segs)], 1), [[0.5, 1.0]], 0.5 + ring / (2 * radius) * 0.5, [[0.5, 0.5]]]

    apex = segs
    base = segs + 1
    bc = 2 * segs + 1
    tris = []
    for i in range(segs):
        j = (i + 1) % segs
        tris.append([i, j, apex])
    tris += _disk_fan(bc, np.arange(base, base + segs), flip=True)
    return TriMesh(
        np.concatenate([np.asarray(a, dtype=np.float64) for a in verts]),
        np.array(tris, dtype=np.int32),
        np.clip(np.concatenate([np.asarray(a, dtype=np.float64) for a in uvs]), 0, 1),
        np.concatenate([np.asarray(a, dtype=np.float64) for a in normals]),
    )


def _torus(params) -> TriMesh:
    R = float(params.get("major_radius", 0.5))
    r = float(params.get("minor_radius", 0.2))
    nu = int(params.get("segments_major", 32))
    nv = int(params.get("segments_minor", 16))
    _check(R > r > 0, "torus requires major_radius > minor_radius > 0")
    _check(3 <= nu <= 256 and 3 <= nv <= 256, "torus segments must lie in 3..256")

    iu = np.arange(nu)
    iv = np.arange(nv)
    tu = 2 * math.pi * iu / nu
    tv = 2 * math.pi * iv / nv
    cu, su = np.cos(tu)[:, None], np.sin(tu)[:, None]
    cv, sv = np.cos(tv)[None, :], np.sin(tv)[None, :]
    x = (R + r * cv) * cu
    y = (R + r * cv) * su
    z = np.broadcast_to(r * sv, x.shape)
    verts = np.stack([x, y, z], axis=-1).reshape(-1, 3)
    nx = cv * cu
    ny = cv * su
    nz = np.broadcast_to(sv, nx.shape)
    normals = np.stack([nx, ny, nz], axis=-1).reshape(-1, 3)
    uu, vv = np.meshgrid(iu / nu, iv / nv, indexing="ij")
    uv = np.stack([uu, vv], axis=-1).reshape(-1, 2)

    tris = []
    for i in range(nu):
        for j in range(nv):
            a = i * nv + j
            b = ((i + 1) % nu) * nv + j
            c = ((i + 1) % nu) * nv + (j + 1) % nv
            d = i * nv + (j + 1) % nv
            tris += [[a, b, c], [a, c, d]]
    return TriMesh(verts, np.array(tris, dtype=np.int32), uv, normals)


def _merge(parts: list[tuple]) -> TriMesh:
    verts, tris, uvs, normals = [], [], [], []
    offset = 0
    for v, t, uv, n in parts:
        verts.append(v)
        tris.append(np.asarray(t) + offset)
        uvs.append(uv)
        normals.append(n)
        offset += len(v)
    return TriMesh(
        np.concatenate(verts),
        np.concatenate(tris).astype(np.int32),
        np.concatenate(uvs),
        np.concatenate(normals),
    )


def _lblock(params) -> TriMesh:
    sx = float(params.get("size_x", 1.0))
    sy = float(params.get("size_y", 1.0))
    sz = float(params.get("size_z", 0.6))
    fx = float(params.get("notch_x", 0.5))
    fy = float(params.get("notch_y", 0.5))
    _check(sx > 0 and sy > 0 and sz > 0, "lblock dimensions must be positive")
    _check(0 < fx < 1 and 0 < fy < 1, "lblock notch fractions must lie in (0, 1)")
    # foot spans the full x range; the second box fills the back-left corner
    foot = _box_arrays(0.0, -sy * fy / 2, 0.0, sx / 2, sy * (1 - fy) / 2 + sy * fy / 2 - sy * (1 - fy) / 2, sz / 2)
    # recompute cleanly: foot occupies y in [-sy/2, sy/2 - sy*(1-fy)] is messy;
    # use explicit extents instead
    foot = _box_extents(-sx / 2, sx / 2, -sy / 2, sy / 2 - sy * (1 - fy), -sz / 2, sz / 2)
    wing = _box_extents(-sx / 2, sx / 2 - sx * (1 - fx), sy / 2 - sy * (1 - fy), sy / 2, -sz / 2, sz / 2)
    return _merge([foot, wing])


def _box_extents(x0, x1, y0, y1, z0, z1):
    return _box_arrays((x0 + x1) / 2, (y0 + y1) / 2, (z0 + z1) / 2, (x1 - x0) / 2, (y1 - y0) / 2, (z1 - z0) / 2)


def _table(params) -> TriMesh:
    w = float(params.get("width", 1.2))
    d = float(params.get("depth", 0.8))
    h = float(params.get("height", 0.7))
    tt = float(params.get("top_thickness", 0.08))
    leg = float(params.get("leg_side", 0.08))
    _check(w > 0 and d > 0 and h > 0, "table dimensions must be positive")
    _check(0 < tt < h, "table top thickness must lie in (0, height)")
    _check(0 < leg < min(w, d) / 2, "table leg side too large")

    z0 = -h / 2
    top = _box_extents(-w / 2, w / 2, -d / 2, d / 2, z0 + h - tt, z0 + h)
    parts = [top]
    for sx in (-1, 1):
        for sy in (-1, 1):
            cx = sx * (w / 2 - leg)
            cy = sy * (d / 2 - leg)
            parts.append(_box_extents(cx - leg / 2, cx + leg / 2, cy - leg / 2, cy + leg / 2, z0, z0 + h - tt))
    return _merge(parts)


_BUILDERS = {
    "box": _box,
    "sphere": _sphere,
    "cylinder": _cylinder,
    "cone": _cone,
    "torus": _torus,
    "lblock": _lblock,
    "table": _table,
}
