"""Plane sections of a cone and their exact second moments.

A cone here is the dilation-invariant set ``{x3 > 0, (x1/x3, x2/x3) in w}``
for a bounded plane section ``w``.  Everything spectral about the cone that
this package bounds is driven by three numbers, the second moments of the
section

    M0 = int_w x2^2,   M1 = int_w x1*x2,   M2 = int_w x1^2,

together with the area.  For polygons the moments are computed in closed
form edge by edge (Green's theorem), for discs from the classical formulas,
so no quadrature error enters the bounds.

The module also carries the geometric bookkeeping needed by the spectral
estimates: tangent substructures of a section (interior, one half-plane per
edge, one wedge per corner), the radial projection used to compare a sharp
cone with a thin cylinder, and the opening of the tangent wedge along a cone
edge (a dihedral angle, equal to the interior angle of the spherical section
at the corresponding vertex).

Conventions: angles in radians, vertices normalized to counterclockwise
order, no implicit recentring of sections.  A separate helper reports the
centroid when a caller wants to recentre explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, UsageError

# Relative tolerance used to flag coincident vertices and zero-length edges.
DEGENERACY_RTOL = 1e-12


def _cross2(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


class Polygon:
    """Simple polygon section, vertices stored counterclockwise.

    Parameters
    ----------
    vertices : array_like, shape (n, 2)
        Corner coordinates in order.  Clockwise input is accepted and
        silently reversed; the ``reoriented`` attribute records that.

    Raises
    ------
    GeometryError
        Fewer than three vertices, coincident consecutive vertices
        (within ``DEGENERACY_RTOL`` times the diameter), zero area,
        a zero-angle spike, or a self-intersecting boundary.
    """

    def __init__(self, vertices) -> None:
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise GeometryError("polygon needs at least 3 plane vertices")
        if not np.all(np.isfinite(v)):
            raise GeometryError("polygon vertices must be finite")
        diam = float(np.ptp(v, axis=0).max())
        if diam == 0.0:
            raise GeometryError("polygon has zero diameter")
        tol = DEGENERACY_RTOL * diam
        edges = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(edges[:, 0], edges[:, 1]) <= tol):
            raise GeometryError("coincident consecutive vertices")
        area2 = float(np.sum(v[:, 0] * np.roll(v[:, 1], -1)
                             - np.roll(v[:, 0], -1) * v[:, 1]))
        if abs(area2) <= tol * diam:
            raise GeometryError("polygon area is numerically zero")
        self.reoriented = area2 < 0.0
        if self.reoriented:
            v = v[::-1].copy()
        self.vertices = v
        self._check_spikes(tol)
        self._check_simple()

    def _check_spikes(self, tol: float) -> None:
        v = self.vertices
        n = len(v)
        for i in range(n):
            u = v[i - 1] - v[i]
            w = v[(i + 1) % n] - v[i]
            # zero interior angle means the two edges overlap: a spike
            if _cross2(w, u) == 0.0 and np.dot(w, u) > 0.0:
                raise GeometryError(f"zero-angle spike at vertex {i}")

    def _check_simple(self) -> None:
        v = self.vertices
        n = len(v)
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue  # adjacent edges share a vertex by construction
                c, d = v[j], v[(j + 1) % n]
                if _segments_intersect(a, b, c, d):
                    raise GeometryError(
                        f"boundary self-intersects (edges {i} and {j})")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Polygon({self.vertices.tolist()!r})"


class Disc:
    """Disc section with arbitrary centre."""

    def __init__(self, center, radius: float) -> None:
        c = np.asarray(center, dtype=float)
        if c.shape != (2,) or not np.all(np.isfinite(c)):
            raise GeometryError("disc centre must be a finite 2-vector")
        r = float(radius)
        if not math.isfinite(r) or r <= 0.0:
            raise GeometryError("disc radius must be positive")
        self.center = c
        self.radius = r

    def __repr__(self) -> str:  # pragma: no cover
        return f"Disc(center={self.center.tolist()!r}, radius={self.radius!r})"


Section = Polygon | Disc


def _orient(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _on_segment(p, q, r) -> bool:
    # r collinear with pq: does r lie within the bounding box of pq?
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def _segments_intersect(a, b, c, d) -> bool:
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if ((o1 > 0) != (o2 > 0)) and ((o3 > 0) != (o4 > 0)) and o1 != 0 and o2 != 0 \
            and o3 != 0 and o4 != 0:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


@dataclass(frozen=True)
class Moments:
    """Area and second moments of a section.

    ``M0, M1, M2`` are the raw integrals of ``x2^2``, ``x1*x2``, ``x1^2``;
    ``m0, m1, m2`` the same divided by the area.
    """

    area: float
    M0: float
    M1: float
    M2: float

    @property
    def m0(self) -> float:
        return self.M0 / self.area

    @property
    def m1(self) -> float:
        return self.M1 / self.area

    @property
    def m2(self) -> float:
        return self.M2 / self.area

    def as_dict(self) -> dict:
        return {"area": self.area, "M0": self.M0, "M1": self.M1,
                "M2": self.M2, "m0": self.m0, "m1": self.m1, "m2": self.m2}


def polygon_moments(polygon: Polygon) -> Moments:
    """Exact area and second moments of a simple polygon.

    Green's theorem turns each area integral into a sum over boundary
    edges.  With ``ci = x_i*y_{i+1} - x_{i+1}*y_i`` (indices cyclic):

        area      = sum(ci) / 2
        int x^2   = sum((x_i^2 + x_i x_{i+1} + x_{i+1}^2) ci) / 12
        int x*y   = sum((x_i y_{i+1} + 2 x_i y_i + 2 x_{i+1} y_{i+1}
                         + x_{i+1} y_i) ci) / 24
        int y^2   = sum((y_i^2 + y_i y_{i+1} + y_{i+1}^2) ci) / 12
    """
    x = polygon.vertices[:, 0]
    y = polygon.vertices[:, 1]
    xn = np.roll(x, -1)
    yn = np.roll(y, -1)
    c = x * yn - xn * y
    area = 0.5 * float(np.sum(c))
    ix2 = float(np.sum((x * x + x * xn + xn * xn) * c)) / 12.0
    ixy = float(np.sum((x * yn + 2.0 * x * y + 2.0 * xn * yn + xn * y) * c)) / 24.0
    iy2 = float(np.sum((y * y + y * yn + yn * yn) * c)) / 12.0
    return Moments(area=area, M0=iy2, M1=ixy, M2=ix2)


def disc_moments(disc: Disc) -> Moments:
    """Moments of a disc: ``m2 = R^2/4 + c1^2``, ``m1 = c1 c2``, ``m0 = R^2/4 + c2^2``."""
    c1, c2 = disc.center
    r = disc.radius
    area = math.pi * r * r
    quarter = 0.25 * r * r
    return Moments(area=area,
                   M0=area * (quarter + c2 * c2),
                   M1=area * (c1 * c2),
                   M2=area * (quarter + c1 * c1))


def moments(section: Section) -> Moments:
    if isinstance(section, Polygon):
        return polygon_moments(section)
    if isinstance(section, Disc):
        return disc_moments(section)
    raise UsageError(f"not a section: {section!r}")


def centroid(section: Section) -> np.ndarray:
    """Centroid of a section (no recentring is ever done implicitly)."""
    if isinstance(section, Disc):
        return section.center.copy()
    v = section.vertices
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    c = x * yn - xn * y
    area = 0.5 * float(np.sum(c))
    cx = float(np.sum((x + xn) * c)) / (6.0 * area)
    cy = float(np.sum((y + yn) * c)) / (6.0 * area)
    return np.array([cx, cy])


def scale_section(section: Section, eps: float) -> Section:
    """Dilate a section by ``eps`` about the origin."""
    e = float(eps)
    if not math.isfinite(e) or e <= 0.0:
        raise GeometryError("scale factor must be positive")
    if isinstance(section, Disc):
        return Disc(e * section.center, e * section.radius)
    if isinstance(section, Polygon):
        return Polygon(e * section.vertices)
    raise UsageError(f"not a section: {section!r}")


# ---------------------------------------------------------------------------
# quadrature nodes on a section (used for consistency checks, not for moments)

def section_quadrature(section: Section, order: int = 12):
    """Quadrature nodes and weights integrating smooth f over the section.

    Polygons are fanned into signed triangles from the first vertex, each
    mapped from the unit square by the collapsed (Duffy) map, with a
    Gauss-Legendre rule per direction; the signed Jacobian makes the fan
    correct for nonconvex simple polygons.  Discs use Gauss-Legendre in the
    radius against an equally weighted periodic rule in the angle.  Exact
    for polynomial integrands of degree up to roughly ``2*order - 2``.

    Returns
    -------
    points : ndarray, shape (N, 2)
    weights : ndarray, shape (N,)
        Weights sum to the section area (some may be negative on
        nonconvex polygons).
    """
    g = int(order)
    if g < 2:
        raise UsageError("quadrature order must be at least 2")
    gx, gw = np.polynomial.legendre.leggauss(g)
    u01 = 0.5 * (gx + 1.0)  # nodes on [0, 1]
    w01 = 0.5 * gw
    if isinstance(section, Disc):
        r = section.radius * u01
        wr = section.radius * w01 * r          # includes the polar Jacobian
        m = max(2 * g, 16)
        phi = 2.0 * np.pi * np.arange(m) / m
        wphi = 2.0 * np.pi / m
        pts = section.center + np.stack(
            [np.outer(r, np.cos(phi)).ravel(), np.outer(r, np.sin(phi)).ravel()],
            axis=1)
        wts = np.outer(wr, np.full(m, wphi)).ravel()
        return pts, wts
    if not isinstance(section, Polygon):
        raise UsageError(f"not a section: {section!r}")
    v = section.vertices
    pts_list, wts_list = [], []
    uu, vv = np.meshgrid(u01, u01, indexing="ij")
    ww = np.outer(w01, w01)
    for i in range(1, len(v) - 1):
        a, b, c = v[0], v[i], v[i + 1]
        j0 = _cross2(b - a, c - a)  # signed, twice the triangle area
        # collapsed map x = a + u*(b-a) + u*v*(c-b), jacobian u*j0
        x = a[0] + uu * (b[0] - a[0]) + uu * vv * (c[0] - b[0])
        y = a[1] + uu * (b[1] - a[1]) + uu * vv * (c[1] - b[1])
        pts_list.append(np.stack([x.ravel(), y.ravel()], axis=1))
        wts_list.append((ww * uu * j0).ravel())
    return np.concatenate(pts_list), np.concatenate(wts_list)


# ---------------------------------------------------------------------------
# tangent substructures

@dataclass(frozen=True)
class TangentSubstructure:
    """One tangent model of the section: interior, side, or vertex.

    For ``kind == "side"`` the outward unit normal of the edge is recorded
    (the field angle against the matching half-space is filled in by the
    model-operator layer, which knows the field).  For ``kind == "vertex"``
    the plane opening angle at the corner is recorded.
    """

    kind: str                      # "interior" | "side" | "vertex"
    index: int = -1                # edge or vertex index, -1 for interior
    outward_normal: tuple[float, float] | None = None
    opening: float | None = None


def interior_angle(polygon: Polygon, i: int) -> float:
    """Interior corner angle at vertex ``i``, in (0, 2*pi).

    Reflex corners of nonconvex polygons give angles above pi.  Angles at
    (numerically) 0 or pi are rejected: such a corner is not a genuine
    vertex and the tangent wedge is not defined there.
    """
    v = polygon.vertices
    n = len(v)
    u = v[(i - 1) % n] - v[i % n]
    w = v[(i + 1) % n] - v[i % n]
    # interior lies to the left of the oriented boundary, so sweep
    # counterclockwise from the outgoing edge to the reversed incoming one
    ang = math.atan2(_cross2(w, u), float(np.dot(w, u))) % (2.0 * math.pi)
    if min(ang, abs(ang - math.pi), 2.0 * math.pi - ang) < 1e-9:
        raise GeometryError(f"degenerate corner angle at vertex {i % n}")
    return ang


def tangent_substructures(polygon: Polygon) -> list[TangentSubstructure]:
    """Enumerate the tangent models of a polygonal section.

    One interior entry, one side entry per edge (with outward unit normal),
    one vertex entry per corner (with plane opening angle).
    """
    v = polygon.vertices
    n = len(v)
    out = [TangentSubstructure(kind="interior")]
    for i in range(n):
        d = v[(i + 1) % n] - v[i]
        norm = math.hypot(d[0], d[1])
        # outward normal of a CCW boundary is the edge direction rotated -90
        out.append(TangentSubstructure(
            kind="side", index=i,
            outward_normal=(d[1] / norm, -d[0] / norm)))
    for i in range(n):
        out.append(TangentSubstructure(
            kind="vertex", index=i, opening=interior_angle(polygon, i)))
    return out


# ---------------------------------------------------------------------------
# radial projection and cone-edge openings

def project_P(xp, t: float) -> np.ndarray:
    """Map ``(x', t)`` to the point at distance ``t`` on the ray through ``(x', 1)``.

    This is the radial graph parametrization of the cone over the section:
    ``P(x', t) = t * (x'_1, x'_2, 1) / |(x'_1, x'_2, 1)|``.  At ``x' = 0``
    its Jacobian is the identity, and the deviation from the identity grows
    linearly with ``|x'|``; that is what makes a sharp cone comparable to a
    thin cylinder.
    """
    x = np.asarray(xp, dtype=float)
    if x.shape != (2,):
        raise UsageError("x' must be a plane point")
    tt = float(t)
    if not (tt > 0.0) or not math.isfinite(tt):
        raise GeometryError("t must be positive")
    s = math.sqrt(1.0 + x[0] * x[0] + x[1] * x[1])
    return np.array([tt * x[0] / s, tt * x[1] / s, tt / s])


def projection_jacobian(xp, t: float = 1.0, step: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of :func:`project_P` at ``(x', t)``."""
    x0 = np.asarray(xp, dtype=float)
    jac = np.zeros((3, 3))
    for j in range(3):
        dp = np.zeros(3)
        dp[j] = step
        up = project_P(x0 + dp[:2], t + dp[2])
        dn = project_P(x0 - dp[:2], t - dp[2])
        jac[:, j] = (up - dn) / (2.0 * step)
    return jac


def spherical_vertex_opening(polygon: Polygon, i: int, eps: float) -> float:
    """Opening of the tangent wedge along the cone edge through vertex ``i``.

    The cone over the section scaled by ``eps`` has a one-dimensional edge
    through ``(eps*v, 1)`` for each polygon vertex ``v``.  The tangent wedge
    along that edge is bounded by the planes of the two adjacent lateral
    faces; its opening is their dihedral angle measured through the inside
    of the cone, equal to the interior angle of the spherical section at
    the corresponding vertex.  As ``eps -> 0`` the opening converges to the
    plane corner angle.

    The angle is computed by projecting the two adjacent edge rays onto the
    plane orthogonal to the cone edge and measuring the arc between them
    that contains an interior test direction (the lifted corner bisector),
    which keeps reflex corners of nonconvex sections correct.
    """
    e = float(eps)
    if not (e > 0.0) or not math.isfinite(e):
        raise GeometryError("eps must be positive")
    v = polygon.vertices
    n = len(v)
    i = i % n
    alpha = interior_angle(polygon, i)  # also rejects degenerate corners
    p = v[i]
    a = v[(i - 1) % n]
    b = v[(i + 1) % n]
    e3 = np.array([e * p[0], e * p[1], 1.0])
    eh = e3 / np.linalg.norm(e3)

    def perp(q):
        q3 = np.array([e * q[0], e * q[1], 1.0])
        return q3 - (q3 @ eh) * eh

    pa = perp(a)
    pb = perp(b)
    # interior test direction: lift a point slightly inside the corner
    w = b - p
    ch, sh = math.cos(0.5 * alpha), math.sin(0.5 * alpha)
    bis = np.array([ch * w[0] - sh * w[1], sh * w[0] + ch * w[1]])
    bis /= np.linalg.norm(bis)
    delta = 1e-3 * min(np.linalg.norm(a - p), np.linalg.norm(w))
    pw = perp(p + delta * bis)
    q1 = pa / np.linalg.norm(pa)
    q2 = np.cross(eh, q1)
    th_b = math.atan2(pb @ q2, pb @ q1) % (2.0 * math.pi)
    th_w = math.atan2(pw @ q2, pw @ q1) % (2.0 * math.pi)
    return th_b if th_w <= th_b else 2.0 * math.pi - th_b


# ---------------------------------------------------------------------------
# JSON interchange

def section_from_json(obj: dict) -> Section:
    """Build a section from ``{"polygon": [[x, y], ...]}`` or
    ``{"disc": {"center": [x, y], "radius": r}}``."""
    if not isinstance(obj, dict):
        raise UsageError("section JSON must be an object")
    keys = set(obj.keys())
    if keys == {"polygon"}:
        verts = obj["polygon"]
        if not isinstance(verts, list):
            raise UsageError("polygon must be a list of [x, y] pairs")
        for p in verts:
            if not (isinstance(p, (list, tuple)) and len(p) == 2
                    and all(isinstance(c, (int, float)) for c in p)):
                raise UsageError("polygon must be a list of [x, y] pairs")
        return Polygon(verts)
    if keys == {"disc"}:
        d = obj["disc"]
        if not (isinstance(d, dict) and set(d.keys()) == {"center", "radius"}):
            raise UsageError('disc must be {"center": [x, y], "radius": r}')
        c = d["center"]
        if not (isinstance(c, (list, tuple)) and len(c) == 2
                and all(isinstance(x, (int, float)) for x in c)):
            raise UsageError("disc centre must be [x, y]")
        if not isinstance(d["radius"], (int, float)):
            raise UsageError("disc radius must be a number")
        return Disc(c, d["radius"])
    raise UsageError('section JSON must have exactly one of "polygon", "disc"')


def section_to_json(section: Section) -> dict:
    if isinstance(section, Polygon):
        return {"polygon": [[float(x), float(y)] for x, y in section.vertices]}
    if isinstance(section, Disc):
        return {"disc": {"center": [float(section.center[0]),
                                    float(section.center[1])],
                         "radius": float(section.radius)}}
    raise UsageError(f"not a section: {section!r}")
