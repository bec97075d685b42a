"""Model operators for the bottom of the essential spectrum.

A cone over a small section concentrates its low spectrum near the apex,
while the essential spectrum is governed by what the boundary looks like
far from the apex: flat space in the interior, half-spaces along the
faces, wedges along the edges.  The corresponding scalar model energies
(per unit field strength) are

* interior: 1 (the Landau level),
* half-space whose boundary plane makes the unsigned angle ``theta``
  with the field: ``sigma(theta)``, computed from a Schroedinger operator
  on a half-plane; ``sigma(0)`` is the de Gennes constant ``Theta_0 ~ 0.59``
  and ``sigma(pi/2) = 1``, nondecreasing in between,
* wedge of opening ``alpha``: no closed form; a trusted caller-supplied
  floor ``c_floor`` is used from below and the small-opening upper bound
  ``|B| alpha / sqrt(3)`` from above (valid for fields in the bisector
  plane or tangent to a face).

Combining the three classes gives two-sided estimates for the essential
energy of the reference cylinder over a section and of sharpening cones,
and an explicit threshold for when the apex bound drops below every
non-apex channel, certifying corner concentration.

All finite-difference energies here use Dirichlet truncation of the
unbounded directions, which biases them upward; sources say so.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import eigsh

from .errors import AccuracyWarning, DomainError, SolverError, UsageError
from .gauge import MagneticField, e_constant
from .geometry import (Polygon, Section, centroid, moments,
                       spherical_vertex_opening, tangent_substructures)
from .halfline import GridSpec

#: Provenance kinds carried by estimates.
UPPER_BOUND = "UpperBound"
LOWER_BOUND = "LowerBound"
TWO_SIDED = "TwoSided"


@dataclass(frozen=True)
class DeGennesResult:
    xi: float
    mu: float


@dataclass(frozen=True)
class Grid2D:
    """Box and mesh for the half-plane model: ``s in (-s_half, s_half)``,
    ``t in [0, t_max)``, Dirichlet on the artificial sides, Neumann at ``t = 0``."""

    s_half: float = 10.0
    t_max: float = 20.0
    n_s: int = 159
    n_t: int = 160

    def __post_init__(self) -> None:
        if not (self.s_half > 0.0 and self.t_max > 0.0):
            raise UsageError("box dimensions must be positive")
        if self.n_s < 16 or self.n_t < 16:
            raise UsageError("2d grid needs at least 16 points per direction")


@dataclass(frozen=True)
class EnergyEstimate:
    """Energy value(s) with provenance.

    ``kind`` is one of ``UpperBound``, ``LowerBound``, ``TwoSided``; the
    corresponding fields among ``lower``/``upper`` are set, and for
    ``TwoSided`` the invariant ``lower <= upper`` holds.
    """

    kind: str
    source: str
    lower: float | None = None
    upper: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (UPPER_BOUND, LOWER_BOUND, TWO_SIDED):
            raise UsageError(f"unknown estimate kind {self.kind!r}")
        if self.kind == UPPER_BOUND and self.upper is None:
            raise UsageError("upper bound estimate needs an upper value")
        if self.kind == LOWER_BOUND and self.lower is None:
            raise UsageError("lower bound estimate needs a lower value")
        if self.kind == TWO_SIDED:
            if self.lower is None or self.upper is None:
                raise UsageError("two-sided estimate needs both values")
            if self.lower > self.upper:
                raise DomainError("two-sided estimate with lower > upper")

    @property
    def value(self) -> float:
        return self.upper if self.upper is not None else self.lower

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind, "source": self.source}
        if self.lower is not None:
            out["lower"] = self.lower
        if self.upper is not None:
            out["upper"] = self.upper
        return out


# ---------------------------------------------------------------------------
# de Gennes operator on the half-line

DEFAULT_DEGENNES_GRID = GridSpec(x_max=15.0, n=3000)


def degennes_mu(xi: float, grid: GridSpec | None = None) -> DeGennesResult:
    """Lowest Neumann eigenvalue of ``-u'' + (t - xi)^2 u`` on the half-line.

    Second-order scheme; the Neumann condition at 0 enters through the
    mirror ghost point, symmetrized by a diagonal similarity so a
    tridiagonal symmetric eigensolver applies.  Dirichlet truncation at
    ``x_max`` (upward bias, exponentially small).  ``mu(0) = 1`` exactly,
    and ``mu`` attains its minimum ``Theta_0`` at ``xi = sqrt(Theta_0)``.
    """
    x = float(xi)
    if not math.isfinite(x):
        raise DomainError("xi must be finite")
    g = grid if grid is not None else \
        GridSpec(x_max=max(DEFAULT_DEGENNES_GRID.x_max, x + 12.0),
                 n=DEFAULT_DEGENNES_GRID.n)
    return DeGennesResult(xi=x, mu=_degennes_cached(x, g.x_max, g.n))


@lru_cache(maxsize=4096)
def _degennes_cached(xi: float, x_max: float, n: int) -> float:
    h = x_max / n
    t = h * np.arange(n)  # node 0 is the Neumann end; x_max is Dirichlet
    diag = np.full(n, 2.0 / h ** 2) + (t - xi) ** 2
    off = np.full(n - 1, -1.0 / h ** 2)
    off[0] = -math.sqrt(2.0) / h ** 2
    val = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0),
                           eigvals_only=True)
    return float(val[0])


def theta0(grid: GridSpec | None = None) -> float:
    """The de Gennes constant: ``min over xi`` of :func:`degennes_mu`."""
    return theta0_detail(grid).mu


def theta0_detail(grid: GridSpec | None = None) -> DeGennesResult:
    g = grid if grid is not None else DEFAULT_DEGENNES_GRID
    return _theta0_cached(g.x_max, g.n)


@lru_cache(maxsize=32)
def _theta0_cached(x_max: float, n: int) -> DeGennesResult:
    res = minimize_scalar(lambda xi: _degennes_cached(float(xi), x_max, n),
                          bounds=(0.4, 1.2), method="bounded",
                          options={"xatol": 1e-8})
    if not res.success:
        raise SolverError(f"de Gennes minimization failed: {res.message}")
    # the minimum is interior to the bracket; hitting an end means trouble
    if res.x < 0.41 or res.x > 1.19:
        raise SolverError("de Gennes minimizer stuck at the bracket boundary")
    return DeGennesResult(xi=float(res.x), mu=float(res.fun))


# ---------------------------------------------------------------------------
# half-space model

DEFAULT_GRID_2D = Grid2D()


def halfspace_sigma(theta: float, grid2d: Grid2D | None = None) -> float:
    """Ground energy of the half-space with field at angle ``theta`` to the wall.

    For ``theta`` in ``(0, pi/2]`` this is the bottom of
    ``-d2/ds2 - d2/dt2 + (t cos(theta) - s sin(theta))^2`` on the half-plane
    ``t > 0`` with Neumann at ``t = 0``.  The operator degenerates as
    ``theta -> 0`` (the minimizing frequency escapes in ``s``), so
    ``theta = 0`` is delegated to the de Gennes constant instead of the
    2d solver.  Monotone nondecreasing from ``Theta_0`` to 1.
    """
    th = float(theta)
    if not (0.0 <= th <= math.pi / 2.0 + 1e-12):
        raise DomainError("theta must lie in [0, pi/2]")
    if th == 0.0:
        return theta0()
    g = grid2d if grid2d is not None else DEFAULT_GRID_2D
    if g.s_half * math.sqrt(math.sin(th)) < 4.0:
        warnings.warn(
            f"half-plane box may be too small for theta={th:.4g}",
            AccuracyWarning, stacklevel=2)
    return _sigma_cached(th, g.s_half, g.t_max, g.n_s, g.n_t)


@lru_cache(maxsize=256)
def _sigma_cached(theta: float, s_half: float, t_max: float,
                  n_s: int, n_t: int) -> float:
    hs = 2.0 * s_half / (n_s + 1)
    ht = t_max / n_t
    s = -s_half + hs * np.arange(1, n_s + 1)
    t = ht * np.arange(n_t)  # t = 0 is the physical Neumann boundary
    ls = sparse.diags([np.full(n_s - 1, -1.0 / hs ** 2),
                       np.full(n_s, 2.0 / hs ** 2),
                       np.full(n_s - 1, -1.0 / hs ** 2)], [-1, 0, 1])
    off_t = np.full(n_t - 1, -1.0 / ht ** 2)
    off_t[0] = -math.sqrt(2.0) / ht ** 2  # symmetrized Neumann coupling
    lt = sparse.diags([off_t, np.full(n_t, 2.0 / ht ** 2), off_t], [-1, 0, 1])
    ham = sparse.kron(sparse.identity(n_t), ls) \
        + sparse.kron(lt, sparse.identity(n_s))
    tt, ss = np.meshgrid(t, s, indexing="ij")
    pot = (tt * math.cos(theta) - ss * math.sin(theta)) ** 2
    ham = (ham + sparse.diags(pot.ravel())).tocsc()
    try:
        val = eigsh(ham, k=1, sigma=0.0, which="LM",
                    return_eigenvectors=False)
    except Exception as exc:  # factorization or convergence failure
        raise SolverError(f"half-plane eigensolve failed: {exc}") from exc
    return float(val[0])


# ---------------------------------------------------------------------------
# wedges, cylinders, sharpening cones

def wedge_energy_upper(alpha: float, field_norm: float = 1.0) -> EnergyEstimate:
    """Leading-order upper bound ``|B| alpha / sqrt(3)`` for a wedge.

    Valid for fields lying in the bisector plane or tangent to a face of
    the wedge; cubic corrections in the opening are dropped.
    """
    a = float(alpha)
    if not (0.0 < a < 2.0 * math.pi):
        raise DomainError("wedge opening must lie in (0, 2*pi)")
    bn = float(field_norm)
    if bn < 0.0 or not math.isfinite(bn):
        raise DomainError("field norm must be nonnegative")
    return EnergyEstimate(
        kind=UPPER_BOUND, upper=bn * a / math.sqrt(3.0),
        source="wedge leading order, orientation-restricted")


def _field_angle_to_plane(bhat: np.ndarray, normal: np.ndarray) -> float:
    """Unsigned angle in [0, pi/2] between a unit field and a plane."""
    n = normal / np.linalg.norm(normal)
    return math.asin(min(1.0, abs(float(bhat @ n))))


def _assemble_two_sided(field_norm: float, sigmas: list[float],
                        openings: list[float], c_floor: float,
                        source: str) -> EnergyEstimate:
    """Combine interior, side and wedge channels into a two-sided estimate."""
    wedge_uppers = [wedge_energy_upper(a).upper for a in openings]
    upper_unit = min([1.0] + sigmas + wedge_uppers)
    lower_unit = min([1.0] + sigmas + ([c_floor] if openings else []))
    if lower_unit > upper_unit:
        raise DomainError(
            "c_floor exceeds a wedge upper bound; the supplied floor cannot "
            "be valid for these edge openings")
    return EnergyEstimate(kind=TWO_SIDED, source=source,
                          lower=field_norm * lower_unit,
                          upper=field_norm * upper_unit)


def _check_c_floor(c_floor: float) -> float:
    c = float(c_floor)
    if not (0.0 < c <= 1.0):
        raise UsageError("c_floor must lie in (0, 1]")
    return c


def cylinder_energy(field, section: Section, c_floor: float,
                    grid2d: Grid2D | None = None) -> EnergyEstimate:
    """Two-sided estimate for the reference cylinder over a polygonal section.

    The cylinder ``w x R`` has tangent models: full space in the interior,
    one half-space per side (boundary plane spanned by the edge and the
    axis), one axis-parallel wedge per corner with the plane opening angle.
    The upper value is the least of the channel upper values, the lower
    value the least of the channel lower values with wedges floored at
    ``c_floor * |B|``.  Homogeneous of degree one in the field.
    """
    b = MagneticField.from_any(field)
    c = _check_c_floor(c_floor)
    if not isinstance(section, Polygon):
        raise UsageError("cylinder estimates need a polygonal section")
    if b.norm == 0.0:
        return EnergyEstimate(kind=TWO_SIDED, lower=0.0, upper=0.0,
                              source="zero field")
    bhat = b.as_array() / b.norm
    sigmas = []
    openings = []
    for sub in tangent_substructures(section):
        if sub.kind == "side":
            nx, ny = sub.outward_normal
            th = _field_angle_to_plane(bhat, np.array([nx, ny, 0.0]))
            sigmas.append(halfspace_sigma(th, grid2d))
        elif sub.kind == "vertex":
            openings.append(sub.opening)
    return _assemble_two_sided(
        b.norm, sigmas, openings, c,
        source="cylinder tangent models; sigma by finite differences with "
               "Dirichlet truncation (upward bias), wedges floored at c_floor")


def essential_spectrum_limit(field, section: Section, epsilons,
                             c_floor: float,
                             grid2d: Grid2D | None = None
                             ) -> list[tuple[float, EnergyEstimate]]:
    """Two-sided essential-energy estimates for the cone over each ``eps * w``.

    The tangent models of the cone away from the apex are read off on the
    unit sphere: one half-space per lateral face (plane through the origin
    and two consecutive lifted vertices), one wedge per cone edge with the
    spherical opening.  As ``eps -> 0`` the face planes tend to the
    cylinder's vertical planes and the openings tend to the plane corner
    angles, so these estimates converge to :func:`cylinder_energy`.
    """
    b = MagneticField.from_any(field)
    c = _check_c_floor(c_floor)
    if not isinstance(section, Polygon):
        raise UsageError("essential spectrum estimates need a polygonal section")
    eps_list = [float(e) for e in epsilons]
    if not eps_list or any(not (e > 0.0) for e in eps_list):
        raise DomainError("epsilons must be positive")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise DomainError("epsilons must be strictly decreasing")
    verts = section.vertices
    n = len(verts)
    out = []
    for eps in eps_list:
        if b.norm == 0.0:
            out.append((eps, EnergyEstimate(kind=TWO_SIDED, lower=0.0,
                                            upper=0.0, source="zero field")))
            continue
        bhat = b.as_array() / b.norm
        sigmas = []
        for i in range(n):
            a3 = np.array([eps * verts[i][0], eps * verts[i][1], 1.0])
            b3 = np.array([eps * verts[(i + 1) % n][0],
                           eps * verts[(i + 1) % n][1], 1.0])
            normal = np.cross(a3, b3)
            th = _field_angle_to_plane(bhat, normal)
            sigmas.append(halfspace_sigma(th, grid2d))
        openings = [spherical_vertex_opening(section, i, eps)
                    for i in range(n)]
        out.append((eps, _assemble_two_sided(
            b.norm, sigmas, openings, c,
            source=f"cone tangent models at eps={eps:g}; sigma by finite "
                   "differences with Dirichlet truncation (upward bias), "
                   "wedges floored at c_floor")))
    return out


# ---------------------------------------------------------------------------
# corner concentration

@dataclass(frozen=True)
class ConcentrationVerdict:
    """Outcome of the apex-vs-rest comparison at one sharpness ``eps``."""

    epsilon: float
    epsilon_star: float
    floor_used: float
    vertex_bound: float
    holds: bool
    degenerate: bool = False


class ConcentrationThreshold:
    """Threshold ``eps* = min(c_floor, 1/2) |B| / (3 e(B, w))``.

    For ``eps < eps*`` the apex channel (first eigenvalue bound
    ``3 eps e(B, w)``) sits strictly below every non-apex tangent channel:
    interior ``|B|``, faces at least ``Theta_0 |B| > |B|/2``, edges at
    least ``c_floor |B|``.  Calling the object at a given ``eps`` returns
    the verdict with both sides of the comparison.  Invariant under
    rescaling of the field.  A zero ``e`` (zero field) makes the threshold
    infinite; that is reported with ``degenerate=True`` rather than as an
    error.
    """

    def __init__(self, field, section: Section, c_floor: float) -> None:
        b = MagneticField.from_any(field)
        c = _check_c_floor(c_floor)
        self.e = e_constant(b, moments(section))
        self.floor_used = min(c, 0.5) * b.norm
        self.degenerate = self.e == 0.0
        self.epsilon_star = math.inf if self.degenerate \
            else self.floor_used / (3.0 * self.e)

    def __call__(self, eps: float) -> ConcentrationVerdict:
        e = float(eps)
        if not (e > 0.0) or not math.isfinite(e):
            raise DomainError("eps must be positive")
        vertex_bound = 3.0 * e * self.e
        holds = True if self.degenerate else vertex_bound < self.floor_used
        return ConcentrationVerdict(
            epsilon=e, epsilon_star=self.epsilon_star,
            floor_used=self.floor_used, vertex_bound=vertex_bound,
            holds=holds, degenerate=self.degenerate)


def concentration_threshold(field, section: Section,
                            c_floor: float) -> ConcentrationThreshold:
    """Build the concentration test for a field and section; see the class."""
    return ConcentrationThreshold(field, section, c_floor)


# ---------------------------------------------------------------------------
# edges of the truncated solid

@dataclass(frozen=True)
class TruncatedEdgeReport:
    """Edge openings of the truncated cone ``{x in cone(eps*w), x3 < 1}``.

    ``lateral`` holds one ``(vertex_index, opening)`` per cone edge,
    ``top``     one ``(edge_index, opening)`` per rim edge where a lateral
    face meets the cut plane; rim openings tend to ``pi/2`` as the cone
    sharpens.  ``beta0`` is the best certified uniform bound with
    ``beta0 <= opening <= 2*pi - beta0`` for every edge.
    """

    eps: float
    lateral: tuple[tuple[int, float], ...]
    top: tuple[tuple[int, float], ...]
    beta0: float


def truncated_domain_edges(section: Section, eps: float) -> TruncatedEdgeReport:
    """Openings of all edges of the truncated cone over ``eps * section``."""
    if not isinstance(section, Polygon):
        raise UsageError("edge reports need a polygonal section")
    e = float(eps)
    if not (e > 0.0) or not math.isfinite(e):
        raise DomainError("eps must be positive")
    verts = section.vertices
    n = len(verts)
    lateral = tuple((i, spherical_vertex_opening(section, i, e))
                    for i in range(n))
    inner = np.array([e * centroid(section)[0], e * centroid(section)[1], 1.0])
    zhat = np.array([0.0, 0.0, 1.0])
    top = []
    for i in range(n):
        a3 = np.array([e * verts[i][0], e * verts[i][1], 1.0])
        b3 = np.array([e * verts[(i + 1) % n][0],
                       e * verts[(i + 1) % n][1], 1.0])
        normal = np.cross(a3, b3)
        if normal @ inner > 0.0:
            normal = -normal  # outward from the solid
        normal /= np.linalg.norm(normal)
        top.append((i, math.pi - math.acos(
            max(-1.0, min(1.0, float(normal @ zhat))))))
    all_openings = [op for _, op in lateral] + [op for _, op in top]
    beta0 = min(min(all_openings), 2.0 * math.pi - max(all_openings))
    return TruncatedEdgeReport(eps=e, lateral=lateral, top=tuple(top),
                               beta0=beta0)
