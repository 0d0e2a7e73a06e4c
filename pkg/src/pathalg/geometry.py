"""Numerical model of the metric side: complex projective space with
the metric normalized so complex lines are round 2-spheres of curvature
4, the real locus of points with a real representative, vertical
half-circle paths, minimum-energy concatenation, and the discrete
second-variation computation at the critical geodesics.

Conventions.  Points are unit vectors in complex (n+1)-space up to
phase; the Hermitian product of two unit representatives determines the
distance arccos|<z, w>| in [0, pi/2].  Tangent vectors are Hermitian
orthogonal to the base representative (horizontal lifts).  Discrete
paths are sample matrices with strictly increasing breakpoints in
[0, 1] and both endpoints on the real locus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

_UNIT_TOL = 1e-12
_REAL_TOL = 1e-9
_ENDPOINT_TOL = 1e-8


class ParityError(ValueError):
    """Construction requires a parity the dimension does not have."""


class GradientCheckError(RuntimeError):
    """The configuration handed to the second-variation computation is
    not numerically critical."""


def _as_complex(vec) -> np.ndarray:
    return np.asarray(vec, dtype=complex).reshape(-1)


def normalize(vec) -> np.ndarray:
    v = _as_complex(vec)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / norm


@dataclass
class ProjPoint:
    """A point of complex projective space: unit representative, equal
    to another point when the representatives differ by a phase."""

    rep: np.ndarray

    def __post_init__(self) -> None:
        self.rep = _as_complex(self.rep)
        if abs(np.linalg.norm(self.rep) - 1.0) > _UNIT_TOL:
            raise ValueError("representative must be a unit vector")

    @property
    def ambient_dim(self) -> int:
        return self.rep.shape[0]

    def equals(self, other: "ProjPoint", tol: float = _UNIT_TOL) -> bool:
        return abs(np.vdot(self.rep, other.rep)) > 1.0 - tol

    def is_real(self, tol: float = _REAL_TOL) -> bool:
        """Whether some representative has all coordinates real; the
        squared-sum modulus |sum z_j^2| equals 1 exactly on such
        points and drops below 1 away from them."""
        return abs(np.sum(self.rep * self.rep)) >= 1.0 - tol

    def real_representative(self, tol: float = _REAL_TOL) -> np.ndarray:
        s = np.sum(self.rep * self.rep)
        if abs(s) < 1.0 - tol:
            raise ValueError("point has no real representative")
        z = self.rep * np.exp(-0.5j * np.angle(s))
        if np.linalg.norm(z.imag) > math.sqrt(tol):
            raise ValueError("point has no real representative")
        re = z.real
        return re / np.linalg.norm(re)


def proj_point(vec) -> ProjPoint:
    return ProjPoint(rep=normalize(vec))


def real_point(coords) -> ProjPoint:
    v = np.asarray(coords, dtype=float).reshape(-1)
    return ProjPoint(rep=normalize(v).astype(complex))


@dataclass
class TangentVector:
    """Horizontal tangent vector: Hermitian-orthogonal to the base."""

    base: ProjPoint
    vec: np.ndarray

    def __post_init__(self) -> None:
        self.vec = _as_complex(self.vec)
        if self.vec.shape != self.base.rep.shape:
            raise ValueError("tangent vector has wrong ambient dimension")
        if abs(np.vdot(self.base.rep, self.vec)) > _UNIT_TOL:
            raise ValueError("tangent vector must be orthogonal to the base")

    @property
    def is_unit(self) -> bool:
        return abs(np.linalg.norm(self.vec) - 1.0) <= _UNIT_TOL


def fs_distance(p: ProjPoint, q: ProjPoint) -> float:
    """Distance in [0, pi/2]: arccos of the clamped pairing modulus."""
    c = abs(np.vdot(p.rep, q.rep))
    return math.acos(min(1.0, max(0.0, c)))


def geodesic(x: ProjPoint, v: TangentVector, s: float) -> ProjPoint:
    """Point at arclength s on the geodesic leaving x with velocity v;
    periodic with period pi."""
    if not v.is_unit:
        raise ValueError("geodesic requires a unit tangent vector")
    if not v.base.equals(x):
        raise ValueError("tangent vector is not based at x")
    return ProjPoint(rep=math.cos(s) * x.rep + math.sin(s) * v.vec)


# ---------------------------------------------------------------------------
# Discrete paths, energy, concatenation


@dataclass
class DiscretePath:
    """Piecewise-geodesic path: one unit sample row per breakpoint.

    Breakpoints are strictly increasing from 0 to 1; both endpoints lie
    on the real locus.  degenerate_junction records that some
    concatenation along the way had two constant factors, where the
    junction placement is a convention rather than an energy minimizer.
    """

    samples: np.ndarray
    params: np.ndarray
    degenerate_junction: bool = False

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=complex)
        self.params = np.asarray(self.params, dtype=float)
        if self.samples.ndim != 2 or self.samples.shape[0] < 2:
            raise ValueError("path needs at least two samples")
        if self.params.shape != (self.samples.shape[0],):
            raise ValueError("one breakpoint per sample required")
        if abs(self.params[0]) > 1e-12 or abs(self.params[-1] - 1.0) > 1e-12:
            raise ValueError("breakpoints must run from 0 to 1")
        if np.any(np.diff(self.params) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        norms = np.linalg.norm(self.samples, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-9:
            raise ValueError("samples must be unit vectors")
        for idx in (0, -1):
            if not ProjPoint(self.samples[idx]).is_real(tol=_ENDPOINT_TOL):
                raise ValueError("path endpoints must lie on the real locus")

    @property
    def num_samples(self) -> int:
        return self.samples.shape[0]

    def start(self) -> ProjPoint:
        return ProjPoint(self.samples[0])

    def end(self) -> ProjPoint:
        return ProjPoint(self.samples[-1])

    def reversed(self) -> "DiscretePath":
        return DiscretePath(samples=self.samples[::-1].copy(),
                            params=(1.0 - self.params[::-1]).copy(),
                            degenerate_junction=self.degenerate_junction)


def constant_path(x: ProjPoint, samples: int = 2) -> DiscretePath:
    pts = np.repeat(x.rep[None, :], samples, axis=0)
    return DiscretePath(samples=pts, params=np.linspace(0.0, 1.0, samples))


def _segment_distances(path: DiscretePath) -> np.ndarray:
    inner = np.abs(np.einsum("ij,ij->i",
                             path.samples[:-1], path.samples[1:].conj()))
    return np.arccos(np.clip(inner, 0.0, 1.0))


def path_energy(path: DiscretePath) -> float:
    """Energy of the piecewise-geodesic path with its parametrization:
    sum of squared segment distances over segment durations."""
    d = _segment_distances(path)
    dt = np.diff(path.params)
    return float(np.sum(d * d / dt))


def path_norm(path: DiscretePath) -> float:
    """Square root of the energy; at least the total length, with
    equality exactly at proportional-to-arclength parametrizations."""
    return math.sqrt(path_energy(path))


def path_length(path: DiscretePath) -> float:
    return float(np.sum(_segment_distances(path)))


def concat_min(gamma: DiscretePath, delta: DiscretePath,
               tol: float = _ENDPOINT_TOL) -> DiscretePath:
    """Minimum-energy concatenation: the junction sits at
    s = F(gamma) / (F(gamma) + F(delta)), which makes the norm exactly
    additive.  Two constant factors leave the junction undetermined;
    the convention s = 1/2 is used and the result is flagged."""
    if not gamma.end().equals(delta.start(), tol=tol):
        raise ValueError("paths do not share the junction point")
    f1, f2 = path_norm(gamma), path_norm(delta)
    degenerate = gamma.degenerate_junction or delta.degenerate_junction
    if f1 + f2 == 0.0:
        s = 0.5
        degenerate = True
    else:
        s = f1 / (f1 + f2)
        s = min(max(s, 1e-12), 1.0 - 1e-12)
    # align the phase of the second factor so the junction sample is
    # shared exactly
    z = np.vdot(delta.samples[0], gamma.samples[-1])
    second = delta.samples * (z / abs(z)) if abs(z) > 0.5 else delta.samples
    pts = np.vstack([gamma.samples, second[1:]])
    t = np.concatenate([gamma.params * s, s + delta.params[1:] * (1.0 - s)])
    t[-1] = 1.0
    return DiscretePath(samples=pts, params=t, degenerate_junction=degenerate)


# ---------------------------------------------------------------------------
# Vertical half-circles


def _sphere_chart(p: np.ndarray, r: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse of the line-to-sphere map: a point p with |p| = 1/2 on
    the radius-1/2 sphere lifts to a*r + c*u with a real >= 0."""
    a2 = 0.5 + p[1]
    if a2 <= 1e-15:
        return u.astype(complex)
    a = math.sqrt(a2)
    c = (p[0] + 1j * p[2]) / a
    return a * r.astype(complex) + c * u


def half_circle(x: ProjPoint, u: TangentVector, theta: float,
                samples: int = 48) -> DiscretePath:
    """Vertical half-circle from x to exp_x(theta * u), traversed at
    constant speed.

    The complex line spanned by the real point x and the real unit
    tangent u is a round sphere of radius 1/2 under
    a*r + c*u -> (Re(conj(a) c), (|a|^2 - |c|^2)/2, Im(conj(a) c));
    the real locus of the line lands on the equator.  The half-circle
    is the arc through the upper half-space whose chord joins the
    images of the two endpoints; its norm is (pi/2) sin|theta|.
    theta is normalized modulo pi into [-pi/2, pi/2]; theta = 0 gives
    the constant path.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    r = x.real_representative()
    ur = u.vec
    if np.linalg.norm(ur.imag) > _REAL_TOL or not u.is_unit:
        raise ValueError("half-circle direction must be a real unit tangent")
    if not u.base.equals(x):
        raise ValueError("tangent vector is not based at x")
    ur = ur.real
    if abs(float(np.dot(r, ur))) > _REAL_TOL:
        raise ValueError("direction must be orthogonal to the real base")
    theta = math.remainder(theta, math.pi)
    t = np.linspace(0.0, 1.0, samples)
    if abs(math.sin(theta)) < 1e-13:
        return constant_path(ProjPoint(r.astype(complex)), samples)
    a = np.array([0.0, 0.5, 0.0])
    b = np.array([0.5 * math.sin(2 * theta), 0.5 * math.cos(2 * theta), 0.0])
    mid = (a + b) / 2.0
    rho = 0.5 * abs(math.sin(theta))
    e1 = (a - mid) / rho
    e2 = np.array([0.0, 0.0, 1.0])
    pts = []
    for ti in t:
        phi = math.pi * ti
        p = mid + rho * (math.cos(phi) * e1 + math.sin(phi) * e2)
        pts.append(normalize(_sphere_chart(p, r, ur.astype(complex))))
    return DiscretePath(samples=np.array(pts), params=t)


def half_circle_norm(theta: float) -> float:
    """Closed form (pi/2) sin|theta| for the norm of the half-circle."""
    return 0.5 * math.pi * abs(math.sin(math.remainder(theta, math.pi)))


def half_circle_endpoint(x: ProjPoint, u: TangentVector, theta: float
                         ) -> ProjPoint:
    """Endpoint computed independently through the geodesic flow."""
    theta = math.remainder(theta, math.pi)
    return geodesic(x, u, theta)


# ---------------------------------------------------------------------------
# Random sampling


def random_real_point(n: int, rng: np.random.Generator) -> ProjPoint:
    return real_point(rng.standard_normal(n + 1))


def random_real_tangent(x: ProjPoint, rng: np.random.Generator
                        ) -> TangentVector:
    r = x.real_representative()
    while True:
        v = rng.standard_normal(r.shape[0])
        v = v - np.dot(v, r) * r
        if np.linalg.norm(v) > 1e-6:
            return TangentVector(base=ProjPoint(r.astype(complex)),
                                 vec=normalize(v))


def yk_parameter_count(n: int, k: int) -> int:
    """Dimension of the k-fold half-circle family: n for the base point
    plus n per half-circle (n-1 for the direction, 1 for the angle)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k + 1) * n


def sample_yk(n: int, k: int, rng: np.random.Generator,
              thetas=None, samples_per_arc: int = 40) -> DiscretePath:
    """Random k-fold concatenation of vertical half-circles.

    Draws a real base point, then repeatedly a real unit direction and
    an angle, concatenating with concat_min.  The norm never exceeds
    k pi/2, with equality when every angle is pi/2.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if thetas is None:
        thetas = rng.uniform(0.0, 0.5 * math.pi, size=k)
    thetas = np.asarray(thetas, dtype=float).reshape(-1)
    if thetas.shape != (k,):
        raise ValueError(f"need exactly {k} angles")
    x = random_real_point(n, rng)
    path: Optional[DiscretePath] = None
    for j in range(k):
        u = random_real_tangent(x, rng)
        arc = half_circle(x, u, float(thetas[j]), samples=samples_per_arc)
        path = arc if path is None else concat_min(path, arc)
        x = arc.end()
        if x.is_real():
            x = ProjPoint(x.real_representative().astype(complex))
    assert path is not None
    return path


def hopf_vector(x: ProjPoint, which: str = "J") -> TangentVector:
    """Real unit tangent given by a skew-orthogonal pairing of the real
    coordinates; the corresponding normal section is i times it.

    which = "J" or "J1" pairs coordinates two at a time and needs odd
    n; "J2" and "J3" act on blocks of four and need n = 3 mod 4.  The
    three quaternionic outputs are mutually orthonormal.
    """
    r = x.real_representative()
    m = r.shape[0]
    if which in ("J", "J1"):
        if m % 2 != 0:
            raise ParityError("pairwise rotation needs odd n")
        out = np.empty(m)
        out[0::2] = -r[1::2]
        out[1::2] = r[0::2]
    elif which in ("J2", "J3"):
        if m % 4 != 0:
            raise ParityError("quaternionic rotations need n = 3 mod 4")
        out = np.empty(m)
        a, b, c, d = r[0::4], r[1::4], r[2::4], r[3::4]
        if which == "J2":
            out[0::4], out[1::4], out[2::4], out[3::4] = -c, d, a, -b
        else:
            out[0::4], out[1::4], out[2::4], out[3::4] = -d, -c, b, a
    else:
        raise ValueError(f"unknown pairing {which!r}")
    return TangentVector(base=ProjPoint(r.astype(complex)),
                         vec=out.astype(complex))


# ---------------------------------------------------------------------------
# Discrete second variation at the critical geodesics


@dataclass
class IndexResult:
    index: int
    nullity: int
    gradient_norm: float
    eigenvalues: np.ndarray = field(repr=False)


def _real_frame(r: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Real orthonormal frame of the orthogonal complement of r."""
    m = r.shape[0]
    mat = np.column_stack([r, rng.standard_normal((m, m - 1))])
    q, _ = np.linalg.qr(mat)
    q = q * np.sign(np.dot(q[:, 0], r))
    return q[:, 1:]


def _complex_frame(z: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Hermitian-orthonormal frame of the complement of z."""
    m = z.shape[0]
    mat = np.column_stack(
        [z, rng.standard_normal((m, m - 1))
         + 1j * rng.standard_normal((m, m - 1))])
    q, _ = np.linalg.qr(mat)
    return q[:, 1:]


def critical_index(n: int, k: int, segments: int,
                   h: float = 1e-4, ztol: float = 1e-3,
                   grad_tol: float = 1e-8,
                   rng: Optional[np.random.Generator] = None) -> IndexResult:
    """Index and nullity of the discrete energy at a level-k critical
    configuration.

    The path space is modeled by broken geodesics on segments+1 sample
    points; the endpoints move along the real locus (n chart
    coordinates each) and the interior points move in the ambient
    projective space (2n each).  The base configuration samples the
    geodesic that leaves a real point in a purely imaginary direction
    and returns to the real locus every quarter period; the discrete
    energy is exactly critical there, which is verified to grad_tol
    before differentiating twice.

    Eigenvalues below -ztol * spectral_radius count toward the index,
    those within ztol * spectral_radius of zero toward the nullity.
    Expected: (0, n) for k = 0 and (1 + (k-1)n, 2n - 1) for k >= 1.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if segments < max(2, 4 * k):
        raise ValueError("need segments >= max(2, 4k) so each segment "
                         "stays below an eighth turn")
    length = 0.5 * math.pi * k
    if k > 0:
        assert length / segments <= math.pi / 8 + 1e-12
    rng = rng if rng is not None else np.random.default_rng(0)

    x = random_real_point(n, rng)
    u = random_real_tangent(x, rng)
    w = 1j * u.vec
    s_vals = np.linspace(0.0, length, segments + 1)
    base_pts = [math.cos(s) * x.rep + math.sin(s) * w for s in s_vals]

    frames = []
    for j, p in enumerate(base_pts):
        if j == 0 or j == segments:
            r = ProjPoint(p).real_representative()
            base_pts[j] = r.astype(complex)
            frames.append(_real_frame(r, rng).astype(complex))
        else:
            wf = _complex_frame(p, rng)
            frames.append(np.column_stack([wf, 1j * wf]))
    widths = [f.shape[1] for f in frames]
    offsets = np.concatenate([[0], np.cumsum(widths)])
    dim = int(offsets[-1])
    base_mat = np.array(base_pts)

    def energy(xi: np.ndarray) -> float:
        pts = base_mat.copy()
        for j in range(segments + 1):
            block = xi[offsets[j]:offsets[j + 1]]
            if np.any(block):
                v = pts[j] + frames[j] @ block
                pts[j] = v / np.linalg.norm(v)
        inner = np.abs(np.einsum("ij,ij->i", pts[:-1], pts[1:].conj()))
        d = np.arccos(np.clip(inner, 0.0, 1.0))
        return float(segments * np.sum(d * d))

    # fourth-order central differences keep the truncation error of the
    # gradient check well below the tolerance
    grad = np.empty(dim)
    for a in range(dim):
        xi = np.zeros(dim)

        def at(step: float) -> float:
            xi[a] = step
            val = energy(xi)
            xi[a] = 0.0
            return val

        grad[a] = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h)
    gnorm = float(np.linalg.norm(grad))
    if gnorm >= grad_tol:
        raise GradientCheckError(
            f"configuration is not critical: |grad E| = {gnorm:.3e}")

    e0 = energy(np.zeros(dim))
    hess = np.empty((dim, dim))
    singles = np.empty((dim, 2))
    for a in range(dim):
        xi = np.zeros(dim)
        xi[a] = h
        ep = energy(xi)
        xi[a] = -h
        em = energy(xi)
        singles[a] = (ep, em)
        hess[a, a] = (ep - 2.0 * e0 + em) / (h * h)
    for a in range(dim):
        for b in range(a + 1, dim):
            xi = np.zeros(dim)
            xi[a] = h
            xi[b] = h
            epp = energy(xi)
            xi[a] = -h
            xi[b] = -h
            emm = energy(xi)
            val = (epp + emm + 2.0 * e0
                   - singles[a, 0] - singles[a, 1]
                   - singles[b, 0] - singles[b, 1]) / (2.0 * h * h)
            hess[a, b] = hess[b, a] = val
    eig = np.linalg.eigvalsh(hess)
    scale = float(np.max(np.abs(eig)))
    if scale == 0.0:
        raise GradientCheckError("second variation vanished identically")
    index = int(np.sum(eig < -ztol * scale))
    nullity = int(np.sum(np.abs(eig) <= ztol * scale))
    return IndexResult(index=index, nullity=nullity, gradient_norm=gnorm,
                       eigenvalues=eig)
