"""Numerical probe of the logarithmic Gauss map.

For a hypersurface ``f = 0`` in the complex torus the logarithmic Gauss map
sends ``z`` to ``[z_0 df/dz_0 : ... : z_n df/dz_n]``.  It is real fibered
when a point maps to a real point exactly when it is itself real.  Two
families have fibers solvable in closed form and are probed here: affine
hyperplanes, and ``z3^2 + a z3 + b z1 + c z2 + d`` whose Newton polytope is
the non-smooth tetrahedron on 0, e1, e2, 2e3.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import numpy as np

from .lattice import as_int_vector
from .polytope import build, normalized_volume

REAL_TOL = 1e-8
RESIDUAL_TOL = 1e-9
DISTANCE_TOL = 1e-8


class LogCriticalPointError(ValueError):
    """All coordinates of the Gauss map image vanish."""


class ProbeError(ValueError):
    pass


def is_real_number(x: complex, tol: float = REAL_TOL) -> bool:
    return abs(x.imag) <= tol * (1.0 + abs(x.real))


@dataclass(frozen=True)
class RealLaurentPolynomial:
    """Sum of ``coefficient * z**exponent`` over a list of monomials."""

    monomials: tuple[tuple[tuple[int, ...], float], ...]

    def __post_init__(self):
        mons = tuple((as_int_vector(e), float(c)) for e, c in self.monomials)
        if len(mons) < 2:
            raise ValueError("a hypersurface needs at least two monomials")
        exps = [e for e, _ in mons]
        if len(set(exps)) != len(exps):
            raise ValueError("monomial exponents must be distinct")
        if len({len(e) for e in exps}) != 1:
            raise ValueError("exponents have different lengths")
        if any(c == 0 or not math.isfinite(c) for _, c in mons):
            raise ValueError("coefficients must be finite and nonzero")
        object.__setattr__(self, "monomials", mons)

    @property
    def nvars(self) -> int:
        return len(self.monomials[0][0])

    @property
    def exponents(self) -> np.ndarray:
        return np.array([e for e, _ in self.monomials], dtype=float)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for _, c in self.monomials], dtype=float)

    def terms(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return self.coefficients * np.prod(z[None, :] ** self.exponents, axis=1)

    def __call__(self, z) -> complex:
        return complex(self.terms(z).sum())

    def log_gradient(self, z) -> np.ndarray:
        """The vector ``z_i * df/dz_i``."""
        return self.exponents.T @ self.terms(z)

    def residual(self, z) -> float:
        """``|f(z)|`` relative to the largest monomial magnitude (at least 1)."""
        t = self.terms(z)
        return float(abs(t.sum()) / max(1.0, np.abs(t).max()))

    def newton_volume(self) -> int:
        return normalized_volume(build(e for e, _ in self.monomials))


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[complex, ...]

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coords)
        if not any(c):
            raise ValueError("homogeneous coordinates cannot all vanish")
        object.__setattr__(self, "coords", c)

    def unit(self) -> np.ndarray:
        v = np.array(self.coords, dtype=complex)
        return v / np.linalg.norm(v)

    def is_real(self, tol: float = REAL_TOL) -> bool:
        """Some rescaling is real: every ``c_i * conj(c_j)`` is real."""
        v = self.unit()
        cross = np.outer(v, v.conj())
        return bool(np.all(np.abs(cross.imag) <= tol * (1.0 + np.abs(cross.real))))

    def distance(self, other: ProjectivePoint | Sequence) -> float:
        """Chordal distance after aligning phases; zero iff the points coincide."""
        if not isinstance(other, ProjectivePoint):
            other = ProjectivePoint(tuple(other))
        a, b = self.unit(), other.unit()
        ip = np.vdot(b, a)
        phase = ip / abs(ip) if abs(ip) > 0 else 1.0
        return float(np.linalg.norm(a - phase * b))


def gauss_map(f: RealLaurentPolynomial, z) -> ProjectivePoint:
    z = np.asarray(z, dtype=complex)
    if z.shape != (f.nvars,):
        raise ValueError(f"expected a point in (C*)^{f.nvars}")
    if np.any(z == 0):
        raise ValueError("the logarithmic Gauss map is defined on the torus only")
    g = f.log_gradient(z)
    if not np.any(g):
        raise LogCriticalPointError(f"log-critical point {z}")
    return ProjectivePoint(tuple(g))


# closed-form families ----------------------------------------------------------


def hyperplane(params: Sequence[float]) -> RealLaurentPolynomial:
    """``c_0 + c_1 z_1 + ... + c_N z_N``."""
    c = [float(x) for x in params]
    if len(c) < 3 or any(x == 0 for x in c):
        raise ProbeError("hyperplane needs at least three nonzero real coefficients")
    n = len(c) - 1
    mons = [(tuple([0] * n), c[0])]
    mons += [(tuple(int(i == j) for j in range(n)), c[i + 1]) for i in range(n)]
    return RealLaurentPolynomial(tuple(mons))


def quadric_edge(params: Sequence[float]) -> RealLaurentPolynomial:
    """``z3^2 + a z3 + b z1 + c z2 + d``; zero ``a`` or ``d`` drop their monomial."""
    a, b, c, d = _example19_params(params)
    mons = [((0, 0, 2), 1.0), ((1, 0, 0), b), ((0, 1, 0), c)]
    if a:
        mons.append(((0, 0, 1), a))
    if d:
        mons.append(((0, 0, 0), d))
    return RealLaurentPolynomial(tuple(mons))


def _example19_params(params):
    p = [float(x) for x in params]
    if len(p) != 4:
        raise ProbeError("this family takes four parameters a, b, c, d")
    if p[1] == 0 or p[2] == 0:
        raise ProbeError("b and c must be nonzero")
    return p


def _quadratic_roots(a: float, b: float, c: float) -> list[complex]:
    """Roots of ``a x^2 + b x + c`` with real coefficients, ``a != 0``."""
    disc = b * b - 4.0 * a * c
    if disc >= 0:
        q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
        if q == 0:
            return [0j, 0j]
        return [complex(q / a), complex(c / q)]
    re = -b / (2.0 * a)
    im = math.sqrt(-disc) / (2.0 * abs(a))
    return [complex(re, -im), complex(re, im)]


@dataclass
class Fiber:
    """Points of the torus over one target, with their reality flags."""

    points: list[tuple[np.ndarray, bool]] = field(default_factory=list)
    degenerate: str | None = None

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _point_is_real(z: np.ndarray) -> bool:
    return all(is_real_number(complex(x)) for x in z)


def _check_target(target, n: int) -> np.ndarray:
    if isinstance(target, ProjectivePoint):
        if not target.is_real():
            raise ProbeError("target is not a real projective point")
        v = target.unit()
        k = int(np.argmax(np.abs(v)))
        target = (v / v[k]).real
    w = np.asarray(target)
    if np.iscomplexobj(w):
        if not ProjectivePoint(tuple(w)).is_real():
            raise ProbeError("target is not a real projective point")
        k = int(np.argmax(np.abs(w)))
        w = (w / w[k]).real
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise ProbeError(f"target must have {n} homogeneous coordinates")
    if not np.any(w):
        raise ProbeError("target coordinates cannot all vanish")
    return w


def _hyperplane_fiber(params, w) -> Fiber:
    c = np.array(params, dtype=float)
    total = w.sum()
    if total == 0:
        return Fiber(degenerate="coordinate sum vanishes")
    if np.any(w == 0):
        return Fiber(degenerate="target has a zero coordinate")
    t = -c[0] / total
    z = (t * w / c[1:]).astype(complex)
    return Fiber([(z, _point_is_real(z))])


def _quadric_edge_fiber(params, w) -> Fiber:
    a, b, c, d = _example19_params(params)
    if w[2] == 0:
        return Fiber(degenerate="third target coordinate vanishes")
    u = (w[0] + w[1]) / w[2]
    lead = 1.0 + 2.0 * u
    if lead == 0:
        return Fiber(degenerate="leading coefficient 1 + 2u vanishes")
    pts = []
    for z3 in _quadratic_roots(lead, a * (1.0 + u), d):
        s = (2.0 * z3 * z3 + a * z3) / w[2]
        z = np.array([s * w[0] / b, s * w[1] / c, z3], dtype=complex)
        if np.any(z == 0):
            continue
        pts.append((z, _point_is_real(z)))
    return Fiber(pts)


@dataclass(frozen=True)
class Family:
    name: str
    build: Callable[[Sequence[float]], RealLaurentPolynomial]
    solve: Callable[[Sequence[float], np.ndarray], Fiber]
    ncoords: Callable[[Sequence[float]], int]


FAMILIES = {
    "hyperplane": Family("hyperplane", hyperplane, _hyperplane_fiber, lambda p: len(p) - 1),
    "example19": Family("example19", quadric_edge, _quadric_edge_fiber, lambda p: 3),
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ProbeError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


def fiber_probe(family: str, params: Sequence[float], target) -> Fiber:
    """Solve ``gauss_map(f, z) == target`` on ``f = 0`` in closed form."""
    fam = get_family(family)
    fam.build(params)
    w = _check_target(target, fam.ncoords(params))
    return fam.solve(params, w)


# aggregate probe ---------------------------------------------------------------


def quadric_edge_discriminant(a: float, d: float, u: np.ndarray) -> np.ndarray:
    """Discriminant in z3 of the fiber equation, as a function of u = (w1 + w2) / w3."""
    return a * a * (1.0 + u) ** 2 - 4.0 * d * (1.0 + 2.0 * u)


def discriminant_minimum(a: float, d: float, half_width: float = 100.0, num: int = 400_001) -> dict:
    u = np.linspace(-half_width, half_width, num)
    disc = quadric_edge_discriminant(a, d, u)
    k = int(np.argmin(disc))
    return {"u": float(u[k]), "value": float(disc[k]), "grid": [-half_width, half_width, num]}


def sample_real_points(f: RealLaurentPolynomial, rng: np.random.Generator, count: int) -> list[np.ndarray]:
    """Real points of ``f = 0``: fix all but the last coordinate, solve for it."""
    exps = [e for e, _ in f.monomials]
    coefs = [c for _, c in f.monomials]
    last = [e[-1] for e in exps]
    lo, hi = min(last), max(last)
    out = []
    for _ in range(count):
        head = rng.uniform(0.1, 2.0, f.nvars - 1) * rng.choice([-1.0, 1.0], f.nvars - 1)
        poly = np.zeros(hi - lo + 1)
        for e, c in zip(exps, coefs):
            poly[hi - e[-1]] += c * np.prod(head ** np.array(e[:-1], dtype=float))
        nz = np.flatnonzero(poly)
        if len(nz) == 0:
            continue
        for r in np.roots(poly[nz[0]:]):
            if abs(r.imag) <= 1e-12 * (1.0 + abs(r.real)) and r.real != 0:
                out.append(np.append(head, r.real).astype(complex))
    return out


def verify_witness(f: RealLaurentPolynomial, z, target, dps: int = 50) -> tuple[float, float]:
    """Residual and target distance recomputed in multiprecision from the monomials."""
    with mpmath.workdps(dps):
        zz = [mpmath.mpc(complex(x)) for x in z]
        value = mpmath.mpf(0)
        grad = [mpmath.mpf(0)] * len(zz)
        scale = mpmath.mpf(1)
        for e, c in f.monomials:
            term = mpmath.mpf(c)
            for x, k in zip(zz, e):
                term *= x**k
            value += term
            scale = max(scale, abs(term))
            grad = [g + k * term for g, k in zip(grad, e)]
        residual = abs(value) / scale
        w = [mpmath.mpf(float(x)) for x in np.asarray(target, dtype=float)]
        gn = mpmath.sqrt(sum(abs(g) ** 2 for g in grad))
        wn = mpmath.sqrt(sum(x**2 for x in w))
        ip = sum(g * x for g, x in zip(grad, w))
        phase = ip / abs(ip)
        dist = mpmath.sqrt(sum(abs(g / gn - phase * x / wn) ** 2 for g, x in zip(grad, w)))
        return float(residual), float(dist)


@dataclass
class ProbeReport:
    family: str
    params: list
    seed: int
    targets_tested: int
    fibers_all_real: bool
    empirical_degree: int | None
    newton_volume: int
    fiber_cardinalities: dict
    degenerate_targets: int
    max_residual: float
    max_distance: float
    forward_checks: int
    forward_failures: int
    witness: dict | None
    discriminant_minimum: dict | None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _cplx(z) -> list:
    return [[float(x.real), float(x.imag)] for x in z]


def real_fibered_verdict(family: str, params: Sequence[float], n_targets: int, seed: int) -> ProbeReport:
    """Sample real targets and report whether every fiber point is real."""
    if n_targets < 1:
        raise ProbeError("need at least one target")
    fam = get_family(family)
    params = [float(x) for x in params]
    f = fam.build(params)
    n = fam.ncoords(params)
    rng = np.random.default_rng(seed)
    targets = rng.uniform(-1.0, 1.0, size=(n_targets, n))

    sizes: Counter = Counter()
    degenerate = 0
    max_res = max_dist = 0.0
    witness = None
    for w in targets:
        fiber = fam.solve(params, w)
        if fiber.degenerate:
            degenerate += 1
            continue
        sizes[len(fiber)] += 1
        for z, real in fiber:
            res = f.residual(z)
            dist = gauss_map(f, z).distance(w)
            max_res, max_dist = max(max_res, res), max(max_dist, dist)
            if not real and (witness is None or tuple(w) < tuple(witness["target"])):
                witness = {"target": [float(x) for x in w], "point": _cplx(z),
                           "residual": res, "distance": dist}

    if witness is not None:
        z = np.array([complex(*p) for p in witness["point"]])
        witness["verified_residual"], witness["verified_distance"] = verify_witness(
            f, z, witness["target"])

    forward = sample_real_points(f, rng, n_targets)
    forward_failures = sum(not gauss_map(f, z).is_real() for z in forward)

    degree = None
    if sizes:
        degree = max(sizes.items(), key=lambda kv: (kv[1], -kv[0]))[0]
    disc = None
    if family == "example19":
        disc = discriminant_minimum(params[0], params[3])
    return ProbeReport(
        family=family,
        params=params,
        seed=seed,
        targets_tested=n_targets,
        fibers_all_real=witness is None,
        empirical_degree=degree,
        newton_volume=f.newton_volume(),
        fiber_cardinalities={str(k): v for k, v in sorted(sizes.items())},
        degenerate_targets=degenerate,
        max_residual=max_res,
        max_distance=max_dist,
        forward_checks=len(forward),
        forward_failures=forward_failures,
        witness=witness,
        discriminant_minimum=disc,
    )
