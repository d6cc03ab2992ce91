"""Closed polygons in R^3: bending flows, action-angle coordinates, fixed points.

Edges are stored as an ``(n, 3)`` float array.  Diagonals are taken from
the first vertex, ``mu_k = e_1 + ... + e_{k+1}`` for ``k = 1..n-3``; it is
convenient to extend this to ``mu_0 = e_1`` and ``mu_{n-2} = -e_n`` so
that the fan triangles are ``Delta_j = (mu_{j-1}, e_{j+1}, mu_j)`` for
``j = 1..n-2``.

Conventions
-----------
* ``exp(t ad_mu)`` acts as the right-handed rotation about ``mu / |mu|``
  by angle ``t |mu|``, so the flow along ``mu_k`` has period
  ``2 pi / l_k``.
* The dihedral angle ``theta_hat_i`` is the right-handed angle about
  ``mu_i`` from the half-plane of ``Delta_i`` to that of ``Delta_{i+1}``,
  in ``[0, 2 pi)``; the angle coordinate is ``theta_i = pi - theta_hat_i``.
  With this choice ``bend_action(P, k, t)`` adds ``t`` to ``theta_k``.
* ``u ^ v`` is the cross product.  The symplectic form is
  ``omega(u, v) = sum <e_j / r_j^2, v_j x u_j>``, the orientation for which
  ``omega(u, v) = g(u, J v)`` with ``J(u)_j = (e_j / r_j) x u_j``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .admissible import IndexSet, is_admissible
from .errors import (
    AdmissibilityError,
    DegenerateTriangleError,
    EmptyModuliError,
    InputError,
    UndefinedActionError,
)
from .lengths import LengthVector, is_nonempty

__all__ = [
    "Polygon",
    "ActionAngle",
    "FixedPointKind",
    "Classification",
    "SymplecticToolkit",
    "symplectic_toolkit",
    "rotation_matrix",
    "diagonals",
    "bend_flow",
    "bend_action",
    "orbit",
    "action_angle",
    "from_action_angle",
    "random_polygon",
    "check_gc",
    "build_type1",
    "build_type2",
    "classify_fixed",
    "so3_equivalent",
    "tangent_check",
    "trajectory_jsonl",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Polygon:
    edges: np.ndarray
    closure_tol: float = DEFAULT_TOL

    def __post_init__(self):
        edges = np.array(self.edges, dtype=float)
        if edges.ndim != 2 or edges.shape[1] != 3 or edges.shape[0] < 3:
            raise InputError(f"edges must have shape (n, 3) with n >= 3, got {edges.shape}")
        if not np.all(np.isfinite(edges)):
            raise InputError("edges contain non-finite values")
        residual = float(np.linalg.norm(edges.sum(axis=0)))
        if residual > self.closure_tol:
            raise InputError(f"polygon does not close: residual {residual:.3e} > {self.closure_tol:.1e}")
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        lengths = np.linalg.norm(edges, axis=1)
        lengths.setflags(write=False)
        object.__setattr__(self, "side_lengths", lengths)

    @property
    def n(self) -> int:
        return self.edges.shape[0]

    @property
    def closure_residual(self) -> float:
        return float(np.linalg.norm(self.edges.sum(axis=0)))

    def with_edges(self, edges: np.ndarray) -> Polygon:
        return Polygon(edges, self.closure_tol)

    def vertices(self) -> np.ndarray:
        """Vertices ``v_1..v_n`` with ``v_1`` at the origin."""
        return np.vstack([np.zeros(3), np.cumsum(self.edges, axis=0)[:-1]])

    def to_json(self) -> list[list[float]]:
        return self.edges.tolist()

    @classmethod
    def from_json(cls, data, closure_tol: float = DEFAULT_TOL) -> Polygon:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(np.array(data, dtype=float), closure_tol)


def rotation_matrix(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rodrigues matrix of the right-handed rotation by ``angle`` about unit ``axis``."""
    x, y, z = axis
    k = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    return np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)


def _fan(edges: np.ndarray) -> np.ndarray:
    """``mu_0 .. mu_{n-2}`` as rows; ``mu_{n-2} = -e_n`` up to roundoff."""
    return np.cumsum(edges, axis=0)[:-1]


def diagonals(P: Polygon) -> list[tuple[np.ndarray, float]]:
    """``(mu_k, l_k)`` for ``k = 1..n-3``."""
    mus = _fan(P.edges)[1:-1]
    return [(mu.copy(), float(np.linalg.norm(mu))) for mu in mus]


def _check_k(P: Polygon, k: int) -> None:
    if not 1 <= k <= P.n - 3:
        raise InputError(f"diagonal index k={k} outside 1..{P.n - 3}")


def _rotate_head(P: Polygon, k: int, axis: np.ndarray, angle: float) -> Polygon:
    edges = P.edges.copy()
    edges[: k + 1] = edges[: k + 1] @ rotation_matrix(axis, angle).T
    return P.with_edges(edges)


def bend_flow(P: Polygon, k: int, t: float) -> Polygon:
    """Hamiltonian flow of ``l_k^2 / 2`` for time ``t``.

    Rotates ``e_1..e_{k+1}`` about ``mu_k`` by ``t * l_k``; polygons with
    ``l_k = 0`` are fixed.
    """
    _check_k(P, k)
    mu = P.edges[: k + 1].sum(axis=0)
    ell = float(np.linalg.norm(mu))
    if ell == 0.0:
        return P
    return _rotate_head(P, k, mu / ell, t * ell)


def bend_action(P: Polygon, k: int, theta: float) -> Polygon:
    """Unit-speed bending: rotate ``e_1..e_{k+1}`` by ``theta`` about ``mu_k``."""
    _check_k(P, k)
    mu = P.edges[: k + 1].sum(axis=0)
    ell = float(np.linalg.norm(mu))
    if ell <= P.closure_tol:
        raise UndefinedActionError(f"diagonal mu_{k} has length {ell:.3e}; the circle action is undefined")
    return _rotate_head(P, k, mu / ell, theta)


def orbit(P: Polygon, k: int, steps: int) -> list[Polygon]:
    """``steps`` samples of the bending flow along ``mu_k`` over one period."""
    _check_k(P, k)
    if steps < 1:
        raise InputError("steps must be positive")
    ell = float(np.linalg.norm(P.edges[: k + 1].sum(axis=0)))
    if ell == 0.0:
        return [P] * steps
    period = 2 * math.pi / ell
    return [bend_flow(P, k, period * s / steps) for s in range(steps)]


def trajectory_jsonl(polygons: Iterable[Polygon]) -> str:
    return "".join(json.dumps(p.to_json()) + "\n" for p in polygons)


@dataclass(frozen=True)
class ActionAngle:
    ell: np.ndarray
    theta: np.ndarray


def _perp(v: np.ndarray, u: np.ndarray) -> np.ndarray:
    return v - (v @ u) * u


def action_angle(P: Polygon, tol: float | None = None) -> ActionAngle:
    """Diagonal lengths and bending angles.

    Raises :class:`DegenerateTriangleError` naming the first fan triangle
    ``Delta_i`` that is flat (or has a vanishing side), where the angle is
    undefined.
    """
    tol = P.closure_tol if tol is None else tol
    mus = _fan(P.edges)
    lengths = np.linalg.norm(mus, axis=1)
    n = P.n
    theta = np.empty(n - 3)
    for i in range(1, n - 2):
        if lengths[i] <= tol:
            raise DegenerateTriangleError(f"diagonal mu_{i} vanishes", i)
        u = mus[i] / lengths[i]
        p = _perp(mus[i - 1], u)
        q = _perp(mus[i + 1], u)
        scale = max(1.0, float(lengths.max()))
        if np.linalg.norm(p) <= tol * scale:
            raise DegenerateTriangleError(f"triangle Delta_{i} is flat", i)
        if np.linalg.norm(q) <= tol * scale:
            raise DegenerateTriangleError(f"triangle Delta_{i + 1} is flat", i + 1)
        hat = math.atan2(float(u @ np.cross(p, q)), float(p @ q)) % (2 * math.pi)
        theta[i - 1] = (math.pi - hat) % (2 * math.pi)
    return ActionAngle(ell=lengths[1:-1].copy(), theta=theta)


def _as_floats(r) -> np.ndarray:
    if isinstance(r, LengthVector):
        return r.as_floats()
    return np.asarray(r, dtype=float)


def from_action_angle(r, ell: Sequence[float], theta: Sequence[float],
                      closure_tol: float = DEFAULT_TOL) -> Polygon:
    """Polygon with side lengths ``r``, diagonal lengths ``ell`` and angles ``theta``.

    The first diagonal lies on the x-axis and ``Delta_1`` in the upper
    xy-plane.  ``ell`` must satisfy the triangle inequalities of the fan
    and be positive.
    """
    r = _as_floats(r)
    n = len(r)
    ell = np.asarray(ell, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if ell.shape != (n - 3,) or theta.shape != (n - 3,):
        raise InputError(f"need {n - 3} diagonal lengths and angles for n={n}")
    L = np.concatenate([[r[0]], ell, [r[-1]]])
    if np.any(L[1:-1] <= 0):
        raise InputError("diagonal lengths must be positive")

    def along(j):
        # component of mu_{j+1} along mu_j and its distance from that axis
        c = (L[j] ** 2 + L[j + 1] ** 2 - r[j + 1] ** 2) / (2 * L[j])
        return c, math.sqrt(max(L[j + 1] ** 2 - c * c, 0.0))

    mus = np.zeros((n - 1, 3))
    mus[1] = (L[1], 0.0, 0.0)
    # mu_0 from the triangle (mu_0, e_2, mu_1)
    c0 = (L[0] ** 2 + L[1] ** 2 - r[1] ** 2) / (2 * L[1])
    mus[0] = (c0, math.sqrt(max(L[0] ** 2 - c0 * c0, 0.0)), 0.0)
    for j in range(1, n - 2):
        u = mus[j] / L[j]
        p = _perp(mus[j - 1], u)
        norm = np.linalg.norm(p)
        if norm <= 1e-15 * max(1.0, L[j]):
            # flat triangle: any direction orthogonal to the axis will do
            p = np.cross(u, [0.0, 0.0, 1.0])
            if np.linalg.norm(p) < 0.5:
                p = np.cross(u, [0.0, 1.0, 0.0])
            norm = np.linalg.norm(p)
        p = p / norm
        q = rotation_matrix(u, math.pi - theta[j - 1]) @ p
        c, h = along(j)
        mus[j + 1] = c * u + h * q
    edges = np.empty((n, 3))
    edges[0] = mus[0]
    edges[1:-1] = np.diff(mus, axis=0)
    edges[-1] = -mus[-1]
    return Polygon(edges, closure_tol)


def gc_intervals(r) -> list[tuple[float, float]]:
    """For each diagonal, the range of lengths that still admits a closed completion."""
    r = _as_floats(r)
    n = len(r)
    back = [(r[-1], r[-1])]
    for j in range(n - 3, 0, -1):
        lo, hi = back[-1]
        c = r[j + 1]
        dist = 0.0 if lo <= c <= hi else min(abs(lo - c), abs(hi - c))
        back.append((dist, hi + c))
    back.reverse()
    return back[:-1]


def random_polygon(r, rng: np.random.Generator | None = None, margin: float = 0.05,
                   closure_tol: float = DEFAULT_TOL) -> Polygon:
    """A polygon with side lengths ``r``.

    Diagonal lengths are drawn one at a time inside the range that keeps
    the remaining triangles closable, staying ``margin`` (as a fraction of
    each range) away from its ends; angles are uniform.  Without ``rng``
    the midpoints and ``theta = pi / 2`` are used, giving a fixed
    non-planar representative.
    """
    if isinstance(r, LengthVector) and not is_nonempty(r):
        raise EmptyModuliError(f"{r!r}: no closed polygon")
    rf = _as_floats(r)
    n = len(rf)
    if 2 * rf.max() > rf.sum() * (1 + 1e-12):
        raise EmptyModuliError("no closed polygon with these side lengths")
    reach = gc_intervals(rf)
    ell = np.empty(n - 3)
    prev = rf[0]
    for j in range(1, n - 2):
        c = rf[j]
        lo = max(abs(prev - c), reach[j - 1][0])
        hi = min(prev + c, reach[j - 1][1])
        if hi < lo:
            hi = lo
        width = hi - lo
        lo, hi = lo + margin * width, hi - margin * width
        ell[j - 1] = (lo + hi) / 2 if rng is None else rng.uniform(lo, hi)
        prev = ell[j - 1]
    if rng is None:
        theta = np.full(n - 3, math.pi / 2)
    else:
        theta = rng.uniform(0, 2 * math.pi, n - 3)
    return from_action_angle(rf, ell, theta, closure_tol)


def check_gc(P: Polygon, tol: float | None = None) -> bool:
    """Triangle inequalities linking consecutive fan diagonals, within ``tol``."""
    tol = P.closure_tol if tol is None else tol
    L = np.linalg.norm(_fan(P.edges), axis=1)
    r = P.side_lengths
    for j in range(P.n - 2):
        a, b, c = L[j], L[j + 1], r[j + 1]
        if c > a + b + tol or a > b + c + tol or b > a + c + tol:
            return False
    return True


def build_type1(r: LengthVector, index_set: IndexSet, closure_tol: float = DEFAULT_TOL) -> Polygon:
    """Planar isolated fixed point with ``e_1..e_{n-2}`` on the x-axis.

    ``e_i = eps_i r_i x`` and the closing triangle ``(|mu|, r_{n-1}, r_n)``
    lies in the xy-plane, with the angle at the origin from the law of
    cosines.
    """
    if not is_admissible(r, index_set):
        raise AdmissibilityError(f"{index_set!r} is not admissible for {r!r}")
    rf = r.as_floats()
    n = r.n
    signs = np.array(index_set.signs(), dtype=float)
    edges = np.zeros((n, 3))
    edges[: n - 2, 0] = signs * rf[: n - 2]
    norm_mu = float(edges[: n - 2, 0].sum())
    a, b = rf[-2], rf[-1]
    cos_t = (norm_mu ** 2 + b ** 2 - a ** 2) / (2 * norm_mu * b)
    cos_t = min(1.0, max(-1.0, cos_t))
    sin_t = math.sqrt(1.0 - cos_t ** 2)
    sin_a = b / a * sin_t
    cos_a = (norm_mu - b * cos_t) / a
    edges[n - 1] = (-b * cos_t, -b * sin_t, 0.0)
    edges[n - 2] = (-a * cos_a, a * sin_a, 0.0)
    return Polygon(edges, closure_tol)


def build_type2(r: LengthVector, parallel: bool, rng: np.random.Generator | None = None,
                closure_tol: float = DEFAULT_TOL) -> Polygon:
    """Fixed point with ``e_{n-1}``, ``e_n`` collinear.

    A polygon for the merged lengths ``(r_1..r_{n-2}, r_{n-1} +- r_n)`` is
    generated and its last edge split into the two collinear pieces.
    """
    n = r.n
    if n < 4:
        raise InputError("type II fixed points need n >= 4")
    a, b = r[-2], r[-1]
    merged = a + b if parallel else abs(a - b)
    if merged == 0:
        raise InputError("antiparallel split of equal lengths gives a zero edge")
    reduced = LengthVector(list(r.entries[:-2]) + [merged])
    if not is_nonempty(reduced):
        raise EmptyModuliError(f"{reduced!r}: no closed polygon")
    base = random_polygon(reduced, rng, closure_tol=closure_tol)
    d = base.edges[-1] / float(merged)
    af, bf = float(a), float(b)
    edges = np.zeros((n, 3))
    edges[: n - 2] = base.edges[:-1]
    if parallel:
        edges[n - 2], edges[n - 1] = af * d, bf * d
    elif a > b:
        edges[n - 2], edges[n - 1] = af * d, -bf * d
    else:
        edges[n - 2], edges[n - 1] = -af * d, bf * d
    return Polygon(edges, closure_tol)


class FixedPointKind(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    NOT_FIXED = "not fixed"


class Classification(NamedTuple):
    kind: FixedPointKind
    index_set: IndexSet | None = None


def _collinear(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return True
    return float(np.linalg.norm(np.cross(u, v))) <= tol * nu * nv


def classify_fixed(P: Polygon, tol: float = 1e-9) -> Classification:
    """Fixed-point type for bending along the last diagonal ``mu_{n-3}``."""
    e = P.edges
    n = P.n
    head = e[: n - 2]
    ref = head[int(np.argmax(np.linalg.norm(head, axis=1)))]
    if all(_collinear(ref, v, tol) for v in head):
        mu = head.sum(axis=0)
        axis = mu if np.linalg.norm(mu) > tol else ref
        mask = 0
        for i, v in enumerate(head):
            if v @ axis > 0:
                mask |= 1 << i
        return Classification(FixedPointKind.TYPE_I, IndexSet(n, mask))
    if _collinear(e[n - 2], e[n - 1], tol):
        return Classification(FixedPointKind.TYPE_II)
    return Classification(FixedPointKind.NOT_FIXED)


def so3_equivalent(P: Polygon, Q: Polygon, tol: float = 1e-9) -> bool:
    """Whether ``Q`` is a rotation of ``P``.

    Equal Gram matrices make ``Q`` an orthogonal image of ``P``; the sign of
    the triple product on the best-conditioned triple of ``P`` rules out a
    reflection.  Planar polygons need only the Gram test.
    """
    if P.n != Q.n:
        raise InputError(f"cannot compare an {P.n}-gon with an {Q.n}-gon")
    a, b = P.edges, Q.edges
    if np.max(np.abs(a @ a.T - b @ b.T)) > tol:
        return False
    n = P.n
    best, best_det = None, 0.0
    for i in range(n):
        cross = np.cross(a[i], a[i + 1:])
        for dj, c in enumerate(cross):
            j = i + 1 + dj
            dets = a[j + 1:] @ c
            if dets.size:
                m = int(np.argmax(np.abs(dets)))
                if abs(dets[m]) > abs(best_det):
                    best, best_det = (i, j, j + 1 + m), float(dets[m])
    if best is None or abs(best_det) <= tol:
        return True
    i, j, k = best
    return abs(float(np.linalg.det(b[[i, j, k]])) - best_det) <= tol


def tangent_check(P: Polygon, v, tol: float = 1e-9) -> bool:
    """``v`` is tangent to the quotient: sums to zero, each ``v_i`` is
    orthogonal to ``e_i``, and ``sum (1/r_i) e_i x v_i = 0``."""
    v = np.asarray(v, dtype=float).reshape(P.n, 3)
    e, r = P.edges, P.side_lengths
    if np.linalg.norm(v.sum(axis=0)) > tol:
        return False
    if np.max(np.abs(np.einsum("ij,ij->i", e, v))) > tol:
        return False
    return float(np.linalg.norm((np.cross(e, v) / r[:, None]).sum(axis=0))) <= tol


class SymplecticToolkit:
    """Metric, symplectic form and complex structure at a polygon."""

    def __init__(self, P: Polygon):
        self.P = P
        self.e = P.edges
        self.r = P.side_lengths
        self._basis = None

    def _shape(self, u) -> np.ndarray:
        return np.asarray(u, dtype=float).reshape(self.P.n, 3)

    def inner(self, u, v) -> float:
        u, v = self._shape(u), self._shape(v)
        return float((np.einsum("ij,ij->i", u, v) / self.r).sum())

    def omega(self, u, v) -> float:
        u, v = self._shape(u), self._shape(v)
        w = self.e / self.r[:, None] ** 2
        return float(np.einsum("ij,ij->", w, np.cross(v, u)))

    def J(self, u) -> np.ndarray:
        u = self._shape(u)
        return np.cross(self.e / self.r[:, None], u)

    def constraints(self) -> np.ndarray:
        """Rows of the linear conditions cutting out the tangent space in R^{3n}."""
        n, e, r = self.P.n, self.e, self.r
        rows = np.zeros((6 + n, 3 * n))
        for i in range(n):
            rows[0:3, 3 * i: 3 * i + 3] = np.eye(3)
            rows[3 + i, 3 * i: 3 * i + 3] = e[i]
            # (e_i x v_i) = [e_i]_x v_i
            x, y, z = e[i] / r[i]
            rows[3 + n: 6 + n, 3 * i: 3 * i + 3] = [[0, -z, y], [z, 0, -x], [-y, x, 0]]
        return rows

    def tangent_basis(self) -> np.ndarray:
        """Orthonormal (Euclidean) basis of the tangent space, one vector per row."""
        if self._basis is None:
            c = self.constraints()
            _, s, vt = np.linalg.svd(c)
            rank = int(np.sum(s > 1e-10 * s[0]))
            self._basis = vt[rank:]
        return self._basis

    def random_tangent(self, rng: np.random.Generator) -> np.ndarray:
        """Project a Gaussian vector onto the tangent space; shape ``(n, 3)``."""
        basis = self.tangent_basis()
        x = rng.standard_normal(3 * self.P.n)
        return (basis.T @ (basis @ x)).reshape(self.P.n, 3)

    Jop = J


def symplectic_toolkit(P: Polygon) -> SymplecticToolkit:
    return SymplecticToolkit(P)
