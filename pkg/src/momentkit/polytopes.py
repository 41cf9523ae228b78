"""Compact convex rational polytopes from half-space data.

A polytope is ingested exclusively in H-representation: the bounded
intersection of half-spaces ``<normal, x> >= offset`` with inward-pointing
normals.  Vertices come from brute force over all n-subsets of constraints,
edges from shared active facets, both exact.  That is comfortably fast at
the scale this package targets (dimension <= 4, a few dozen half-spaces)
and needs no pivoting code.

Besides the representation itself this module carries the two brute-force
oracles that the rest of the package is validated against: exact Euclidean
volume by recursive cones over facets, and lattice-point enumeration by
bounding-box filtering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor

from . import linalg
from .algebra import (
    Vec,
    as_vec,
    dot,
    is_zero_vec,
    parse_rat,
    pivot_index,
    primitive,
    format_rat,
    vec_from_json,
    vec_to_json,
    vsub,
)
from .errors import (
    DegenerateInputError,
    DomainError,
    EmptyRegionError,
    UnboundedRegionError,
)


@dataclass(frozen=True)
class HalfSpace:
    """The constraint <normal, x> >= offset with inward-pointing normal."""

    normal: Vec
    offset: Fraction

    @staticmethod
    def make(normal, offset) -> "HalfSpace":
        return HalfSpace(as_vec(normal), Fraction(offset))


def _canonical_halfspace(hs: HalfSpace) -> HalfSpace:
    """Scale so the normal is a primitive integer vector.

    Positive rescalings describe the same half-space; the canonical form
    makes duplicates literal duplicates.
    """
    p = primitive(hs.normal)
    i = next(j for j, c in enumerate(hs.normal) if c != 0)
    s = p[i] / hs.normal[i]
    return HalfSpace(p, hs.offset * s)


@dataclass(frozen=True)
class VertexFigure:
    """Local data at one vertex: neighbors and edge directions."""

    vertex: Vec
    neighbors: tuple[int, ...]
    edge_dirs: tuple[Vec, ...]
    primitive_edge_dirs: tuple[Vec, ...]


@dataclass(frozen=True)
class SmoothnessReport:
    simple: bool
    smooth: bool
    # per vertex index, |det| of the primitive edge matrix (simple case only)
    vertex_dets: tuple[tuple[int, Fraction], ...]
    failing_vertex: int | None
    failing_det: Fraction | None

    @property
    def reason(self) -> str | None:
        if self.smooth:
            return None
        return "not simple" if not self.simple else "non-unimodular vertex cone"


class Polytope:
    """Immutable bounded rational polytope with derived combinatorics.

    ``vertices`` are sorted lexicographically; ``vertex_facets[i]`` is the
    frozenset of half-space indices active (tight) at vertex i; ``edges``
    are index pairs (i, j) with i < j.
    """

    __slots__ = ("dim", "halfspaces", "vertices", "vertex_facets", "edges",
                 "_facets", "_int_rows")

    def __init__(self, dim, halfspaces, vertices, vertex_facets, edges):
        self.dim: int = dim
        self.halfspaces: tuple[HalfSpace, ...] = halfspaces
        self.vertices: tuple[Vec, ...] = vertices
        self.vertex_facets: tuple[frozenset[int], ...] = vertex_facets
        self.edges: tuple[tuple[int, int], ...] = edges
        self._facets: tuple[int, ...] | None = None
        self._int_rows: list[tuple[tuple[int, ...], int]] | None = None

    def __repr__(self) -> str:
        return (f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, "
                f"edges={len(self.edges)}, halfspaces={len(self.halfspaces)})")

    @property
    def facets(self) -> tuple[int, ...]:
        """Half-space indices whose active vertex set is (dim-1)-dimensional."""
        if self._facets is None:
            out = []
            for k in range(len(self.halfspaces)):
                active = [v for v, facets in zip(self.vertices, self.vertex_facets)
                          if k in facets]
                if linalg.affine_rank(active) == self.dim - 1:
                    out.append(k)
            self._facets = tuple(out)
        return self._facets

    def facet_vertices(self, k: int) -> tuple[int, ...]:
        return tuple(i for i, facets in enumerate(self.vertex_facets) if k in facets)

    def contains(self, x) -> bool:
        """Boundary-inclusive membership test."""
        x = as_vec(x)
        if len(x) != self.dim:
            raise DomainError(f"point has dimension {len(x)}, expected {self.dim}")
        return all(dot(h.normal, x) >= h.offset for h in self.halfspaces)

    def vertex_figure(self, i: int) -> VertexFigure:
        v = self.vertices[i]
        neighbors = sorted(b if a == i else a
                           for a, b in self.edges if i in (a, b))
        dirs = tuple(vsub(self.vertices[j], v) for j in neighbors)
        return VertexFigure(
            vertex=v,
            neighbors=tuple(neighbors),
            edge_dirs=dirs,
            primitive_edge_dirs=tuple(primitive(d) for d in dirs),
        )

    def integer_rows(self) -> list[tuple[tuple[int, ...], int]]:
        """Constraints scaled to integers, for fast lattice-point filtering."""
        if self._int_rows is None:
            rows = []
            for h in self.halfspaces:
                q = h.offset.denominator
                rows.append((tuple(int(c * q) for c in h.normal),
                             h.offset.numerator))
            self._int_rows = rows
        return self._int_rows

    def contains_int(self, x: tuple[int, ...]) -> bool:
        for normal, rhs in self.integer_rows():
            if sum(a * b for a, b in zip(normal, x)) < rhs:
                return False
        return True


def _check_bounded(dim: int, normals: list[Vec]) -> None:
    """Raise unless the recession cone {d : <n_i, d> >= 0 for all i} is {0}.

    The cone contains a line iff the normals fail to span; a pointed
    nontrivial cone has an extreme ray, which is tight on some dim-1
    independent constraints.  Checking both covers every case exactly.
    """
    if linalg.rank([list(n) for n in normals]) < dim:
        raise UnboundedRegionError(
            "constraint normals do not span: recession cone contains a line")
    for subset in combinations(range(len(normals)), dim - 1):
        rows = [list(normals[i]) for i in subset]
        if rows and linalg.rank(rows) != dim - 1:
            continue
        kernel = linalg.nullspace(rows, ncols=dim)
        if len(kernel) != 1:
            continue
        d = kernel[0]
        for cand in (d, tuple(-c for c in d)):
            if all(dot(n, cand) >= 0 for n in normals):
                raise UnboundedRegionError(
                    f"unbounded along direction {vec_to_json(primitive(cand))}")


def from_halfspaces(dim: int, halfspaces) -> Polytope:
    """Build a polytope from inward half-spaces <normal, x> >= offset.

    Duplicate (positively proportional) constraints are merged; redundant
    ones are harmless.  Raises EmptyRegionError, UnboundedRegionError, or
    DegenerateInputError when the data does not cut out a compact polytope.
    """
    if dim < 1:
        raise DomainError("ambient dimension must be at least 1")
    given = [h if isinstance(h, HalfSpace) else HalfSpace.make(*h) for h in halfspaces]
    if not given:
        raise DomainError("at least one half-space is required")
    for h in given:
        if len(h.normal) != dim:
            raise DomainError(f"normal {h.normal} does not have dimension {dim}")
        if is_zero_vec(h.normal):
            raise DomainError("half-space normal must be nonzero")
    canon: list[HalfSpace] = []
    seen_hs = set()
    for h in given:
        c = _canonical_halfspace(h)
        key = (c.normal, c.offset)
        if key not in seen_hs:
            seen_hs.add(key)
            canon.append(c)

    normals = [h.normal for h in canon]
    offsets = [h.offset for h in canon]
    any_invertible = False
    verts: list[Vec] = []
    seen = set()
    for subset in combinations(range(len(canon)), dim):
        x = linalg.solve_square([list(normals[i]) for i in subset],
                                [offsets[i] for i in subset])
        if x is None:
            continue
        any_invertible = True
        if x in seen:
            continue
        seen.add(x)
        if all(dot(n, x) >= b for n, b in zip(normals, offsets)):
            verts.append(x)

    if not verts:
        if not any_invertible:
            raise DegenerateInputError(
                "every constraint subset is singular: the normals do not span, "
                "so the region is empty or contains a line")
        raise EmptyRegionError("the half-spaces have empty intersection")

    _check_bounded(dim, normals)

    verts.sort()
    vertex_facets = tuple(
        frozenset(k for k, h in enumerate(canon) if dot(h.normal, v) == h.offset)
        for v in verts)
    edges = []
    for i, j in combinations(range(len(verts)), 2):
        shared = vertex_facets[i] & vertex_facets[j]
        if len(shared) < dim - 1:
            continue
        if linalg.rank([list(normals[k]) for k in shared]) == dim - 1:
            edges.append((i, j))
    return Polytope(dim, tuple(canon), tuple(verts), vertex_facets, tuple(edges))


# ---------------------------------------------------------------------------
# builders


def simplex(n: int, scale=1) -> Polytope:
    """Standard n-simplex conv{0, scale*e_1, ..., scale*e_n}."""
    scale = Fraction(scale)
    if n < 1 or scale <= 0:
        raise DomainError("simplex needs n >= 1 and scale > 0")
    hs = [HalfSpace.make([1 if j == i else 0 for j in range(n)], 0) for i in range(n)]
    hs.append(HalfSpace.make([-1] * n, -scale))
    return from_halfspaces(n, hs)


def cube(n: int, scale=1) -> Polytope:
    """Axis cube [0, scale]^n."""
    scale = Fraction(scale)
    if n < 1 or scale <= 0:
        raise DomainError("cube needs n >= 1 and scale > 0")
    hs = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        hs.append(HalfSpace.make(e, 0))
        hs.append(HalfSpace.make([-c for c in e], -scale))
    return from_halfspaces(n, hs)


def hirzebruch(a: int) -> Polytope:
    """Trapezoid conv{(0,0), (a+1,0), (0,1), (1,1)}, smooth for every a >= 1.

    Any dilation or translation of this trapezoid would do equally well;
    these coordinates are simply a convenient normal form.
    """
    if a < 1:
        raise DomainError("hirzebruch parameter must be a positive integer")
    hs = [
        HalfSpace.make([1, 0], 0),
        HalfSpace.make([0, 1], 0),
        HalfSpace.make([0, -1], -1),
        HalfSpace.make([-1, -a], -(a + 1)),
    ]
    return from_halfspaces(2, hs)


def dilate(P: Polytope, k) -> Polytope:
    """Scale the polytope by a positive rational factor about the origin."""
    k = Fraction(k)
    if k <= 0:
        raise DomainError("dilation factor must be positive")
    return from_halfspaces(
        P.dim, [HalfSpace(h.normal, h.offset * k) for h in P.halfspaces])


def from_spec(spec: str) -> Polytope:
    """Parse builder specs like "simplex:2:1", "cube:3:2", "hirzebruch:1"."""
    parts = spec.split(":")
    name = parts[0]
    try:
        if name == "simplex" and len(parts) == 3:
            return simplex(int(parts[1]), parse_rat(parts[2]))
        if name == "cube" and len(parts) == 3:
            return cube(int(parts[1]), parse_rat(parts[2]))
        if name == "hirzebruch" and len(parts) == 2:
            return hirzebruch(int(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise ValueError(f"malformed builder spec {spec!r}: {exc}") from exc
    raise ValueError(
        f"unknown builder spec {spec!r}; expected simplex:n:scale, "
        f"cube:n:scale, or hirzebruch:a")


def catalog_specs(max_dim: int = 3, max_scale: int = 3, max_a: int = 3) -> list[str]:
    """Builder specs of the standard verification catalog."""
    specs = []
    for n in range(1, max_dim + 1):
        for s in range(1, max_scale + 1):
            specs.append(f"simplex:{n}:{s}")
    for n in range(1, max_dim + 1):
        for s in range(1, max_scale + 1):
            specs.append(f"cube:{n}:{s}")
    for a in range(1, max_a + 1):
        specs.append(f"hirzebruch:{a}")
    return specs


# ---------------------------------------------------------------------------
# Delzant conditions


def is_simple(P: Polytope) -> bool:
    """True iff every vertex has exactly dim incident edges."""
    counts = [0] * len(P.vertices)
    for a, b in P.edges:
        counts[a] += 1
        counts[b] += 1
    return all(c == P.dim for c in counts)


def smoothness_report(P: Polytope) -> SmoothnessReport:
    counts = [0] * len(P.vertices)
    for a, b in P.edges:
        counts[a] += 1
        counts[b] += 1
    for i, c in enumerate(counts):
        if c != P.dim:
            return SmoothnessReport(simple=False, smooth=False, vertex_dets=(),
                                    failing_vertex=i, failing_det=None)
    dets: list[tuple[int, Fraction]] = []
    failing: tuple[int, Fraction] | None = None
    for i in range(len(P.vertices)):
        vf = P.vertex_figure(i)
        d = abs(linalg.det([list(p) for p in vf.primitive_edge_dirs]))
        dets.append((i, d))
        if d != 1 and failing is None:
            failing = (i, d)
    return SmoothnessReport(
        simple=True,
        smooth=failing is None,
        vertex_dets=tuple(dets),
        failing_vertex=None if failing is None else failing[0],
        failing_det=None if failing is None else failing[1],
    )


def is_smooth(P: Polytope) -> bool:
    """True iff simple and every vertex cone is unimodular (Delzant)."""
    return smoothness_report(P).smooth


def edge_directions(P: Polytope) -> list[Vec]:
    """Primitive direction of each edge, oriented low index to high index."""
    return [primitive(vsub(P.vertices[j], P.vertices[i])) for i, j in P.edges]


# ---------------------------------------------------------------------------
# brute-force oracles


def volume_oracle(P: Polytope) -> Fraction:
    """Exact Euclidean volume by recursive cones over facets.

    From a base vertex, each facet not through it contributes
    height/|pivot coefficient| times the facet volume computed in projected
    coordinates; dropping the pivot coordinate cancels the Euclidean norm
    factors exactly, keeping every intermediate value rational.
    """
    if linalg.affine_rank(P.vertices) < P.dim:
        raise DegenerateInputError("polytope is not full-dimensional")
    return _volume(P)


def _volume(P: Polytope) -> Fraction:
    n = P.dim
    if n == 1:
        xs = [v[0] for v in P.vertices]
        return max(xs) - min(xs)
    base = P.vertices[0]
    total = Fraction(0)
    for k in P.facets:
        h = P.halfspaces[k]
        height = dot(h.normal, base) - h.offset
        if height == 0:
            continue
        piv = pivot_index(h.normal)
        total += height / abs(h.normal[piv]) * _volume(_project_facet(P, k, piv))
    return total / n


def _project_facet(P: Polytope, k: int, piv: int) -> Polytope:
    """The facet of half-space k as a full polytope in the coordinates
    obtained by eliminating the pivot coordinate on the facet hyperplane."""
    a = P.halfspaces[k].normal
    b = P.halfspaces[k].offset
    rows = []
    for j, h in enumerate(P.halfspaces):
        if j == k:
            continue
        factor = h.normal[piv] / a[piv]
        normal = tuple(c - factor * ac
                       for i, (c, ac) in enumerate(zip(h.normal, a)) if i != piv)
        offset = h.offset - factor * b
        if is_zero_vec(normal):
            if offset > 0:
                raise EmptyRegionError("facet substitution became infeasible")
            continue
        rows.append(HalfSpace(normal, offset))
    return from_halfspaces(P.dim - 1, rows)


def integer_box(P: Polytope) -> list[tuple[int, int]]:
    """Per-coordinate integer range [ceil(min), floor(max)] of candidate
    lattice points inside P."""
    los, his = [], []
    for i in range(P.dim):
        coords = [v[i] for v in P.vertices]
        los.append(ceil(min(coords)))
        his.append(floor(max(coords)))
    return list(zip(los, his))


def tight_box(P: Polytope) -> list[tuple[int, int]]:
    """Smallest integer box [floor(min), ceil(max)] containing P."""
    los, his = [], []
    for i in range(P.dim):
        coords = [v[i] for v in P.vertices]
        los.append(floor(min(coords)))
        his.append(ceil(max(coords)))
    return list(zip(los, his))


def lattice_points_oracle(P: Polytope) -> list[tuple[int, ...]]:
    """All integer points of P, by filtering the integer bounding box."""
    ranges = [range(lo, hi + 1) for lo, hi in integer_box(P)]
    return [x for x in product(*ranges) if P.contains_int(x)]


# ---------------------------------------------------------------------------
# JSON form


def polytope_to_json(P: Polytope) -> dict:
    return {
        "dim": P.dim,
        "halfspaces": [
            {"normal": vec_to_json(h.normal), "offset": format_rat(h.offset)}
            for h in P.halfspaces
        ],
    }


def polytope_from_json(obj) -> Polytope:
    if not isinstance(obj, dict) or "dim" not in obj or "halfspaces" not in obj:
        raise ValueError("polytope JSON must have 'dim' and 'halfspaces'")
    dim = obj["dim"]
    if not isinstance(dim, int):
        raise ValueError(f"'dim' must be an integer, got {dim!r}")
    hs = []
    for entry in obj["halfspaces"]:
        if not isinstance(entry, dict):
            raise ValueError(f"half-space entry must be an object, got {entry!r}")
        hs.append(HalfSpace(vec_from_json(entry["normal"]),
                            parse_rat(entry["offset"])))
    return from_halfspaces(dim, hs)
