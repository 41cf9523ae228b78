"""Moment graphs of smooth polytopes and their divisibility cohomology.

The moment graph of a Delzant polytope is its edge graph with each edge
labeled by the primitive direction between its endpoints.  A class is a
polynomial per vertex; it is admissible when every edge label divides the
difference of the endpoint polynomials.  Dimensions of the admissible
classes in each degree come from exact rational rank computations, Betti
numbers from counting downward edges against a generic direction, and the
two are tied together by a free-module (Hilbert series) identity.

Edge labels are only meaningful up to sign; every predicate here is
invariant under flipping any subset of labels, and the stored convention
(primitive direction from the lower-indexed vertex) exists purely to make
serialization deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import linalg
from .algebra import (
    Poly,
    Vec,
    as_vec,
    divides_linear,
    dot,
    generic_vector,
    homogeneous_degree,
    is_zero_vec,
    linear_poly,
    monomials,
    pivot_index,
    poly_from_json,
    poly_sub,
    poly_to_json,
    primitive,
    restrict_to_hyperplane,
    vec_to_json,
    vsub,
)
from .errors import DomainError, NotDelzantError, NotGenericError
from .polytopes import Polytope, smoothness_report

# A candidate equivariant class: one polynomial per graph vertex.
GKMClass = tuple[Poly, ...]


@dataclass(frozen=True)
class MomentGraph:
    """Vertices with positions, edges, and primitive weight labels.

    ``weights[k]`` labels ``edges[k] = (i, j)`` (i < j) and is stored as
    the primitive direction from vertex i, though nothing downstream may
    depend on that sign choice.  At every vertex the incident labels must
    be pairwise linearly independent.
    """

    positions: tuple[Vec, ...]
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Vec, ...]

    def __post_init__(self):
        nverts = len(self.positions)
        if nverts == 0:
            raise DomainError("moment graph needs at least one vertex")
        dims = {len(p) for p in self.positions}
        if len(dims) != 1:
            raise DomainError("vertex positions have mixed dimensions")
        if len(self.weights) != len(self.edges):
            raise DomainError("one weight per edge required")
        seen = set()
        for (i, j), w in zip(self.edges, self.weights):
            if not (0 <= i < j < nverts):
                raise DomainError(f"bad edge ({i}, {j})")
            if (i, j) in seen:
                raise DomainError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            if is_zero_vec(w):
                raise DomainError(f"zero weight on edge ({i}, {j})")
        for v in range(nverts):
            incident = [w for (i, j), w in zip(self.edges, self.weights)
                        if v in (i, j)]
            for a in range(len(incident)):
                for b in range(a + 1, len(incident)):
                    if linalg.rank([list(incident[a]), list(incident[b])]) < 2:
                        raise DomainError(
                            f"parallel weights at vertex {v}: "
                            f"{incident[a]} and {incident[b]}")

    @property
    def dim(self) -> int:
        return len(self.positions[0])

    @property
    def labels(self) -> list[str]:
        return [f"v{i}" for i in range(len(self.positions))]

    def incident_edges(self, v: int) -> list[int]:
        return [k for k, (i, j) in enumerate(self.edges) if v in (i, j)]


def moment_graph(P: Polytope) -> MomentGraph:
    """Edge graph of a Delzant polytope with primitive direction labels."""
    report = smoothness_report(P)
    if not report.smooth:
        raise NotDelzantError(f"polytope is not Delzant: {report.reason}")
    weights = tuple(primitive(vsub(P.vertices[j], P.vertices[i]))
                    for i, j in P.edges)
    return MomentGraph(P.vertices, P.edges, weights)


def flip_weights(G: MomentGraph, flipped_edges) -> MomentGraph:
    """Same graph with the listed edge labels negated (a no-op semantically)."""
    flipped = set(flipped_edges)
    weights = tuple(
        tuple(-c for c in w) if k in flipped else w
        for k, w in enumerate(G.weights))
    return MomentGraph(G.positions, G.edges, weights)


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class GKMCheckReport:
    ok: bool
    # indices of edges whose divisibility condition fails
    failures: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok


def gkm_check(G: MomentGraph, cls: GKMClass) -> GKMCheckReport:
    """Does every edge label divide the difference of endpoint components?"""
    if len(cls) != len(G.positions):
        raise DomainError(
            f"class has {len(cls)} components, graph has {len(G.positions)} "
            f"vertices")
    failures = []
    for k, ((i, j), w) in enumerate(zip(G.edges, G.weights)):
        if not divides_linear(w, poly_sub(cls[i], cls[j])):
            failures.append(k)
    return GKMCheckReport(ok=not failures, failures=tuple(failures))


def class_degree(cls: GKMClass) -> int | None:
    """Common homogeneous degree, -1 for the zero class, None if mixed."""
    degs = {homogeneous_degree(f) for f in cls if f}
    if not degs:
        return -1
    if len(degs) == 1:
        return degs.pop()
    return None


# ---------------------------------------------------------------------------
# degreewise dimensions by exact rank


def _degree_system(G: MomentGraph, k: int) -> tuple[list[list], int]:
    """Linear constraints on monomial coefficients of a degree-k class.

    Unknowns are ordered (vertex, monomial) with monomials in descending
    graded lex order; rows are ordered (edge, residual monomial).  For an
    edge with label w, the difference of endpoint components must vanish
    after eliminating w's pivot variable, which is one row per monomial of
    degree k in the remaining variables.
    """
    n = G.dim
    monos = monomials(n, k)
    nmono = len(monos)
    ncols = len(G.positions) * nmono
    col = {(v, m): v * nmono + idx
           for v in range(len(G.positions))
           for idx, m in enumerate(monos)}
    rows: list[list] = []
    for (i, j), w in zip(G.edges, G.weights):
        piv = pivot_index(w)
        residual = [m for m in monos if m[piv] == 0]
        if not residual:
            continue
        res_idx = {m: r for r, m in enumerate(residual)}
        block = [[0] * ncols for _ in residual]
        for m in monos:
            restricted = restrict_to_hyperplane(w, {m: 1}, piv=piv)
            for mono, coeff in restricted.items():
                r = res_idx[mono]
                block[r][col[(i, m)]] += coeff
                block[r][col[(j, m)]] -= coeff
        rows.extend(block)
    return rows, ncols


def gkm_dimension(G: MomentGraph, k: int) -> int:
    """Dimension over Q of the degree-k admissible classes."""
    if k < 0:
        raise DomainError("degree must be non-negative")
    rows, ncols = _degree_system(G, k)
    return ncols - linalg.rank(rows)


def gkm_degree_basis(G: MomentGraph, k: int) -> list[GKMClass]:
    """Basis of the degree-k admissible classes from the exact nullspace."""
    if k < 0:
        raise DomainError("degree must be non-negative")
    rows, ncols = _degree_system(G, k)
    monos = monomials(G.dim, k)
    nmono = len(monos)
    basis = []
    for v in linalg.nullspace(rows, ncols=ncols):
        cls = []
        for p in range(len(G.positions)):
            f: Poly = {}
            for idx, m in enumerate(monos):
                c = v[p * nmono + idx]
                if c:
                    f[m] = c
            cls.append(f)
        basis.append(tuple(cls))
    return basis


# ---------------------------------------------------------------------------
# Morse counting


def choose_generic_direction(G: MomentGraph, seed=0) -> Vec:
    """Direction pairing nonzero with every edge's position difference."""
    diffs = [vsub(G.positions[j], G.positions[i]) for i, j in G.edges]
    return generic_vector(G.dim, diffs, seed=seed)


def betti_numbers(G: MomentGraph, xi) -> tuple[int, ...]:
    """Count vertices by number of downward edges against xi.

    Entry k is the number of vertices with exactly k incident edges whose
    other endpoint pairs lower against xi.
    """
    xi = as_vec(xi)
    down_counts = []
    for v in range(len(G.positions)):
        down = 0
        for i, j in G.edges:
            if v not in (i, j):
                continue
            other = j if v == i else i
            pairing = dot(vsub(G.positions[other], G.positions[v]), xi)
            if pairing == 0:
                raise NotGenericError(
                    f"direction is not generic: edge ({i}, {j}) pairs to zero")
            if pairing < 0:
                down += 1
        down_counts.append(down)
    profile = [0] * (max(len(G.incident_edges(v))
                         for v in range(len(G.positions))) + 1)
    for d in down_counts:
        profile[d] += 1
    return tuple(profile)


def free_module_check(G: MomentGraph, k_max: int, xi=None, seed=0) -> bool:
    """Hilbert-series test: degreewise dimensions match a free module with
    one generator of degree j per vertex of downward count j."""
    if k_max < 0:
        raise DomainError("k_max must be non-negative")
    if xi is None:
        xi = choose_generic_direction(G, seed=seed)
    b = betti_numbers(G, xi)
    n = G.dim
    for k in range(k_max + 1):
        expected = sum(b[j] * comb(k - j + n - 1, n - 1)
                       for j in range(min(k, len(b) - 1) + 1))
        if gkm_dimension(G, k) != expected:
            return False
    return True


def ordinary_betti(G: MomentGraph, k: int, xi=None, seed=0) -> int:
    """Degree-k dimension after collapsing the polynomial coefficients.

    Valid once the free-module identity holds through degree k; the answer
    is then the k-th entry of the downward-edge profile.
    """
    if not free_module_check(G, k, xi=xi, seed=seed):
        raise DomainError("free module check failed through the requested degree")
    if xi is None:
        xi = choose_generic_direction(G, seed=seed)
    b = betti_numbers(G, xi)
    return b[k] if k < len(b) else 0


# ---------------------------------------------------------------------------
# facet generators


def facet_class(P: Polytope, G: MomentGraph, facet: int) -> GKMClass:
    """Degree-1 class supported on one facet.

    Vertices off the facet get zero; a vertex on the facet gets the unique
    primitive edge direction leaving the facet there, read as a linear
    polynomial.
    """
    if len(G.positions) != len(P.vertices):
        raise DomainError("graph does not match the polytope")
    if facet not in P.facets:
        raise DomainError(f"half-space {facet} is not a facet")
    normal = P.halfspaces[facet].normal
    components: list[Poly] = []
    for i in range(len(P.vertices)):
        if facet not in P.vertex_facets[i]:
            components.append({})
            continue
        vf = P.vertex_figure(i)
        leaving = [d for d in vf.primitive_edge_dirs if dot(normal, d) != 0]
        if len(leaving) != 1:
            raise NotDelzantError(
                f"vertex {i} does not have a unique edge leaving the facet")
        components.append(linear_poly(leaving[0]))
    return tuple(components)


# ---------------------------------------------------------------------------
# JSON forms


def moment_graph_to_json(G: MomentGraph) -> dict:
    return {
        "labels": G.labels,
        "positions": [vec_to_json(p) for p in G.positions],
        "edges": [list(e) for e in G.edges],
        "weights": [vec_to_json(w) for w in G.weights],
    }


def gkm_class_to_json(G: MomentGraph, cls: GKMClass) -> dict:
    return {label: poly_to_json(f) for label, f in zip(G.labels, cls)}


def gkm_class_from_json(G: MomentGraph, obj) -> GKMClass:
    if not isinstance(obj, dict):
        raise ValueError("class JSON must map vertex labels to polynomials")
    expected = set(G.labels)
    got = set(obj)
    if got != expected:
        raise ValueError(
            f"class labels {sorted(got)} do not match graph labels "
            f"{sorted(expected)}")
    return tuple(poly_from_json(obj[label], G.dim) for label in G.labels)
