"""Dual graphs of resolutions: multiplicities, self-intersections, consistency.

A ``DualGraph`` records one vertex per curve on the special fiber (label,
multiplicity, optional self-intersection) and weighted edges for pairwise
intersection numbers.  Because the fiber is a principal divisor, the rows of
the intersection matrix satisfy  sum_j m_j (C_i . C_j) = 0,  which determines
every missing self-intersection: solving and checking that linear system is
the main service here.  A shape predictor for the chain arising from the
rational double point left after the first modification is included.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import permutations

from .arith import rat_to_str
from .valuation import InductiveValuation, ramification_index


@dataclass(frozen=True)
class Vertex:
    label: str
    multiplicity: int | None = None
    self_intersection: int | None = None


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    weight: int = 1

    def key(self) -> tuple[str, str]:
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)


class GraphConsistencyError(ValueError):
    pass


@dataclass
class DualGraph:
    vertices: list[Vertex] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)

    def __post_init__(self):
        labels = [v.label for v in self.vertices]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertex labels")
        known = set(labels)
        seen = set()
        for e in self.edges:
            if e.a == e.b:
                raise ValueError("self-loops are not allowed in the edge list")
            if e.a not in known or e.b not in known:
                raise ValueError(f"edge {e} references an unknown vertex")
            if e.key() in seen:
                raise ValueError(f"duplicate edge {e.key()}")
            if e.weight < 1:
                raise ValueError("edge weights must be positive")
            seen.add(e.key())

    # -- access helpers ------------------------------------------------------

    def labels(self) -> list[str]:
        return [v.label for v in self.vertices]

    def vertex(self, label: str) -> Vertex:
        for v in self.vertices:
            if v.label == label:
                return v
        raise KeyError(label)

    def edge_weight(self, a: str, b: str) -> int:
        for e in self.edges:
            if e.key() == Edge(a, b).key():
                return e.weight
        return 0

    def neighbors(self, label: str) -> list[tuple[str, int]]:
        out = []
        for e in self.edges:
            if e.a == label:
                out.append((e.b, e.weight))
            elif e.b == label:
                out.append((e.a, e.weight))
        return sorted(out)

    def degree(self, label: str) -> int:
        return sum(w for _, w in self.neighbors(label))

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0].label}
        frontier = [self.vertices[0].label]
        while frontier:
            nxt = frontier.pop()
            for nb, _ in self.neighbors(nxt):
                if nb not in seen:
                    seen.add(nb)
                    frontier.append(nb)
        return len(seen) == len(self.vertices)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema": "maclane-surfaces/v1",
            "vertices": [
                {
                    "label": v.label,
                    "multiplicity": v.multiplicity,
                    "self_intersection": v.self_intersection,
                }
                for v in self.vertices
            ],
            "edges": [{"a": e.a, "b": e.b, "weight": e.weight} for e in self.edges],
        }

    @staticmethod
    def from_json(doc: dict) -> "DualGraph":
        vertices = [
            Vertex(v["label"], v.get("multiplicity"), v.get("self_intersection"))
            for v in doc["vertices"]
        ]
        edges = [Edge(e["a"], e["b"], e.get("weight", 1)) for e in doc["edges"]]
        return DualGraph(vertices, edges)

    def to_dot(self) -> str:
        lines = ["graph dual_graph {"]
        for v in self.vertices:
            m = "?" if v.multiplicity is None else v.multiplicity
            s = "?" if v.self_intersection is None else v.self_intersection
            attrs = [f'label="{v.label} (m={m}, self={s})"']
            if v.multiplicity is not None:
                attrs.append(f"m={v.multiplicity}")
            if v.self_intersection is not None:
                attrs.append(f"self={v.self_intersection}")
            lines.append(f"  {v.label} [{', '.join(attrs)}];")
        for e in self.edges:
            suffix = f" [weight={e.weight}]" if e.weight != 1 else ""
            lines.append(f"  {e.a} -- {e.b}{suffix};")
        lines.append("}")
        return "\n".join(lines)


def multiplicities_from_valuations(vs: list[InductiveValuation]) -> list[int]:
    """Component multiplicities in the fiber divisor: the ramification indices."""
    return [ramification_index(v) for v in vs]


def solve_self_intersections(g: DualGraph) -> DualGraph:
    """Fill every missing self-intersection from  sum_j m_j (C_i.C_j) = 0.

    Vertices that already carry a self-intersection are left untouched; a
    non-integral quotient for a missing one signals inconsistent input (wrong
    multiplicities or a missing edge).
    """
    for v in g.vertices:
        if v.multiplicity is None:
            raise GraphConsistencyError(f"vertex {v.label} has no multiplicity")
    out = []
    for v in g.vertices:
        if v.self_intersection is not None:
            out.append(v)
            continue
        total = Fraction(0)
        for nb, w in g.neighbors(v.label):
            total += g.vertex(nb).multiplicity * w
        quotient = Fraction(-total, v.multiplicity)
        if quotient.denominator != 1:
            raise GraphConsistencyError(
                f"self-intersection of {v.label} would be {rat_to_str(quotient)}, not an integer"
            )
        out.append(replace(v, self_intersection=int(quotient)))
    return DualGraph(out, list(g.edges))


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    row_sums: tuple[tuple[str, Fraction], ...]

    def violations(self):
        return [(label, s) for label, s in self.row_sums if s != 0]


def check_graph_consistency(g: DualGraph) -> ConsistencyReport:
    """Verify sum_j m_j (C_i.C_j) = 0 for every vertex of a complete graph."""
    rows = []
    for v in g.vertices:
        if v.multiplicity is None or v.self_intersection is None:
            raise GraphConsistencyError(f"vertex {v.label} is incomplete")
        total = Fraction(v.multiplicity * v.self_intersection)
        for nb, w in g.neighbors(v.label):
            total += g.vertex(nb).multiplicity * w
        rows.append((v.label, total))
    return ConsistencyReport(all(s == 0 for _, s in rows), tuple(rows))


def intersection_matrix(g: DualGraph, labels: list[str] | None = None) -> list[list[Fraction]]:
    labels = labels if labels is not None else g.labels()
    n = len(labels)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i, a in enumerate(labels):
        v = g.vertex(a)
        if v.self_intersection is None:
            raise GraphConsistencyError(f"vertex {a} has no self-intersection")
        mat[i][i] = Fraction(v.self_intersection)
        for j, b in enumerate(labels):
            if i != j:
                mat[i][j] = Fraction(g.edge_weight(a, b))
    return mat


def leading_principal_minors(mat: list[list[Fraction]]) -> list[Fraction]:
    n = len(mat)
    minors = []
    for k in range(1, n + 1):
        sub = [row[:k] for row in mat[:k]]
        minors.append(_det(sub))
    return minors


def _det(mat: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in mat]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def is_negative_definite(mat: list[list[Fraction]]) -> bool:
    """Exact test via alternating signs of the leading principal minors."""
    for k, minor in enumerate(leading_principal_minors(mat), start=1):
        if (-1) ** k * minor <= 0:
            return False
    return True


def predicted_graph(p: int, m: int) -> DualGraph:
    """Shape of the dual graph after the first modification: a chain of
    p*m - 1 vertices with the origin component attached to the middle one.

    For an even chain length there is no single middle vertex; the attachment
    then goes to vertex ceil((pm-1)/2) and the returned graph records the
    convention in its ``convention`` attribute on the JSON side (callers see
    the same rule applied deterministically).
    """
    n = p * m - 1
    if n < 1:
        raise ValueError("p*m must be at least 2")
    vertices = [Vertex("C0")] + [Vertex(f"A{i}") for i in range(1, n + 1)]
    edges = [Edge(f"A{i}", f"A{i+1}") for i in range(1, n)]
    middle = (n + 1) // 2
    edges.append(Edge("C0", f"A{middle}"))
    return DualGraph(vertices, edges)


def graphs_isomorphic(g1: DualGraph, g2: DualGraph) -> bool:
    """Unlabeled graph isomorphism by backtracking (desk-scale graphs)."""
    l1, l2 = g1.labels(), g2.labels()
    if len(l1) != len(l2):
        return False
    deg1 = sorted(g1.degree(a) for a in l1)
    deg2 = sorted(g2.degree(b) for b in l2)
    if deg1 != deg2:
        return False
    if len(l1) <= 8:
        for perm in permutations(l2):
            mapping = dict(zip(l1, perm))
            if all(
                g1.edge_weight(a, b) == g2.edge_weight(mapping[a], mapping[b])
                for i, a in enumerate(l1)
                for b in l1[i + 1 :]
            ):
                return True
        return False
    return _backtrack_iso(g1, g2, l1, l2, {}, set())


def _backtrack_iso(g1, g2, l1, l2, mapping, used):
    if len(mapping) == len(l1):
        return True
    a = l1[len(mapping)]
    for b in l2:
        if b in used or g1.degree(a) != g2.degree(b):
            continue
        if all(g1.edge_weight(a, x) == g2.edge_weight(b, y) for x, y in mapping.items()):
            mapping[a] = b
            used.add(b)
            if _backtrack_iso(g1, g2, l1, l2, mapping, used):
                return True
            del mapping[a]
            used.remove(b)
    return False
