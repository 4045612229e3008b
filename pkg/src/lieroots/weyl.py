"""Weyl reflections and words, Dynkin classification, and the Weyl-action table."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .report import Check, VerificationReport, load_fixture
from .rootsys import (
    EXCEPTIONAL_RANK,
    ExactVec,
    RootSystem,
    RootSystemError,
    _eval,
    build_root_system,
    cartan_matrix,
)


class DynkinError(ValueError):
    def __init__(self, msg, cartan=None):
        super().__init__(msg)
        self.cartan = cartan


def reflect(alpha: ExactVec, v: ExactVec) -> ExactVec:
    """s_α(v) = v − ⟨v, α^∨⟩ α."""
    if alpha.is_zero():
        raise RootSystemError("cannot reflect in the zero vector")
    c = 2 * v.dot(alpha) / alpha.dot(alpha)
    return v - alpha.scale(c) if c else v


@dataclass(frozen=True)
class WeylWord:
    """Product of reflections, written left to right; the rightmost acts first."""

    generators: Tuple[ExactVec, ...] = ()

    def __call__(self, v: ExactVec) -> ExactVec:
        for g in reversed(self.generators):
            v = reflect(g, v)
        return v

    def __len__(self):
        return len(self.generators)


def apply_weyl_word(w: WeylWord, base: Sequence[ExactVec], rs: Optional[RootSystem] = None) -> List[ExactVec]:
    if rs is not None:
        for g in w.generators:
            if not rs.is_root(g):
                raise RootSystemError(f"generator {g} is not a root")
    return [w(b) for b in base]


def is_simple_system(rs: RootSystem, candidate: Sequence[ExactVec]) -> bool:
    """Every root is a uniformly signed integer combination of ``candidate``."""
    candidate = list(candidate)
    if len(candidate) != rs.rank or len(set(candidate)) != rs.rank:
        return False
    if not all(rs.is_root(c) for c in candidate):
        return False
    try:
        ginv = rs._gram_inverse(candidate)
    except ValueError:
        return False
    from . import linalg

    for r in rs.roots:
        coeffs = linalg.matvec(ginv, [r.dot(b) for b in candidate])
        if any(c.denominator != 1 for c in coeffs):
            return False
        if any(c > 0 for c in coeffs) and any(c < 0 for c in coeffs):
            return False
        # the combination must reproduce r (it lies in the span of the roots)
    return True


# --------------------------------------------------------------------------
# Dynkin diagrams

Edge = Tuple[int, int, int, int]  # (i, j, a_ij, a_ji) with i < j, 1-based


def diagram_edges(cartan: Sequence[Sequence[int]]) -> FrozenSet[Edge]:
    n = len(cartan)
    return frozenset(
        (i + 1, j + 1, cartan[i][j], cartan[j][i])
        for i in range(n) for j in range(i + 1, n) if cartan[i][j] or cartan[j][i]
    )


def reference_edges(family: str, rank: int, fixture: Optional[dict] = None) -> FrozenSet[Edge]:
    """Edges of the reference diagram for (family, rank), read from the fixture."""
    fixture = fixture if fixture is not None else load_fixture("diagrams.json")
    entry = fixture[family]
    out = set()
    for e in entry["edges"]:
        if "for" in e:
            var = e["for"]
            lo, hi = _eval(e["from"], {"l": rank}), _eval(e["to"], {"l": rank})
            envs = [{"l": rank, var: x} for x in range(lo, hi + 1)]
        else:
            envs = [{"l": rank}]
        for env in envs:
            u, v = _eval(e["u"], env), _eval(e["v"], env)
            bond = e["bond"]
            # a_ij = <α_j, α_i^∨>: −bond when α_i is the short end, −1 otherwise
            a_uv = -bond if e.get("short") == "u" else -1
            a_vu = -bond if e.get("short") == "v" else -1
            if u > v:
                u, v, a_uv, a_vu = v, u, a_vu, a_uv
            out.add((u, v, a_uv, a_vu))
    return frozenset(out)


def end_node(family: str, rank: int, side: str = "left", fixture: Optional[dict] = None) -> int:
    fixture = fixture if fixture is not None else load_fixture("diagrams.json")
    return _eval(fixture[family][side], {"l": rank})


def _graph(cartan) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(cartan)))
    for i, row in enumerate(cartan):
        for j, a in enumerate(row):
            if i != j and a:
                g.add_edge(i, j, a=a)
    return g


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int
    node_matching: Tuple[int, ...]  # candidate index -> reference index (0-based)

    @property
    def name(self) -> str:
        return self.family if self.family in EXCEPTIONAL_RANK else f"{self.family}{self.rank}"


_ORDER = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")


@lru_cache(maxsize=None)
def _reference_graph(family: str, rank: int) -> nx.DiGraph:
    return _graph(cartan_matrix(build_root_system(family, rank).simple))


def _candidates(rank: int):
    for f in _ORDER:
        if f in EXCEPTIONAL_RANK:
            if EXCEPTIONAL_RANK[f] == rank:
                yield f
        elif rank >= {"A": 1, "B": 2, "C": 2, "D": 3}[f]:
            yield f


def classify_dynkin(candidate: Sequence[ExactVec], rs: Optional[RootSystem] = None) -> DynkinType:
    """Identify the irreducible type of a simple system via its Cartan matrix.

    When ``rs`` is given, doubled roots (2α ∈ rs for some α in the candidate)
    mark the non-reduced type BC, and ties between isomorphic diagrams
    (B2/C2, A3/D3) are broken in favour of ``rs.family``.
    """
    cm = cartan_matrix(candidate)
    n = len(cm)
    g = _graph(cm)
    if n == 0 or not nx.is_weakly_connected(g):
        raise DynkinError("diagram is empty or reducible", cm)
    bc = rs is not None and any(rs.is_root(a.scale(2)) for a in candidate)
    matches = []
    for f in _candidates(n):
        gm = DiGraphMatcher(g, _reference_graph(f, n), edge_match=lambda x, y: x["a"] == y["a"])
        if gm.is_isomorphic():
            m = gm.mapping
            matches.append(DynkinType(f, n, tuple(m[i] for i in range(n))))
    if not matches:
        raise DynkinError("Cartan matrix matches no irreducible type", cm)
    if bc:
        m = next((t for t in matches if t.family == "B"), None)
        if m is None:
            raise DynkinError("doubled roots present but diagram is not of type B", cm)
        return DynkinType("BC", n, m.node_matching)
    if rs is not None:
        for t in matches:
            if t.family == rs.family:
                return t
    return matches[0]


def match_to_reference(family: str, rank: int, candidate_cartan, fixture: Optional[dict] = None) -> List[Dict[int, int]]:
    """All isomorphisms from a Cartan matrix onto the fixture diagram (0-based)."""
    ref = nx.DiGraph()
    ref.add_nodes_from(range(rank))
    for u, v, a_uv, a_vu in reference_edges(family, rank, fixture):
        ref.add_edge(u - 1, v - 1, a=a_uv)
        ref.add_edge(v - 1, u - 1, a=a_vu)
    gm = DiGraphMatcher(_graph(candidate_cartan), ref, edge_match=lambda x, y: x["a"] == y["a"])
    return [dict(m) for m in gm.isomorphisms_iter()]


def adjacency(cartan) -> Dict[int, List[int]]:
    n = len(cartan)
    return {i: [j for j in range(n) if j != i and cartan[i][j]] for i in range(n)}


def delta_order(cartan, start: int) -> List[int]:
    """Index simple roots δ₁, δ₂, … from the end node ``start`` (0-based).

    Consecutive δ's are adjacent, except at a trivalent node δ_k where δ_{k+1}
    is the leaf attached to δ_k and δ_{k+2} continues the diagram.
    """
    adj = adjacency(cartan)
    order = [start]
    seen = {start}
    cur = start
    while len(order) < len(cartan):
        nxt = [j for j in adj[cur] if j not in seen]
        if not nxt:
            break
        if len(nxt) == 1:
            order.append(nxt[0])
            seen.add(nxt[0])
            cur = nxt[0]
            continue
        nxt.sort(key=lambda j: (len(adj[j]), j))  # leaf first
        leaf, cont = nxt[0], nxt[1]
        order += [leaf, cont]
        seen |= {leaf, cont}
        cur = cont
    if len(order) != len(cartan):
        raise DynkinError("diagram is not a tree with a single branch point", cartan)
    return order


def delta_base(rs: RootSystem, side: str = "left") -> List[ExactVec]:
    """Default simple roots reordered into the δ-indexing from the given end."""
    if rs.family == "F4":
        # δ_i = α_{5−i}: δ₁ is the right-most node
        return list(reversed(rs.simple))
    start = end_node(rs.family, rs.rank, side) - 1
    return [rs.simple[i] for i in delta_order(cartan_matrix(rs.simple), start)]


def combo(base: Sequence[ExactVec], coeffs: Sequence[int]) -> ExactVec:
    v = ExactVec.zero(base[0].dim)
    for c, b in zip(coeffs, base):
        if c:
            v = v + b.scale(c)
    return v


# --------------------------------------------------------------------------
# simple reflections as root permutations


@lru_cache(maxsize=None)
def simple_reflection_perms(family: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    rs = build_root_system(family, rank)
    return tuple(
        tuple(rs.index(reflect(a, r)) for r in rs.roots) for a in rs.simple
    )


# --------------------------------------------------------------------------
# Table replay


def _closure_of(rs: RootSystem, vecs) -> FrozenSet[int]:
    from .subalg import closure_indices

    return frozenset(closure_indices(rs, [rs.index(v) for v in vecs]))


def verify_weyl_table(max_rank: int = 8, fixture: Optional[dict] = None) -> VerificationReport:
    fixture = fixture if fixture is not None else load_fixture("weyl_table.json")
    report = VerificationReport("weyl")
    for row in fixture["rows"]:
        for inst in row["instances"]:
            lo, hi = inst["ranks"]
            for rank in range(lo, min(hi, max_rank) + 1):
                rs = build_root_system(inst["family"], rank)
                report.add(_check_weyl_row(rs, row, inst["side"]))
    return report


def _check_weyl_row(rs: RootSystem, row: dict, side: str) -> Check:
    cid = f"weyl.{row['id']}.{rs.name}.{side}"
    desc = f"{row['id']} acting on {rs.name} with delta_1 at the {side} end"
    delta = delta_base(rs, side)
    w = WeylWord(tuple(combo(delta, c) for c in row["word"]))
    problems = {}
    try:
        hat = apply_weyl_word(w, delta, rs)
    except RootSystemError as exc:
        return Check(cid, desc, "fail", {"error": str(exc)})
    for k in range(1, rs.rank + 1):
        key = str(k)
        if key in row["relations"]:
            want = combo(delta, row["relations"][key])
        elif k >= row["fixed_from"]:
            want = delta[k - 1]
        else:
            continue
        if hat[k - 1] != want:
            problems[f"hat_delta_{k}"] = {
                "claimed": str(want), "computed": str(hat[k - 1]),
                "computed_coeffs": [str(c) for c in rs.coefficients(hat[k - 1], delta)],
            }
    star = combo(delta, row["delta_star"])
    if hat[0] not in (star, -star):
        problems["delta_star"] = {"delta_star": str(star), "hat_delta_1": str(hat[0])}
    if not is_simple_system(rs, hat):
        problems["simple_system"] = False
    else:
        t0, t1 = classify_dynkin(delta, rs), classify_dynkin(hat, rs)
        if (t0.family, t0.rank) != (t1.family, t1.rank) or cartan_matrix(delta) != cartan_matrix(hat):
            problems["dynkin_type"] = {"before": t0.name, "after": t1.name}
    sub = _closure_of(rs, [s * v for v in delta[:3] for s in (1, -1)])
    hsub = _closure_of(rs, [s * v for v in hat[:3] for s in (1, -1)])
    if sub != hsub:
        problems["L3_roots"] = {"before": len(sub), "after": len(hsub)}
    witness = problems if problems else {"hat": [str(h) for h in hat]}
    return Check(cid, desc, "fail" if problems else "pass", witness)


# --------------------------------------------------------------------------
# rendering


def _bond_symbol(a_uv: int, a_vu: int) -> str:
    m = max(abs(a_uv), abs(a_vu))
    if m == 1:
        return "---"
    line = "=" * 2 if m == 2 else "≡" * 2
    return (line + ">") if abs(a_vu) > abs(a_uv) else ("<" + line)


def render_ascii(rs: RootSystem) -> str:
    """Left-to-right chain, with branch nodes drawn below their attachment."""
    cm = cartan_matrix(rs.simple)
    n = len(cm)
    edges = sorted(diagram_edges(cm))
    adj = adjacency(cm)
    if n == 1:
        return "o\n1"
    # main path: longest path from node 0 through the tree
    def far(src):
        dist = {src: [src]}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + [y]
                    q.append(y)
        return max(dist.values(), key=lambda p: (len(p), [-i for i in p]))
    path = far(0) if len(adj[0]) == 1 else far(far(0)[-1])
    if path[0] > path[-1]:
        path.reverse()
    pos = {v: i for i, v in enumerate(path)}
    top, labels = "", ""
    for i, v in enumerate(path):
        cell = f"{v + 1}"
        top += "o"
        labels += cell.ljust(4)
        if i + 1 < len(path):
            u = path[i + 1]
            e = next(e for e in edges if {e[0] - 1, e[1] - 1} == {v, u})
            a_vu, a_uv = (e[2], e[3]) if e[0] - 1 == v else (e[3], e[2])
            top += _bond_symbol(a_vu, a_uv)
    lines = [top, labels.rstrip()]
    for v in range(n):
        if v not in pos:
            anchor = next(u for u in adj[v] if u in pos)
            col = 4 * pos[anchor]
            lines.append(" " * col + "|")
            lines.append(" " * col + "o " + str(v + 1))
    return "\n".join(lines)


def render_dot(rs: RootSystem) -> str:
    cm = cartan_matrix(rs.simple)
    lines = [f'graph "{rs.name}" {{', "  rankdir=LR;"]
    for i, a in enumerate(rs.simple):
        lines.append(f'  n{i + 1} [label="{i + 1}", length2="{a.dot(a)}"];')
    for u, v, a_uv, a_vu in sorted(diagram_edges(cm)):
        m = max(abs(a_uv), abs(a_vu))
        attrs = [f"multiplicity={m}"]
        if m > 1:
            # arrow points at the short root
            short = v if abs(a_vu) > abs(a_uv) else u
            attrs.append(f'arrow="n{short}"')
        lines.append(f"  n{u} -- n{v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines)
