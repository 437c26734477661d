"""Coloured game states, targets, monochromatic-copy detection, canonical keys.

States are immutable values: a vertex count, a colour count ``q`` and an
edge list in insertion order.  Edge colours are ``1..q``; colour ``0`` marks
the single edge that may still be waiting for Painter.  Canonical keys are
exact (computed by partition refinement plus a branch-and-bound labelling
search with automorphism pruning), so two states share a key if and only if
they are isomorphic as coloured graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

UNCOLORED = 0

__all__ = [
    "UNCOLORED",
    "GraphError",
    "SelfLoopError",
    "VertexRangeError",
    "DuplicateEdgeError",
    "PendingEdgeExistsError",
    "NoPendingEdgeError",
    "ColorRangeError",
    "PendingEdgeError",
    "TargetError",
    "TargetSpec",
    "ColoredGraphState",
    "CanonicalForm",
    "canonical_form",
    "canonical_key",
    "contains_mono_copy",
    "mono_copy_with_edge",
    "pair_orbits",
    "pair_orbit_partition",
    "strip_isolated",
]


class GraphError(ValueError):
    """Base class for state-manipulation errors."""


class SelfLoopError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class PendingEdgeExistsError(GraphError):
    pass


class NoPendingEdgeError(GraphError):
    pass


class ColorRangeError(GraphError):
    pass


class PendingEdgeError(GraphError):
    """Raised when an operation requires a fully coloured state."""


class TargetError(ValueError):
    pass


# ======================================================================
# Target graphs
# ======================================================================

_MAX_TARGET_VERTICES = 10  # solver feasibility guard for arbitrary targets


@dataclass(frozen=True)
class TargetSpec:
    """A target graph Builder tries to force monochromatically.

    ``kind`` is one of ``clique`` (K_t), ``path`` (P_n, n vertices),
    ``biclique`` (K_{t,t}) or ``arbitrary``.  ``q`` is the number of Painter
    colours.  All targets are colour-agnostic: a copy in any single colour
    wins.
    """

    kind: str
    q: int = 2
    t: int | None = None
    n: int | None = None
    edge_list: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self) -> None:
        if self.q < 2:
            raise TargetError("need at least two colours, got q=%r" % (self.q,))
        if self.kind == "clique":
            if self.t is None or self.t < 2:
                raise TargetError("clique target needs t >= 2")
        elif self.kind == "path":
            if self.n is None or self.n < 2:
                raise TargetError("path target needs n >= 2 vertices")
        elif self.kind == "biclique":
            if self.t is None or self.t < 1:
                raise TargetError("biclique target needs t >= 1")
        elif self.kind == "arbitrary":
            if not self.edge_list:
                raise TargetError("arbitrary target needs a nonempty edge list")
        else:
            raise TargetError("unknown target kind %r" % (self.kind,))

    # -- constructors ---------------------------------------------------

    @staticmethod
    def clique(t: int, q: int = 2) -> "TargetSpec":
        return TargetSpec(kind="clique", q=q, t=t)

    @staticmethod
    def path(n: int, q: int = 2) -> "TargetSpec":
        return TargetSpec(kind="path", q=q, n=n)

    @staticmethod
    def biclique(t: int, q: int = 2) -> "TargetSpec":
        return TargetSpec(kind="biclique", q=q, t=t)

    @staticmethod
    def arbitrary(edges: Iterable[tuple[int, int]], q: int = 2,
                  unchecked: bool = False) -> "TargetSpec":
        norm = []
        for u, v in edges:
            if u == v:
                raise TargetError("self loop in target")
            norm.append((min(u, v), max(u, v)))
        spec = TargetSpec(kind="arbitrary", q=q, edge_list=tuple(sorted(set(norm))))
        if not unchecked:
            if spec.vertex_count > _MAX_TARGET_VERTICES:
                raise TargetError(
                    "arbitrary target has %d vertices; max %d (pass unchecked=True to bypass)"
                    % (spec.vertex_count, _MAX_TARGET_VERTICES))
            if not spec.is_connected():
                raise TargetError("arbitrary target must be connected")
        return spec

    # -- structure ------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        if self.kind == "clique":
            return self.t  # type: ignore[return-value]
        if self.kind == "path":
            return self.n  # type: ignore[return-value]
        if self.kind == "biclique":
            return 2 * self.t  # type: ignore[operator]
        verts = {u for u, _ in self.edge_list} | {v for _, v in self.edge_list}
        return max(verts) + 1

    def edges(self) -> tuple[tuple[int, int], ...]:
        if self.kind == "clique":
            return tuple(combinations(range(self.t), 2))  # type: ignore[arg-type]
        if self.kind == "path":
            return tuple((i, i + 1) for i in range(self.n - 1))  # type: ignore[operator]
        if self.kind == "biclique":
            t = self.t
            return tuple((i, t + j) for i in range(t) for j in range(t))  # type: ignore[operator]
        return self.edge_list  # type: ignore[return-value]

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges():
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_connected(self) -> bool:
        adj = self.adjacency()
        n = self.vertex_count
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def describe(self) -> str:
        if self.kind == "clique":
            return "K%d" % self.t
        if self.kind == "path":
            return "P%d" % self.n
        if self.kind == "biclique":
            return "K%d,%d" % (self.t, self.t)
        return "G(v=%d,e=%d)" % (self.vertex_count, self.edge_count)

    # -- wire format ------------------------------------------------------

    def to_json_dict(self) -> dict:
        d: dict = {"kind": self.kind, "q": self.q}
        if self.kind in ("clique", "biclique"):
            d["t"] = self.t
        elif self.kind == "path":
            d["n"] = self.n
        else:
            d["edges"] = [list(e) for e in self.edge_list]  # type: ignore[union-attr]
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "TargetSpec":
        kind = d.get("kind")
        q = int(d.get("q", 2))
        if kind == "clique":
            return TargetSpec.clique(int(d["t"]), q)
        if kind == "path":
            return TargetSpec.path(int(d["n"]), q)
        if kind == "biclique":
            return TargetSpec.biclique(int(d["t"]), q)
        if kind == "arbitrary":
            return TargetSpec.arbitrary([tuple(e) for e in d["edges"]], q)
        raise TargetError("unknown target kind %r" % (kind,))


# ======================================================================
# Coloured game state
# ======================================================================


@dataclass(frozen=True)
class ColoredGraphState:
    """Immutable coloured graph; at most one edge may be uncoloured."""

    vertex_count: int
    q: int
    edges: tuple[tuple[int, int, int], ...] = ()

    @staticmethod
    def empty(q: int = 2, vertex_count: int = 0) -> "ColoredGraphState":
        if q < 2:
            raise ColorRangeError("need q >= 2")
        return ColoredGraphState(vertex_count=vertex_count, q=q)

    # -- queries ----------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def pending_edge(self) -> tuple[int, int] | None:
        if self.edges and self.edges[-1][2] == UNCOLORED:
            u, v, _ = self.edges[-1]
            return (u, v)
        return None

    def edge_color_map(self) -> dict[tuple[int, int], int]:
        return {(u, v): c for u, v, c in self.edges}

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return any((a, b) == (u, v) for a, b, _ in self.edges)

    def color_adjacency(self, color: int) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v, c in self.edges:
            if c == color:
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    # -- transitions --------------------------------------------------------

    def add_vertices(self, k: int = 1) -> "ColoredGraphState":
        if k < 0:
            raise VertexRangeError("cannot remove vertices")
        return ColoredGraphState(self.vertex_count + k, self.q, self.edges)

    def add_edge(self, u: int, v: int) -> "ColoredGraphState":
        """Draw (u, v) as the pending edge.  Endpoints must already exist."""
        if u == v:
            raise SelfLoopError("self loop (%d, %d)" % (u, v))
        if u > v:
            u, v = v, u
        if not (0 <= u and v < self.vertex_count):
            raise VertexRangeError(
                "edge (%d, %d) outside vertex range 0..%d" % (u, v, self.vertex_count - 1))
        if self.pending_edge is not None:
            raise PendingEdgeExistsError("previous edge still uncoloured")
        if self.has_edge(u, v):
            raise DuplicateEdgeError("edge (%d, %d) already drawn" % (u, v))
        return ColoredGraphState(self.vertex_count, self.q,
                                 self.edges + ((u, v, UNCOLORED),))

    def color_pending(self, color: int) -> "ColoredGraphState":
        if self.pending_edge is None:
            raise NoPendingEdgeError("no pending edge to colour")
        if not (1 <= color <= self.q):
            raise ColorRangeError("colour %r outside 1..%d" % (color, self.q))
        u, v, _ = self.edges[-1]
        return ColoredGraphState(self.vertex_count, self.q,
                                 self.edges[:-1] + ((u, v, color),))

    # -- wire format ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"n": self.vertex_count, "q": self.q,
                "edges": [[u, v, c] for u, v, c in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(d: dict) -> "ColoredGraphState":
        state = ColoredGraphState.empty(int(d["q"]), int(d["n"]))
        for e in d["edges"]:
            u, v, c = int(e[0]), int(e[1]), int(e[2])
            state = state.add_edge(u, v)
            if c != UNCOLORED:
                state = state.color_pending(c)
        return state

    @staticmethod
    def from_json(text: str) -> "ColoredGraphState":
        return ColoredGraphState.from_json_dict(json.loads(text))


def strip_isolated(state: ColoredGraphState) -> ColoredGraphState:
    """Drop vertices with no incident edge, keeping relative order."""
    used = sorted({u for u, _, _ in state.edges} | {v for _, v, _ in state.edges})
    remap = {old: new for new, old in enumerate(used)}
    edges = tuple((remap[u], remap[v], c) for u, v, c in state.edges)
    return ColoredGraphState(len(used), state.q, edges)


# ======================================================================
# Monochromatic copy detection
# ======================================================================


def _embed_order(target: TargetSpec) -> list[int]:
    """Order target vertices so each one after the first touches a prior one."""
    adj = target.adjacency()
    n = target.vertex_count
    start = max(range(n), key=lambda v: len(adj[v]))
    order = [start]
    placed = {start}
    while len(order) < n:
        best, best_links = None, -1
        for v in range(n):
            if v in placed:
                continue
            links = len(adj[v] & placed)
            if links > best_links or (links == best_links and (best is None or v < best)):
                best, best_links = v, links
        order.append(best)  # type: ignore[arg-type]
        placed.add(best)  # type: ignore[arg-type]
    return order


def _extend_embedding(order: Sequence[int], tadj: Sequence[set[int]],
                      sadj: Sequence[set[int]], mapping: dict[int, int],
                      used: set[int]) -> dict[int, int] | None:
    """Backtracking completion of a partial target -> state embedding."""
    if len(mapping) == len(order):
        return dict(mapping)
    pos = len(mapping)
    # order is arranged so this works positionally only when mapping follows
    # the order; seeded mappings re-derive the next unmapped vertex instead.
    nxt = None
    for v in order:
        if v not in mapping:
            nxt = v
            break
    assert nxt is not None
    need = len(tadj[nxt])
    anchors = [mapping[w] for w in tadj[nxt] if w in mapping]
    if anchors:
        cands = set(sadj[anchors[0]])
        for a in anchors[1:]:
            cands &= sadj[a]
    else:
        cands = {i for i in range(len(sadj)) if sadj[i]} or set(range(len(sadj)))
    for cand in sorted(cands):
        if cand in used or len(sadj[cand]) < need:
            continue
        mapping[nxt] = cand
        used.add(cand)
        got = _extend_embedding(order, tadj, sadj, mapping, used)
        if got is not None:
            return got
        del mapping[nxt]
        used.discard(cand)
    return None


def contains_mono_copy(state: ColoredGraphState, target: TargetSpec
                       ) -> tuple[int, dict[int, int]] | None:
    """Exhaustive search for a one-coloured copy of ``target`` in ``state``.

    Returns ``(colour, mapping)`` where mapping sends target vertices to
    state vertices, or ``None``.  The pending edge (if any) never counts.
    """
    if target.vertex_count > state.vertex_count:
        return None
    order = _embed_order(target)
    tadj = target.adjacency()
    for color in range(1, state.q + 1):
        sadj = state.color_adjacency(color)
        if sum(len(s) for s in sadj) // 2 < target.edge_count:
            continue
        got = _extend_embedding(order, tadj, sadj, {}, set())
        if got is not None:
            return (color, got)
    return None


def mono_copy_with_edge(state: ColoredGraphState, target: TargetSpec,
                        u: int, v: int, color: int
                        ) -> tuple[int, dict[int, int]] | None:
    """Like :func:`contains_mono_copy` but the copy must use edge (u, v).

    Intended for incremental checks right after (u, v) received ``color``:
    if no copy existed before the edge, any copy now must pass through it.
    """
    if target.vertex_count > state.vertex_count:
        return None
    order = _embed_order(target)
    tadj = target.adjacency()
    sadj = state.color_adjacency(color)
    if v not in sadj[u]:
        return None
    seen_keyed: set[tuple[int, int]] = set()
    for a, b in target.edges():
        for ta, tb in ((a, b), (b, a)):
            if (ta, tb) in seen_keyed:
                continue
            seen_keyed.add((ta, tb))
            if len(tadj[ta]) > len(sadj[u]) or len(tadj[tb]) > len(sadj[v]):
                continue
            got = _extend_embedding(order, tadj, sadj, {ta: u, tb: v}, {u, v})
            if got is not None:
                return (color, got)
    return None


# ======================================================================
# Canonical form
# ======================================================================


@dataclass(frozen=True)
class CanonicalForm:
    """Exact canonical labelling of a coloured state.

    ``key`` is the canonical encoding (bytes).  ``labeling[v]`` is the
    canonical position of vertex ``v``.  ``color_perm[c-1]`` is the colour
    that original colour ``c`` was renamed to in the key (identity unless
    colour-symmetric mode picked a better permutation).  ``orbits[v]`` is a
    representative id for the automorphism orbit of ``v`` (orbits may be
    split finer than the true ones, never coarser).
    """

    key: bytes
    labeling: tuple[int, ...]
    color_perm: tuple[int, ...]
    orbits: tuple[int, ...]


def _refine(n: int, adj: list[list[tuple[int, int]]], codes: list[int]) -> list[int]:
    ncls = len(set(codes))
    while True:
        sigs = [
            (codes[vtx], tuple(sorted((c, codes[u]) for c, u in adj[vtx])))
            for vtx in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        k = len(rank)
        if k == ncls:
            return new
        codes, ncls = new, k


class _CanonSearch:
    """Branch-and-bound canonical labelling with automorphism pruning."""

    def __init__(self, n: int, adj: list[list[tuple[int, int]]],
                 colors: dict[tuple[int, int], int], attrs: list[int]):
        self.n = n
        self.adj = adj
        self.colors = colors
        self.attrs = attrs
        self.best_enc: bytes | None = None
        self.best_lab: list[int] | None = None
        self.first_enc: bytes | None = None
        self.first_lab: list[int] | None = None
        self.gens: list[tuple[int, ...]] = []
        self.parent = list(range(n))

    # union-find over vertices, merged by discovered automorphisms
    def _find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def _union(self, x: int, y: int) -> None:
        rx, ry = self._find(x), self._find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def _record_auto(self, lab1: list[int], lab2: list[int]) -> None:
        inv2 = [0] * self.n
        for vtx, pos in enumerate(lab2):
            inv2[pos] = vtx
        sigma = tuple(inv2[lab1[vtx]] for vtx in range(self.n))
        if sigma == tuple(range(self.n)):
            return
        self.gens.append(sigma)
        for vtx in range(self.n):
            self._union(vtx, sigma[vtx])

    def _encode(self, lab: list[int]) -> bytes:
        n = self.n
        inv = [0] * n
        for vtx, pos in enumerate(lab):
            inv[pos] = vtx
        out = bytearray([n & 0xFF])
        out.extend(self.attrs[inv[i]] & 0xFF for i in range(n))
        colors = self.colors
        for i in range(n):
            vi = inv[i]
            for j in range(i + 1, n):
                vj = inv[j]
                key = (vi, vj) if vi < vj else (vj, vi)
                out.append(colors.get(key, 0))
        return bytes(out)

    def _stabilizer_orbits(self, path: list[int]) -> list[int]:
        par = list(range(self.n))

        def find(x: int) -> int:
            while par[x] != x:
                par[x] = par[par[x]]
                x = par[x]
            return x

        pathset = set(path)
        for g in self.gens:
            if all(g[p] == p for p in pathset):
                for vtx in range(self.n):
                    a, b = find(vtx), find(g[vtx])
                    if a != b:
                        par[max(a, b)] = min(a, b)
        return [find(vtx) for vtx in range(self.n)]

    def run(self, codes: list[int]) -> None:
        self._rec(codes, [])

    def _rec(self, codes: list[int], path: list[int]) -> None:
        codes = _refine(self.n, self.adj, codes)
        cells: dict[int, list[int]] = {}
        for vtx, c in enumerate(codes):
            cells.setdefault(c, []).append(vtx)
        target_cell = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target_cell = cells[c]
                break
        if target_cell is None:
            lab = codes
            enc = self._encode(lab)
            if self.first_enc is None:
                self.first_enc, self.first_lab = enc, list(lab)
            elif enc == self.first_enc and lab != self.first_lab:
                self._record_auto(lab, self.first_lab)  # type: ignore[arg-type]
            if self.best_enc is None or enc < self.best_enc:
                self.best_enc, self.best_lab = enc, list(lab)
            elif enc == self.best_enc and lab != self.best_lab:
                self._record_auto(lab, self.best_lab)  # type: ignore[arg-type]
            return
        tried: list[int] = []
        for vtx in target_cell:
            if tried:
                orb = self._stabilizer_orbits(path)
                if any(orb[vtx] == orb[u] for u in tried):
                    continue
            child = [c * 2 for c in codes]
            child[vtx] -= 1
            path.append(vtx)
            self._rec(child, path)
            path.pop()
            tried.append(vtx)


_canon_cache: dict[tuple, CanonicalForm] = {}
_CANON_CACHE_MAX = 400_000


def _canon_single(n: int, q: int, edges: tuple[tuple[int, int, int], ...],
                  attrs: tuple[int, ...]) -> tuple[bytes, list[int], list[tuple[int, ...]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    colors: dict[tuple[int, int], int] = {}
    for u, v, c in edges:
        adj[u].append((c, v))
        adj[v].append((c, u))
        colors[(u, v) if u < v else (v, u)] = c
    rank = {a: i for i, a in enumerate(sorted(set(attrs)))}
    base = [rank[a] for a in attrs]
    search = _CanonSearch(n, adj, colors, list(attrs))
    search.run(base)
    assert search.best_enc is not None and search.best_lab is not None
    return search.best_enc, search.best_lab, search.gens


def canonical_form(state: ColoredGraphState, color_symmetric: bool = False,
                   vertex_attrs: Sequence[int] | None = None,
                   allow_pending: bool = False) -> CanonicalForm:
    """Canonical labelling of ``state``; see :class:`CanonicalForm`.

    With ``color_symmetric`` the key is additionally minimised over global
    colour renamings, so e.g. an all-red and an all-blue triangle coincide.
    A pending edge is rejected unless ``allow_pending`` (it is then treated
    as carrying its own fixed colour, never renamed).
    """
    pending = state.pending_edge
    if pending is not None and not allow_pending:
        raise PendingEdgeError("state has an uncoloured edge")
    n, q = state.vertex_count, state.q
    if vertex_attrs is None:
        attrs = (0,) * n
    else:
        if len(vertex_attrs) != n:
            raise GraphError("vertex_attrs length mismatch")
        attrs = tuple(vertex_attrs)
    pend_color = q + 1
    edges = tuple((u, v, c if c != UNCOLORED else pend_color)
                  for u, v, c in state.edges)
    cache_key = (n, q, frozenset(edges), attrs, color_symmetric)
    hit = _canon_cache.get(cache_key)
    if hit is not None:
        return hit

    best: tuple[bytes, list[int], list[tuple[int, ...]], tuple[int, ...]] | None = None
    if color_symmetric and q >= 2:
        perms: Iterator[tuple[int, ...]] = permutations(range(1, q + 1))
    else:
        perms = iter([tuple(range(1, q + 1))])
    for perm in perms:
        # perm[c-1] is the new name of colour c; pending colour is fixed
        remap = {c: perm[c - 1] for c in range(1, q + 1)}
        remap[pend_color] = pend_color
        redges = tuple((u, v, remap[c]) for u, v, c in edges)
        enc, lab, gens = _canon_single(n, q, redges, attrs)
        if best is None or enc < best[0]:
            best = (enc, lab, gens, perm)
    assert best is not None
    enc, lab, gens, perm = best
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for vtx in range(n):
            a, b = find(vtx), find(g[vtx])
            if a != b:
                parent[max(a, b)] = min(a, b)
    form = CanonicalForm(key=enc, labeling=tuple(lab), color_perm=perm,
                         orbits=tuple(find(v) for v in range(n)))
    if len(_canon_cache) >= _CANON_CACHE_MAX:
        _canon_cache.clear()
    _canon_cache[cache_key] = form
    return form


def canonical_key(state: ColoredGraphState, color_symmetric: bool = False) -> bytes:
    """Relabelling-invariant exact key; errors if an edge is uncoloured."""
    return canonical_form(state, color_symmetric=color_symmetric).key


# ======================================================================
# Builder move orbits
# ======================================================================


def _candidate_moves(state: ColoredGraphState) -> list[tuple[int, int]]:
    """All Builder moves up to fresh-vertex renaming.

    Pairs among existing vertices that are not yet edges, one pair
    (u, fresh) per existing vertex u, and a single fresh-fresh pair.
    Fresh vertices use indices ``n`` and ``n + 1``.
    """
    n = state.vertex_count
    present = {(u, v) for u, v, _ in state.edges}
    moves = [(u, v) for u, v in combinations(range(n), 2) if (u, v) not in present]
    moves.extend((u, n) for u in range(n))
    moves.append((n, n + 1))
    return moves


def pair_orbit_partition(state: ColoredGraphState, color_symmetric: bool = False
                         ) -> list[tuple[tuple[int, int], int, bytes]]:
    """Group Builder moves by the canonical key of the resulting state.

    Returns one ``(representative_pair, orbit_size, key)`` triple per class,
    ordered by first appearance.  Vertex indices >= ``state.vertex_count``
    denote fresh vertices.
    """
    if state.pending_edge is not None:
        raise PendingEdgeExistsError("cannot enumerate moves with an edge pending")
    groups: dict[bytes, list[tuple[int, int]]] = {}
    order: list[bytes] = []
    for u, v in _candidate_moves(state):
        grown = state.add_vertices(max(u, v) - state.vertex_count + 1) \
            if max(u, v) >= state.vertex_count else state
        child = grown.add_edge(u, v)
        key = canonical_form(child, color_symmetric=color_symmetric,
                             allow_pending=True).key
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append((u, v))
    return [(groups[k][0], len(groups[k]), k) for k in order]


def pair_orbits(state: ColoredGraphState, color_symmetric: bool = False
                ) -> list[tuple[int, int]]:
    """Representative Builder moves, one per isomorphism class of results."""
    return [rep for rep, _, _ in pair_orbit_partition(state, color_symmetric)]
