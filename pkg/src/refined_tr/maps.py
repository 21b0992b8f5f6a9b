"""Monotone Hurwitz maps on arbitrary surfaces, by brute force.

A map is stored as a signed rotation system.  Vertex ``v`` (label v+1)
carries a cyclic list of half-edge ids in the order of its local
orientation; edge ``i`` owns half-edges ``2i`` (at a_i) and ``2i+1`` (at
b_i) and a twist bit recording whether the local orientations at its ends
disagree.  Corner ``j`` of a vertex with k half-edges lies between
positions j and j+1 (mod k); an isolated vertex has the single corner 0.

Maps are grown edge by edge.  Each new edge is attached to the current
active corners of its endpoints; afterwards the active corner at b_i is
the corner just after the edge and the one at a_i is the corner on the
other side of the ribbon.  Inside one connected component both twists are
allowed, across components only the untwisted gluing.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Mapping, Sequence

from . import ratfun as rf
from .jack import aut
from .ratfun import ONE, ZERO, Q, Rat, V, rsum

S = V("s")
ALPHA = S * S


@dataclass(frozen=True)
class RibbonMap:
    d: int
    rot: tuple[tuple[int, ...], ...]
    active: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # (a, b) with 1 <= a < b <= d
    twists: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.edges)

    def vertex_of(self, h: int) -> int:
        a, b = self.edges[h // 2]
        return (a if h % 2 == 0 else b) - 1

    def to_json(self) -> dict:
        rep = face_report(self)
        return {
            "d": self.d,
            "r": self.r,
            "edges": [list(e) for e in self.edges],
            "twists": list(self.twists),
            "rotations": [list(x) for x in self.rot],
            "active": list(self.active),
            "nu": nu(self),
            "genus": str(Fraction(rep.g2, 2)),
            "genus2": rep.g2,
            "faces": list(rep.profile),
        }


def empty_map(d: int) -> RibbonMap:
    return RibbonMap(d, tuple(() for _ in range(d)), tuple(0 for _ in range(d)), (), ())


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------


class _UF:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


def _corner_classes(m: RibbonMap) -> _UF:
    uf = _UF()
    pos = {}
    for v, rv in enumerate(m.rot):
        for j, h in enumerate(rv):
            pos[h] = (v, j)
        for j in range(max(len(rv), 1)):
            uf.find((v, j))
    for i, tw in enumerate(m.twists):
        (va, pa), (vb, pb) = pos[2 * i], pos[2 * i + 1]
        ka, kb = len(m.rot[va]), len(m.rot[vb])
        a_before, a_after = (va, (pa - 1) % ka), (va, pa)
        b_before, b_after = (vb, (pb - 1) % kb), (vb, pb)
        if tw:
            uf.union(a_before, b_before)
            uf.union(a_after, b_after)
        else:
            uf.union(a_before, b_after)
            uf.union(a_after, b_before)
    return uf


@dataclass(frozen=True)
class FaceReport:
    faces: tuple[frozenset, ...]
    degrees: tuple[int, ...]  # number of active corners, per face
    components: int
    g2: int | None  # doubled genus, for connected maps

    @property
    def profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees))


def face_report(m: RibbonMap) -> FaceReport:
    uf = _corner_classes(m)
    classes: dict = {}
    for v, rv in enumerate(m.rot):
        for j in range(max(len(rv), 1)):
            classes.setdefault(uf.find((v, j)), set()).add((v, j))
    faces = tuple(frozenset(c) for c in classes.values())
    degrees = tuple(sum(1 for v in range(m.d) if (v, m.active[v]) in f) for f in faces)
    comps = components(m)
    g2 = None
    if comps == 1:
        g2 = 2 - m.d + m.r - len(faces)
    return FaceReport(faces, degrees, comps, g2)


def components(m: RibbonMap) -> int:
    uf = _UF()
    for v in range(m.d):
        uf.find(v)
    for a, b in m.edges:
        uf.union(a - 1, b - 1)
    return len({uf.find(v) for v in range(m.d)})


def _same_component(m: RibbonMap, a: int, b: int) -> bool:
    uf = _UF()
    for x, y in m.edges:
        uf.union(x - 1, y - 1)
    return uf.find(a - 1) == uf.find(b - 1)


# ---------------------------------------------------------------------------
# insertion and removal
# ---------------------------------------------------------------------------


def insert_edge(m: RibbonMap, a: int, b: int, twist: int) -> RibbonMap:
    """Attach e_{r+1} = (a, b) at the active corners of a and b."""
    if not 1 <= a < b <= m.d:
        raise ValueError("need 1 <= a < b <= d")
    i = m.r
    rot = [list(x) for x in m.rot]
    active = list(m.active)
    for v, h, is_b in ((a - 1, 2 * i, False), (b - 1, 2 * i + 1, True)):
        rv = rot[v]
        p = m.active[v] + 1 if rv else 0
        rv.insert(p, h)
        k = len(rv)
        after, before = p % k, (p - 1) % k
        if is_b or not twist:
            active[v] = after
        else:
            active[v] = before
    return RibbonMap(m.d, tuple(tuple(x) for x in rot), tuple(active), m.edges + ((a, b),), m.twists + (twist,))


def remove_last_edge(m: RibbonMap) -> tuple[RibbonMap, tuple[int, int]]:
    """Drop e_r; returns the smaller map and the corners of it at a_r and
    b_r where the edge was attached."""
    i = m.r - 1
    rot = [list(x) for x in m.rot]
    active = list(m.active)
    corners = []
    for h in (2 * i, 2 * i + 1):
        v = m.vertex_of(h)
        rv = rot[v]
        p = rv.index(h)
        rv.pop(p)
        k = len(rv)
        c = (p - 1) % k if k else 0
        corners.append(c)
        # e_r was attached at the active corners of the smaller map
        active[v] = c
    smaller = RibbonMap(m.d, tuple(tuple(x) for x in rot), tuple(active), m.edges[:-1], m.twists[:-1])
    return smaller, (corners[0], corners[1])


def removal_trace(m: RibbonMap) -> list[tuple[str, int]]:
    """Edges removed from the last one, as (case, exponent) pairs.

    The case is "split" or "same_face" when the two attachment corners lie
    in one face of the smaller map (whether or not the edge splits it),
    "disconnecting" for a bridge between components, and "twisted" or
    "untwisted" for corners in distinct faces otherwise.  The exponent is
    the power of (alpha - 1) collected.
    """
    out = []
    cur = m
    for _ in range(m.r):
        a, b = cur.edges[-1]
        tw = cur.twists[-1]
        n_before = len(face_report(cur).faces)
        smaller, (ca, cb) = remove_last_edge(cur)
        uf = _corner_classes(smaller)
        if uf.find((a - 1, ca)) == uf.find((b - 1, cb)):
            n_after = len({uf.find((v, j)) for v, rv in enumerate(smaller.rot) for j in range(max(len(rv), 1))})
            out.append(("split", 0) if n_before == n_after + 1 else ("same_face", 1))
        elif not _same_component(smaller, a, b):
            out.append(("disconnecting", tw))
        else:
            out.append(("twisted", 1) if tw else ("untwisted", 0))
        cur = smaller
    return out


def nu(m: RibbonMap) -> int:
    """Measure of non-orientability: the number of removed edges that join
    corners of one face without splitting it, or join corners of distinct
    faces through a twist."""
    return sum(k for _, k in removal_trace(m))


def flip_vertices(m: RibbonMap, verts: Sequence[int]) -> RibbonMap:
    """Reverse the local orientation at the given vertices (labels) and
    toggle the twist of every edge with exactly one flipped end."""
    vs = {v - 1 for v in verts}
    rot = list(m.rot)
    active = list(m.active)
    for v in vs:
        k = len(rot[v])
        rot[v] = tuple(reversed(rot[v]))
        if k:
            active[v] = (k - 2 - active[v]) % k
    twists = tuple(t ^ (((a - 1) in vs) != ((b - 1) in vs)) for (a, b), t in zip(m.edges, m.twists))
    return RibbonMap(m.d, tuple(rot), tuple(active), m.edges, twists)


def is_orientable(m: RibbonMap) -> bool:
    """Whether vertex orientations can be chosen to untwist every edge."""
    sign: dict[int, int] = {}
    adj: dict[int, list] = {v: [] for v in range(m.d)}
    for (a, b), t in zip(m.edges, m.twists):
        adj[a - 1].append((b - 1, t))
        adj[b - 1].append((a - 1, t))
    for start in range(m.d):
        if start in sign:
            continue
        sign[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w, t in adj[v]:
                want = sign[v] ^ t
                if w not in sign:
                    sign[w] = want
                    stack.append(w)
                elif sign[w] != want:
                    return False
    return True


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def generate(d: int, r: int, connected: bool = True) -> Iterator[RibbonMap]:
    """All monotone Hurwitz maps with d labeled vertices and r edges."""
    if d < 1 or r < 0:
        return

    def rec(m: RibbonMap, bmin: int):
        if m.r == r:
            if not connected or components(m) == 1:
                yield m
            return
        if connected and components(m) - 1 > r - m.r:
            return
        for b in range(max(bmin, 2), d + 1):
            for a in range(1, b):
                twists = (0, 1) if _same_component(m, a, b) else (0,)
                for tw in twists:
                    yield from rec(insert_edge(m, a, b, tw), b)

    if r == 0:
        if not connected or d == 1:
            yield empty_map(d)
        return
    yield from rec(empty_map(d), 2)


def generate_from_edges(d: int, edges: Sequence[tuple[int, int]], twists: Sequence[int]) -> RibbonMap:
    """Build a map from its edge list, checking the monotone conditions."""
    m = empty_map(d)
    last = 0
    for (a, b), tw in zip(edges, twists):
        if b < last:
            raise ValueError("edge labels are not monotone in b")
        if tw and not _same_component(m, a, b):
            raise ValueError("a disconnecting edge must be untwisted")
        m = insert_edge(m, a, b, tw)
        last = b
    return m


# ---------------------------------------------------------------------------
# colorings
# ---------------------------------------------------------------------------


def colorings(m: RibbonMap, M: int, N: int) -> list[tuple[int, ...]]:
    """All (M|N)-colorings: colors 1..N may not repeat among edges sharing
    b_i, and colors are weakly increasing along edges sharing b_i."""
    bs = [b for _, b in m.edges]
    out = []
    for c in itertools.product(range(1, M + N + 1), repeat=m.r):
        ok = True
        for i in range(m.r):
            for j in range(i + 1, m.r):
                if c[i] == c[j] and c[i] <= N and not bs[i] < bs[j]:
                    ok = False
                if bs[i] == bs[j] and not c[i] <= c[j]:
                    ok = False
        if ok:
            out.append(c)
    return out


def coloring_sum(m: RibbonMap, strict: Sequence[Rat], weak: Sequence[Rat]) -> Rat:
    """Sum over colorings of u_{c(1)}...u_{c(r)}, colors 1..N carrying
    ``strict`` and N+1..N+M carrying ``weak``.

    Edges sharing b_i form a block; a block of size L contributes the
    coefficient of x^L in prod(1 + u x) / prod(1 - u x).
    """
    sizes = Counter(b for _, b in m.edges).values()
    L = max(sizes, default=0)
    gen = [ONE] + [ZERO] * L
    for u in strict:
        gen = [gen[k] + (u * gen[k - 1] if k else ZERO) for k in range(L + 1)]
    for u in weak:
        for k in range(1, L + 1):
            gen[k] = gen[k] + u * gen[k - 1]
    return prod((gen[s] for s in sizes), start=ONE)


def coloring_sum_brute(m: RibbonMap, strict: Sequence[Rat], weak: Sequence[Rat]) -> Rat:
    us = list(strict) + list(weak)
    return rsum(prod((us[ci - 1] for ci in c), start=ONE) for c in colorings(m, len(weak), len(strict)))


def klein_example_audit() -> dict:
    """Locate the d=3, r=5 Klein-bottle map with profile (2,1), b = (2,2,3,3,3),
    edge 4 joining vertices 1 and 3, and removal cases (last edge first)
    split, twisted, disconnecting, split, disconnecting.

    Colorings are counted with colors 1..N strict; one weak color gives
    one coloring, one strict color none, and (1|1) four.
    """
    want = ["split", "twisted", "disconnecting", "split", "disconnecting"]
    hits = []
    for m in generate(3, 5):
        rep = face_report(m)
        if rep.profile != (1, 2) or rep.g2 != 2 or is_orientable(m):
            continue
        if [b for _, b in m.edges] != [2, 2, 3, 3, 3] or m.edges[3] != (1, 3):
            continue
        if [c for c, _ in removal_trace(m)] != want:
            continue
        counts = (len(colorings(m, 1, 0)), len(colorings(m, 0, 1)), len(colorings(m, 1, 1)))
        if counts != (1, 0, 4):
            continue
        hits.append(m)
    nus = sorted({nu(m) for m in hits})
    return {"matches": [m.to_json() for m in hits], "nu_values": nus,
            "ok": bool(hits) and nus == [1]}


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------


def weight_data(name: str, params: Mapping[str, Rat]) -> tuple[Rat, list[Rat], list[Rat]]:
    """(t', strict u's, weak u's) with G(z) = C prod(1 + u z)/prod(1 - u z)
    and t' = C t."""
    p = {k: Rat.coerce(v) for k, v in params.items()}
    t = p["t"]
    if name == "main":
        return t * p["u1"] * p["u2"] / p["v"], [1 / p["u1"], 1 / p["u2"]], [1 / p["v"]]
    if name == "bipartite":
        return t * p["u1"] * p["u2"], [1 / p["u1"], 1 / p["u2"]], []
    if name == "monotone":
        return t / p["v"], [], [1 / p["v"]]
    if name == "mixed":
        return t * p["u1"] / p["v"], [1 / p["u1"]], [1 / p["v"]]
    raise ValueError(f"no map model for weight {name!r}")


def census(d: int, r: int) -> list[tuple[tuple[int, ...], int, int, RibbonMap]]:
    out = []
    for m in generate(d, r):
        rep = face_report(m)
        if 0 in rep.degrees:
            raise AssertionError("a face without active corners")
        out.append((rep.profile, rep.g2, nu(m), m))
    return out


_CENSUS: dict[tuple[int, int], list] = {}


def _census_cached(d: int, r: int):
    if (d, r) not in _CENSUS:
        _CENSUS[(d, r)] = census(d, r)
    return _CENSUS[(d, r)]


def map_sum(g2: int, mu: Sequence[int], name: str, params: Mapping[str, Rat]) -> Rat:
    """t'^d sum over maps of genus g2/2 and profile mu of
    (alpha - 1)^nu u_{c(1)}...u_{c(r)}, as a Laurent polynomial in s."""
    mu = tuple(sorted(mu))
    d = sum(mu)
    n = len(mu)
    r = d + n - 2 + g2
    tp, strict, weak = weight_data(name, params)
    terms = []
    for prof, mg2, k, m in _census_cached(d, r):
        if prof != mu or mg2 != g2:
            continue
        terms.append((ALPHA - 1) ** k * coloring_sum(m, strict, weak))
    return tp ** d * rsum(terms)


def fgn_from_maps(g2: int, mu: Sequence[int], name: str, params: Mapping[str, Rat]) -> Rat:
    """F_{g,n}[mu] from the map side, as a polynomial in b.

    Raises ValueError if the alpha^g-cleared sum is not polynomial in b.
    """
    mu = tuple(sorted(mu))
    d = sum(mu)
    total = map_sum(g2, mu, name, params)
    pref = Q(aut(mu) * prod(mu), factorial(d))
    # alpha^{-g} = s^{-g2}
    return rf.laurent_s_to_b(total * pref / S ** g2)


# ---------------------------------------------------------------------------
# boundaries and internal faces
# ---------------------------------------------------------------------------


def boundary_refine(g2: int, ks: Sequence[int], D: int, E: int, name: str, params: Mapping[str, Rat]) -> Rat:
    """F^D_{g,n}[k_1..k_n; eps] up to eps^E from maps with marked corners.

    Each map of genus g2/2 whose faces are marked at n active corners in
    distinct faces of degrees k_i contributes
    alpha^{-g} t'^{sum k} eps^m prod(t' p_j) (alpha-1)^nu u.../v!, summed over
    colorings, where m internal faces have degrees j <= D.
    """
    ks = tuple(ks)
    n = len(ks)
    tp, strict, weak = weight_data(name, params)
    eps = V("eps")
    terms = []
    for m_int in range(0, E + 1):
        for inner in itertools.combinations_with_replacement(range(1, D + 1), m_int):
            d = sum(ks) + sum(inner)
            r = d + n + m_int - 2 + g2
            if r < 0:
                continue
            for prof, mg2, k, mp in _census_cached(d, r):
                if mg2 != g2 or prof != tuple(sorted(ks + inner)):
                    continue
                terms.append(_marked_weight(mp, ks, inner, k, tp, strict, weak, eps))
    total = rsum(terms) / S ** g2
    return rf.laurent_s_to_b(total)


def _marked_weight(mp, ks, inner, k, tp, strict, weak, eps) -> Rat:
    rep = face_report(mp)
    # faces by their active corners
    face_of = {}
    for fi, f in enumerate(rep.faces):
        for v in range(mp.d):
            if (v, mp.active[v]) in f:
                face_of[v] = fi
    count = 0
    for corners in itertools.permutations(range(mp.d), len(ks)):
        fs = [face_of[v] for v in corners]
        if len(set(fs)) != len(fs):
            continue
        if any(rep.degrees[f] != kk for f, kk in zip(fs, ks)):
            continue
        rest = sorted(rep.degrees[f] for f in range(len(rep.faces)) if f not in fs)
        if tuple(rest) != tuple(sorted(inner)):
            continue
        count += 1
    if not count:
        return ZERO
    w = Q(count, factorial(mp.d)) * tp ** sum(ks) * (ALPHA - 1) ** k * coloring_sum(mp, strict, weak)
    w = w * eps ** len(inner)
    for j in inner:
        w = w * tp ** j * V(f"p{j}")
    return w


# ---------------------------------------------------------------------------
# symmetric-group brute force
# ---------------------------------------------------------------------------


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[i] for i in q)


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out.append(k)
    return tuple(sorted(out))


def monotone_factorizations(d: int, r: int) -> Counter:
    """Number of transitive monotone r-tuples of transpositions (a_i b_i),
    a_i < b_i, b_1 <= ... <= b_r, in S_d, by cycle type of the product."""
    out: Counter = Counter()
    ident = tuple(range(d))

    def rec(perm, k, bmin, uf_parent):
        if k == r:
            roots = set()
            for v in range(d):
                x = v
                while uf_parent[x] != x:
                    x = uf_parent[x]
                roots.add(x)
            if len(roots) == 1:
                out[cycle_type(perm)] += 1
            return
        for b in range(max(bmin, 1), d):
            for a in range(b):
                t = list(range(d))
                t[a], t[b] = b, a
                par = list(uf_parent)

                def find(x):
                    while par[x] != x:
                        x = par[x]
                    return x

                ra, rb = find(a), find(b)
                if ra != rb:
                    par[ra] = rb
                rec(_compose(perm, tuple(t)), k + 1, b, par)

    rec(ident, 0, 1, list(range(d)))
    return out


def monotone_fgn_brute(g2: int, mu: Sequence[int], params: Mapping[str, Rat]) -> Rat:
    """F_{g,n}[mu] at b = 0 for the weight 1/(v - z):
    t^d v^{-d-r} times the number of transitive monotone factorizations of
    a fixed permutation of cycle type mu into r transpositions."""
    if g2 % 2:
        return ZERO
    mu = tuple(sorted(mu))
    d = sum(mu)
    r = g2 - 2 + len(mu) + d
    if r < 0:
        return ZERO
    counts = monotone_factorizations(d, r)
    # the count for one fixed permutation is total / |conjugacy class|
    cls = Q(factorial(d), _z(mu))
    per = Rat.coerce(counts.get(mu, 0)) / cls
    t, v = Rat.coerce(params["t"]), Rat.coerce(params["v"])
    return per * t ** d / v ** (d + r)


def _z(mu: Sequence[int]) -> int:
    c = Counter(mu)
    return prod(k ** m * factorial(m) for k, m in c.items())
