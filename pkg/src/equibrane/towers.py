"""Abelian towers of covers over a marked base surface.

A :class:`MonodromyCover` assigns an element of an elementary abelian
2-group ``G`` to every puncture loop and handle loop of the base. Every
subgroup ``H`` gives an intermediate curve ``S/H``; we realise each one as an
explicit cell complex (the coset complex) so genera can be computed twice:
once by Riemann-Hurwitz, once from cells and F2 homology.

Base cell structure, for base genus ``gamma`` and marked points ``p_1..p_n``:
one vertex ``v``, loops ``a_i, b_i`` and ``c_j`` at ``v``, a spoke ``s_j``
from ``v`` to ``p_j``; faces ``F0`` with boundary word
``prod [a_i, b_i] * prod c_j`` and ``D_j`` (the disk around ``p_j`` cut along
its spoke) with boundary ``c_j s_j s_j^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .exact import INF, F2Matrix, F2Subspace, format_point, f2_kernel, parse_point
from .surfaces import InconsistentBranchData, RamifiedCoverSpec, Surface


class InvalidMonodromy(ValueError):
    pass


@dataclass(frozen=True)
class DeckGroup:
    """``(Z2)^k`` with named generators; elements are int bitmasks."""

    names: tuple

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def order(self) -> int:
        return 1 << self.rank

    def element(self, word) -> int:
        """``"sigma*psi"``, ``"1"``, an iterable of names, or an int."""
        if isinstance(word, int):
            if word < 0 or word >> self.rank:
                raise ValueError(f"{word} is not an element of the deck group")
            return word
        if isinstance(word, str):
            word = [] if word.strip() in ("", "1") else [w.strip() for w in word.split("*")]
        e = 0
        for name in word:
            if name not in self.names:
                raise ValueError(f"unknown deck generator {name!r}")
            e ^= 1 << self.names.index(name)
        return e

    def label(self, e: int) -> str:
        parts = [n for i, n in enumerate(self.names) if (e >> i) & 1]
        return "*".join(parts) or "1"

    def subgroup(self, words) -> F2Subspace:
        return F2Subspace(self.rank, [self.element(w) for w in words])

    def subgroups(self) -> list[F2Subspace]:
        """All subgroups, ordered by order then canonical basis."""
        found = {F2Subspace(self.rank)}
        frontier = list(found)
        while frontier:
            nxt = []
            for h in frontier:
                for e in range(1, self.order):
                    if e not in h:
                        k = h + F2Subspace(self.rank, [e])
                        if k not in found:
                            found.add(k)
                            nxt.append(k)
            frontier = nxt
        return sorted(found, key=lambda h: (h.dim, h.basis))

    def subgroup_label(self, h: F2Subspace) -> str:
        return "<" + ",".join(self.label(b) for b in reversed(h.basis)) + ">"


def _label(p) -> str:
    return p if isinstance(p, str) else format_point(p)


@dataclass(frozen=True)
class MonodromyCover:
    """Abelian monodromy over a genus-``base_genus`` base with marked points.

    ``punctures[j]`` is the image of the loop around ``marked[j]``;
    ``handles[i] = (image of a_i, image of b_i)``. With ``check=True`` the
    surface relation (the sum of puncture images vanishes, since commutators
    die in an abelian group) and connectivity are enforced.
    """

    base_genus: int
    marked: tuple
    group: DeckGroup
    punctures: tuple
    handles: tuple = ()
    check: bool = True

    def __post_init__(self):
        if len(self.punctures) != len(self.marked):
            raise ValueError("one monodromy element per marked point is required")
        if len(self.handles) != self.base_genus:
            raise ValueError("one (a, b) pair per handle is required")
        if len(set(self.marked)) != len(self.marked):
            raise ValueError("marked points must be distinct")
        object.__setattr__(self, "punctures", tuple(self.group.element(m) for m in self.punctures))
        object.__setattr__(self, "handles", tuple(
            (self.group.element(a), self.group.element(b)) for a, b in self.handles))
        if self.check:
            if self.relation_defect:
                raise InvalidMonodromy(
                    "surface relation fails: product of loop images is "
                    + self.group.label(self.relation_defect))
            if self.image.dim != self.group.rank:
                raise InvalidMonodromy("monodromy is not surjective: the cover is disconnected")

    @property
    def relation_defect(self) -> int:
        total = 0
        for m in self.punctures:
            total ^= m
        return total

    @property
    def image(self) -> F2Subspace:
        gens = list(self.punctures) + [x for ab in self.handles for x in ab]
        return F2Subspace(self.group.rank, gens)

    def marked_labels(self) -> list[str]:
        return [_label(p) for p in self.marked]

    def to_json(self) -> dict:
        return {
            "base_genus": self.base_genus,
            "deck_generators": list(self.group.names),
            "punctures": [{"point": _label(p), "monodromy": self.group.label(m)}
                          for p, m in zip(self.marked, self.punctures)],
            "handles": [{"a": self.group.label(a), "b": self.group.label(b)} for a, b in self.handles],
        }


class CosetComplex:
    """Cell complex of ``S/H``: cells of the base lifted to the cosets ``G/H``.

    Chains are int bitmasks over the ordered vertex / edge / face lists.
    """

    def __init__(self, cover: MonodromyCover, h: F2Subspace):
        self.cover = cover
        self.h = h
        g = cover.group
        self.cosets = sorted({h.reduce(x) for x in range(g.order)})
        self.sheets = len(self.cosets)
        self._pos = {c: i for i, c in enumerate(self.cosets)}

        # vertices: v over every coset, then p_j over cosets of H + <m_j>
        self.vertices: list[tuple] = [("v", 0, c) for c in self.cosets]
        self._vpos: dict[tuple, int] = {v: i for i, v in enumerate(self.vertices)}
        self._hp = []
        for j, m in enumerate(cover.punctures):
            hp = h + F2Subspace(g.rank, [m])
            self._hp.append(hp)
            for c in sorted({hp.reduce(x) for x in self.cosets}):
                self._vpos[("p", j, c)] = len(self.vertices)
                self.vertices.append(("p", j, c))

        # edges
        self.edges: list[tuple] = []
        self._blocks: dict[tuple, int] = {}
        for i in range(cover.base_genus):
            self._add_block(("a", i))
            self._add_block(("b", i))
        for j in range(len(cover.marked)):
            self._add_block(("c", j))
            self._add_block(("s", j))
        self.d1: list[int] = [self._edge_boundary(e) for e in self.edges]

        # faces
        self.faces: list[tuple] = []
        self.d2: list[int] = []
        for c in self.cosets:
            self.faces.append(("F0", 0, c))
            self.d2.append(self._f0_boundary(c))
        for j, m in enumerate(cover.punctures):
            for c in self.cosets:
                self.faces.append(("D", j, c))
                self.d2.append(self.edge(("c", j), c) ^ self.edge(("s", j), self.shift(c, m))
                               ^ self.edge(("s", j), c))

    def _add_block(self, key):
        self._blocks[key] = len(self.edges)
        self.edges += [(key[0], key[1], c) for c in self.cosets]

    def shift(self, c: int, m: int) -> int:
        return self.h.reduce(c ^ m)

    def monodromy(self, kind: str, idx: int) -> int:
        if kind == "a":
            return self.cover.handles[idx][0]
        if kind == "b":
            return self.cover.handles[idx][1]
        if kind == "c":
            return self.cover.punctures[idx]
        return 0

    def edge_index(self, key, c: int) -> int:
        return self._blocks[key] + self._pos[c]

    def edge(self, key, c: int) -> int:
        return 1 << self.edge_index(key, c)

    def _edge_boundary(self, e) -> int:
        kind, idx, c = e
        start = 1 << self._vpos[("v", 0, c)]
        if kind == "s":
            end_key = ("p", idx, self._hp[idx].reduce(c))
        else:
            end_key = ("v", 0, self.shift(c, self.monodromy(kind, idx)))
        return start ^ (1 << self._vpos[end_key])

    def _f0_boundary(self, c: int) -> int:
        word = []
        for i in range(self.cover.base_genus):
            word += [(("a", i), 1), (("b", i), 1), (("a", i), -1), (("b", i), -1)]
        word += [(("c", j), 1) for j in range(len(self.cover.marked))]
        chain, sheet = 0, c
        for key, sign in word:
            m = self.monodromy(*key)
            nxt = self.shift(sheet, m)
            # an inverse letter traverses the edge that ends at the current sheet
            chain ^= self.edge(key, sheet if sign > 0 else nxt)
            sheet = nxt
        return chain

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        v, e, f = self.counts
        return v - e + f

    @property
    def euler_genus(self):
        """``(2 - chi) / 2``; a half-integer signals a broken complex."""
        chi = self.euler_characteristic
        return (2 - chi) // 2 if chi % 2 == 0 else (2 - chi) / 2

    @cached_property
    def boundary_squares_to_zero(self) -> bool:
        d1 = F2Matrix.from_columns(len(self.vertices), self.d1)
        return all(d1.apply(f) == 0 for f in self.d2)

    @cached_property
    def cycle_space(self) -> F2Subspace:
        return f2_kernel(F2Matrix.from_columns(len(self.vertices), self.d1))

    @cached_property
    def boundary_space(self) -> F2Subspace:
        return F2Subspace(len(self.edges), self.d2)

    @cached_property
    def betti1(self) -> int:
        return self.cycle_space.dim - self.boundary_space.dim

    @cached_property
    def betti2(self) -> int:
        return f2_kernel(F2Matrix.from_columns(len(self.edges), self.d2)).dim

    def edge_map_to(self, lower: "CosetComplex") -> list[int]:
        """Index of the image of each edge under ``S/H -> S/H'`` for ``H`` in ``H'``."""
        return [lower.edge_index((k, i), lower.h.reduce(c)) for k, i, c in self.edges]

    def face_map_to(self, lower: "CosetComplex") -> list[int]:
        pos = {f: i for i, f in enumerate(lower.faces)}
        return [pos[(k, i, lower.h.reduce(c))] for k, i, c in self.faces]

    def vertex_map_to(self, lower: "CosetComplex") -> list[int]:
        out = []
        for kind, j, c in self.vertices:
            if kind == "v":
                out.append(lower._vpos[("v", 0, lower.h.reduce(c))])
            else:
                out.append(lower._vpos[("p", j, lower._hp[j].reduce(c))])
        return out

    def push_chain(self, chain: int, lower: "CosetComplex", emap: list[int] | None = None) -> int:
        emap = emap or self.edge_map_to(lower)
        out, i = 0, 0
        while chain:
            if chain & 1:
                out ^= 1 << emap[i]
            chain >>= 1
            i += 1
        return out


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class CurveNode:
    name: str
    subgroup: F2Subspace
    genus: int
    degree: int
    branch_locus: tuple

    def to_json(self, group: DeckGroup) -> dict:
        return {"name": self.name, "subgroup": group.subgroup_label(self.subgroup),
                "genus": self.genus, "degree_over_base": self.degree,
                "branch_locus": list(self.branch_locus)}


@dataclass(frozen=True)
class TowerEdge:
    """The degree-``degree`` map ``upper -> lower`` (``upper`` has the smaller subgroup)."""

    upper: str
    lower: str
    degree: int
    ramified_points: tuple

    @property
    def unramified(self) -> bool:
        return not self.ramified_points

    def to_json(self) -> dict:
        return {"upper": self.upper, "lower": self.lower, "degree": self.degree,
                "branch_points": len(self.ramified_points)}


def _node_genus(cover: MonodromyCover, h: F2Subspace) -> int:
    """Riemann-Hurwitz over the base, with ramification read off fixed cosets."""
    d = cover.group.order >> h.dim
    profile = [(f"#{j}", (2,) * (d // 2)) for j, m in enumerate(cover.punctures) if m not in h]
    return RamifiedCoverSpec(d, Surface(cover.base_genus), tuple(profile)).genus


def edge_ramification(cover: MonodromyCover, upper: F2Subspace, lower: F2Subspace) -> tuple:
    """Points of ``S/lower`` over which ``S/upper -> S/lower`` ramifies, as
    ``(marked label, coset)`` pairs."""
    out = []
    labels = cover.marked_labels()
    for j, m in enumerate(cover.punctures):
        if m in lower and m not in upper:
            for c in sorted({lower.reduce(x) for x in range(cover.group.order)}):
                out.append((labels[j], cover.group.label(c)))
    return tuple(out)


@dataclass
class TowerDiagram:
    """All quotients ``S/H`` of one monodromy cover, joined by index-2 edges."""

    cover: MonodromyCover
    nodes: list
    edges: list
    names: dict = field(default_factory=dict)
    _complexes: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, cover: MonodromyCover, names: dict | None = None) -> "TowerDiagram":
        names = dict(names or {})
        g = cover.group
        labels = cover.marked_labels()
        nodes = []
        taken = {}
        for h in g.subgroups():
            name = None
            for nm, words in names.items():
                if g.subgroup(words) == h:
                    name = nm
            if name is None:
                name = "S/" + g.subgroup_label(h) if h.dim else "S"
            if name in taken:
                raise ValueError(f"node name {name} used twice")
            taken[name] = h
            try:
                genus = _node_genus(cover, h)
            except InconsistentBranchData:
                genus = -1  # only reachable with an unchecked, broken assignment
            branch = tuple(labels[j] for j, m in enumerate(cover.punctures) if m not in h)
            nodes.append(CurveNode(name, h, genus, g.order >> h.dim, branch))
        edges = []
        for up in nodes:
            for low in nodes:
                if low.subgroup.dim == up.subgroup.dim + 1 and \
                        (up.subgroup + low.subgroup) == low.subgroup:
                    edges.append(TowerEdge(up.name, low.name, 2,
                                           edge_ramification(cover, up.subgroup, low.subgroup)))
        return cls(cover, nodes, edges, names)

    def node(self, name: str) -> CurveNode:
        for n in self.nodes:
            if n.name == name:
                return n
        raise KeyError(f"no node named {name}")

    def node_for(self, h: F2Subspace) -> CurveNode:
        for n in self.nodes:
            if n.subgroup == h:
                return n
        raise KeyError("no node for that subgroup")

    def complex(self, name: str) -> CosetComplex:
        if name not in self._complexes:
            self._complexes[name] = CosetComplex(self.cover, self.node(name).subgroup)
        return self._complexes[name]

    def edge(self, upper: str, lower: str) -> TowerEdge:
        for e in self.edges:
            if e.upper == upper and e.lower == lower:
                return e
        raise KeyError(f"no edge {upper} -> {lower}")

    def covers(self, upper: str, lower: str) -> bool:
        hu, hl = self.node(upper).subgroup, self.node(lower).subgroup
        return hu + hl == hl

    def genera(self) -> dict:
        return {n.name: n.genus for n in self.nodes}

    def named_nodes(self) -> list[CurveNode]:
        return [n for n in self.nodes if n.name in self.names]

    def to_json(self) -> dict:
        g = self.cover.group
        return {
            "monodromy": self.cover.to_json(),
            "nodes": [n.to_json(g) for n in self.nodes],
            "edges": [e.to_json() for e in self.edges],
        }


GENUS3_NAMES = {
    "S": [],
    "Sigma": ["sigma"],
    "S_tau": ["tau"],
    "S_psi": ["psi"],
    "S_anti": ["sigma*tau"],
    "S_rho": ["psi*tau"],
    "S_rho_sigma": ["sigma*psi*tau"],
    "Sigma_Klein": ["psi", "tau"],
    "Sigma_tau": ["sigma", "tau"],
    "Sigma_psi": ["sigma", "psi"],
    "Sigma_rho": ["sigma", "psi*tau"],
    "E": ["sigma*psi", "psi*tau"],
    "M": ["sigma*psi*tau", "psi"],
    "base": ["sigma", "psi", "tau"],
}

# the nine curves of the genus-3 diagram
GENUS3_DIAGRAM = ("S", "Sigma", "S_tau", "S_psi", "S_anti", "Sigma_Klein", "Sigma_tau", "E", "M")

FREE_NAMES = {
    "S": [],
    "Sigma": ["sigma"],
    "S_tau": ["tau"],
    "S_anti": ["sigma*tau"],
    "Sigma_tau": ["sigma", "tau"],
}

GENUS3_ASSIGNMENT = ("sigma", "sigma", "sigma*psi*tau", "sigma*psi*tau",
                     "sigma*psi", "sigma*psi", "sigma*psi", "sigma*psi")


def _check_distinct(points) -> None:
    if len(set(points)) != len(points):
        raise ValueError("branch points must be distinct")


def genus3_marked_points(zs: Sequence) -> tuple:
    """``(0, inf, z1..z6)``; 0 and infinity are the images of the zeros of
    ``z (dz)^2 / y^2`` on ``y^2 = prod (z - z_i)``."""
    from .differentials import CurveEquation, QuadDifferential, zero_images
    from .exact import Poly

    zs = [parse_point(z) for z in zs]
    if len(zs) != 6:
        raise ValueError("need exactly six branch points z1..z6")
    if INF in zs:
        raise ValueError("z1..z6 must be finite")
    _check_distinct(zs)
    if 0 in zs:
        raise ValueError("branch points must be distinct from 0 and infinity")
    curve = CurveEquation(Poly.from_roots(zs))
    zeros = zero_images(QuadDifferential(curve, Poly([0, 1])))
    pts = tuple(zeros) + tuple(zs)
    _check_distinct(pts)
    return pts


def build_genus3_tower(zs: Sequence, assignment: Sequence | None = None,
                       check: bool = True) -> TowerDiagram:
    """Tower with deck group ``<sigma, psi, tau>`` over the sphere marked at
    ``0, inf, z1..z6``; ``assignment`` overrides the loop images (negative controls)."""
    marked = genus3_marked_points(zs)
    group = DeckGroup(("sigma", "psi", "tau"))
    cover = MonodromyCover(0, marked, group, tuple(assignment or GENUS3_ASSIGNMENT), (), check)
    return TowerDiagram.build(cover, GENUS3_NAMES)


def _class_bits(cover_class, gamma: int) -> int:
    n = 2 * gamma
    if hasattr(cover_class, "handle_vector"):
        return cover_class.handle_vector()
    if isinstance(cover_class, str):
        if len(cover_class) != n or set(cover_class) - {"0", "1"}:
            raise ValueError(f"class must be a 0/1 string of length {n} (a1 b1 a2 b2 ...)")
        return sum(1 << i for i, ch in enumerate(cover_class) if ch == "1")
    bits = int(cover_class)
    if bits < 0 or bits >> n:
        raise ValueError(f"class must fit in {n} handle coordinates")
    return bits


def build_free_tower(gamma: int, cover_class="10", check: bool = True) -> TowerDiagram:
    """Tower with deck group ``<sigma, tau>`` over a genus-``gamma`` base with
    the ``4 gamma - 4`` zeros of the quadratic differential marked.

    Puncture loops go to ``sigma``; handle loop ``a_i`` (``b_i``) goes to
    ``tau`` exactly when bit ``2i`` (``2i+1``) of the class is set.
    """
    if gamma < 2:
        raise ValueError("base genus must be at least 2")
    if isinstance(cover_class, str) and cover_class == "10":
        cover_class = "1" + "0" * (2 * gamma - 1)
    bits = _class_bits(cover_class, gamma)
    if bits == 0:
        raise InvalidMonodromy("trivial class: the cover is disconnected")
    group = DeckGroup(("sigma", "tau"))
    marked = tuple(f"q{j + 1}" for j in range(4 * gamma - 4))
    handles = tuple(("tau" if (bits >> 2 * i) & 1 else "1", "tau" if (bits >> (2 * i + 1)) & 1 else "1")
                    for i in range(gamma))
    cover = MonodromyCover(gamma, marked, group, ("sigma",) * len(marked), handles, check)
    return TowerDiagram.build(cover, FREE_NAMES)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class EdgeCheck:
    upper: str
    lower: str
    degree: int
    branch_count: int
    genus_upper: int
    genus_lower: int
    rh_genus: object
    euler_genus: object
    homology_genus: object
    ok: bool

    def to_json(self) -> dict:
        return {"upper": self.upper, "lower": self.lower, "degree": self.degree,
                "branch_count": self.branch_count, "genus_upper": self.genus_upper,
                "genus_lower": self.genus_lower, "rh_genus": str(self.rh_genus),
                "euler_genus": str(self.euler_genus), "homology_genus": str(self.homology_genus),
                "ok": self.ok}


@dataclass(frozen=True)
class RHReport:
    ok: bool
    edges: tuple
    nodes: tuple

    def failing(self) -> list[str]:
        return [f"{e.upper} -> {e.lower}" for e in self.edges if not e.ok]

    def __bool__(self) -> bool:
        return self.ok


def _complex_genus(cx: CosetComplex):
    """``(euler genus, homology genus)``; homology genus is ``None`` when the
    complex is not a closed connected surface."""
    if not cx.boundary_squares_to_zero or cx.betti2 != 1 or cx.betti1 % 2:
        return cx.euler_genus, None
    return cx.euler_genus, cx.betti1 // 2


def verify_rh_consistency(t: TowerDiagram) -> RHReport:
    """Per edge: Riemann-Hurwitz on the edge's own branch profile, against the
    Euler characteristic and F2 Betti number of the upper coset complex."""
    node_rows = []
    gen = {}
    for n in t.nodes:
        eg, hg = _complex_genus(t.complex(n.name))
        gen[n.name] = (eg, hg)
        node_rows.append((n.name, n.genus, eg, hg, n.genus == eg == hg))
    checks = []
    for e in t.edges:
        up, low = t.node(e.upper), t.node(e.lower)
        eg, hg = gen[e.upper]
        low_g = gen[e.lower][1]
        try:
            if low_g is None:
                raise InconsistentBranchData("lower complex is broken")
            spec = RamifiedCoverSpec(e.degree, Surface(low_g),
                                     tuple((f"{p}@{c}", (2,)) for p, c in e.ramified_points))
            rh = spec.genus
        except (InconsistentBranchData, ValueError):
            rh = None
        ok = rh is not None and rh == eg == hg == up.genus
        checks.append(EdgeCheck(e.upper, e.lower, e.degree, len(e.ramified_points),
                                up.genus, low.genus, rh, eg, hg, ok))
    ok = all(c.ok for c in checks) and all(r[-1] for r in node_rows)
    return RHReport(ok, tuple(checks), tuple(node_rows))


def relative_branch_count(t: TowerDiagram, upper: str, lower: str) -> int:
    """Number of points of ``lower`` over which ``upper -> lower`` is branched."""
    return len(edge_ramification(t.cover, t.node(upper).subgroup, t.node(lower).subgroup))


def check_commutativity(t: TowerDiagram) -> tuple[bool, int]:
    """Compare the two-step composites of cell maps along every pair of
    Hasse paths with common endpoints, and each against the direct map.

    Returns ``(ok, number of path pairs compared)``.
    """
    by_upper: dict[str, list[str]] = {}
    for e in t.edges:
        by_upper.setdefault(e.upper, []).append(e.lower)
    compared = 0
    ok = True
    for top in t.nodes:
        paths: dict[str, list[tuple[str, str]]] = {}
        for mid in by_upper.get(top.name, []):
            for bottom in by_upper.get(mid, []):
                paths.setdefault(bottom, []).append((mid, bottom))
        cx_top = t.complex(top.name)
        for bottom, ps in paths.items():
            cx_b = t.complex(bottom)
            direct = (cx_top.vertex_map_to(cx_b), cx_top.edge_map_to(cx_b), cx_top.face_map_to(cx_b))
            for mid, _ in ps:
                cx_m = t.complex(mid)
                first = (cx_top.vertex_map_to(cx_m), cx_top.edge_map_to(cx_m), cx_top.face_map_to(cx_m))
                second = (cx_m.vertex_map_to(cx_b), cx_m.edge_map_to(cx_b), cx_m.face_map_to(cx_b))
                composite = tuple([s[i] for i in f] for f, s in zip(first, second))
                ok = ok and composite == direct
            compared += len(list(combinations(ps, 2)))
    return ok, compared


def bundle_degree_check(cover_degree: int, base_bundle_degree: int, claimed_square: int) -> bool:
    """Degree of ``(pi^* L)^2`` is ``2 * deg(pi) * deg(L)``."""
    return 2 * cover_degree * base_bundle_degree == claimed_square


def subdiagram_summary(t: TowerDiagram, names: Sequence[str], over: str) -> dict:
    """Genera and branch counts relative to ``over`` for the named nodes."""
    out = {}
    for nm in names:
        out[nm] = {"genus": t.node(nm).genus,
                   "branch_over": relative_branch_count_any(t, nm, over)}
    return out


def relative_branch_count_any(t: TowerDiagram, upper: str, lower: str) -> int:
    """Branch points of the (possibly higher-degree) map ``upper -> lower``."""
    hu, hl = t.node(upper).subgroup, t.node(lower).subgroup
    if hu + hl != hl:
        raise ValueError(f"{upper} does not cover {lower}")
    count = 0
    for m in t.cover.punctures:
        if m in hl and m not in hu:
            count += t.cover.group.order >> hl.dim
    return count
