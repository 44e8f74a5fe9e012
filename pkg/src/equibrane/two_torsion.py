"""Two models of ``Jac(X)[2] = H^1(X, F2)`` and pullbacks along tower edges.

Character model: a class is its vector of values on a fixed basis of
``H_1(X, F2)``, computed from the coset complex of the node.

Even-subset model: on a hyperelliptic curve with Weierstrass points
``b_0, b_1, ...`` an even subset ``T`` stands for ``sum_{b in T} b - (|T|/2) g^1_2``;
``T`` and its complement agree, and the stored form omits ``b_0``.

The two are linked by an explicit cocycle (:func:`even_subset_cocycle`).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .exact import F2Matrix, F2Subspace, bits_to_str, f2_kernel, f2_solve, format_point
from .surfaces import HyperellipticModel
from .towers import CosetComplex, TowerDiagram


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


# ---------------------------------------------------------------------------
# even-subset model


@dataclass(frozen=True)
class EvenSubsetClass:
    """Even subset of an ordered branch set, normalised to omit ``branch[0]``."""

    branch: tuple
    subset: frozenset

    def __post_init__(self):
        sub = frozenset(self.subset)
        if not sub <= set(self.branch):
            raise ValueError("subset must lie in the branch set")
        if len(sub) % 2:
            raise ValueError("subset must have even cardinality")
        if self.branch[0] in sub:
            sub = frozenset(self.branch) - sub
        object.__setattr__(self, "subset", sub)

    @classmethod
    def of(cls, branch: Sequence, subset: Iterable) -> "EvenSubsetClass":
        return cls(tuple(branch), frozenset(subset))

    @classmethod
    def from_model(cls, model: HyperellipticModel, subset: Iterable) -> "EvenSubsetClass":
        from .exact import parse_point
        pts = [format_point(p) for p in model.branch_points]
        return cls(tuple(pts), frozenset(format_point(parse_point(s)) for s in subset))

    @property
    def genus(self) -> int:
        return len(self.branch) // 2 - 1

    def _same(self, other: "EvenSubsetClass") -> None:
        if self.branch != other.branch:
            raise ValueError("classes live on different curves")

    def __add__(self, other: "EvenSubsetClass") -> "EvenSubsetClass":
        self._same(other)
        return EvenSubsetClass(self.branch, self.subset ^ other.subset)

    def is_zero(self) -> bool:
        return not self.subset

    def sorted_subset(self) -> list:
        return [b for b in self.branch if b in self.subset]

    def to_vector(self) -> int:
        """Coordinates in the basis ``{b_0, b_i}``, ``i = 1..2g``."""
        n = 2 * self.genus
        v = 0
        for b in self.subset:
            i = self.branch.index(b)
            v ^= ((1 << n) - 1) if i == n + 1 else 1 << (i - 1)
        return v

    @classmethod
    def from_vector(cls, branch: Sequence, v: int) -> "EvenSubsetClass":
        branch = tuple(branch)
        sub: set = set()
        for i in range(len(branch) - 2):
            if (v >> i) & 1:
                sub ^= {branch[0], branch[i + 1]}
        return cls(branch, frozenset(sub))

    def handle_vector(self) -> int:
        """Values on the standard symplectic loops: ``A_i`` encircles
        ``b_{2i}, b_{2i+1}`` and ``B_i`` encircles ``b_{2i+1}..b_{2g}``
        (0-based), bits ordered ``A_0, B_0, A_1, B_1, ...``."""
        g = self.genus
        out = 0
        for i in range(g):
            a = {self.branch[2 * i], self.branch[2 * i + 1]}
            b = set(self.branch[2 * i + 1: 2 * g + 1])
            out |= (len(self.subset & a) & 1) << (2 * i)
            out |= (len(self.subset & b) & 1) << (2 * i + 1)
        return out

    def display_subset(self) -> list:
        """The smaller of the subset and its complement (ties keep the stored form)."""
        other = [b for b in self.branch if b not in self.subset]
        mine = self.sorted_subset()
        return other if len(other) < len(mine) else mine

    def label(self) -> str:
        return "{" + ",".join(str(b) for b in self.display_subset()) + "}"

    def to_json(self) -> dict:
        return {"subset": [str(b) for b in self.sorted_subset()], "label": self.label()}


def weil_pairing(t1: EvenSubsetClass, t2: EvenSubsetClass) -> int:
    t1._same(t2)
    return len(t1.subset & t2.subset) & 1


@dataclass(frozen=True)
class Jac2Group:
    branch: tuple

    @property
    def genus(self) -> int:
        return len(self.branch) // 2 - 1

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def order(self) -> int:
        return 1 << self.rank

    def basis(self) -> list[EvenSubsetClass]:
        return [EvenSubsetClass.of(self.branch, {self.branch[0], b}) for b in self.branch[1:self.rank + 1]]

    def elements(self) -> list[EvenSubsetClass]:
        return [EvenSubsetClass.from_vector(self.branch, v) for v in range(self.order)]

    def pair_classes(self) -> list[EvenSubsetClass]:
        """Distinct nonzero classes of two-point subsets."""
        seen = {}
        for a, b in combinations(self.branch, 2):
            c = EvenSubsetClass.of(self.branch, {a, b})
            seen.setdefault(c.subset, c)
        return list(seen.values())

    def to_json(self) -> dict:
        return {"branch": [str(b) for b in self.branch], "rank": self.rank,
                "order": self.order, "basis": [c.label() for c in self.basis()]}


def jac2_group(model) -> Jac2Group:
    if isinstance(model, HyperellipticModel):
        return Jac2Group(tuple(format_point(p) for p in model.branch_points))
    return Jac2Group(tuple(model))


# ---------------------------------------------------------------------------
# character model


class _Coordinates:
    """Express vectors in the span of independent ``vectors``."""

    def __init__(self, vectors: Sequence[int]):
        rows: list[tuple[int, int]] = []
        for i, v in enumerate(vectors):
            c = 1 << i
            for rv, rc in rows:
                if (v >> (rv.bit_length() - 1)) & 1:
                    v ^= rv
                    c ^= rc
            if not v:
                raise ValueError("vectors are dependent")
            rows.append((v, c))
            rows.sort(key=lambda r: r[0], reverse=True)
        # rows have distinct leading bits; process in descending order
        self.rows = rows

    def __call__(self, x: int) -> int:
        c = 0
        for rv, rc in self.rows:
            if (x >> (rv.bit_length() - 1)) & 1:
                x ^= rv
                c ^= rc
        if x:
            raise ValueError("vector outside the span")
        return c


class NodeHomology:
    """A basis of ``H_1(X, F2)`` for one node, as reduced cycles of its complex."""

    def __init__(self, tower: TowerDiagram, name: str):
        self.tower = tower
        self.name = name
        self.complex: CosetComplex = tower.complex(name)
        cx = self.complex
        if not cx.boundary_squares_to_zero:
            raise ValueError(f"{name}: cell complex is not a chain complex (broken monodromy)")
        if cx.betti2 != 1:
            raise ValueError(f"{name}: cover is disconnected")
        b1 = cx.boundary_space
        basis: list[int] = []
        span = F2Subspace(len(cx.edges))
        for z in cx.cycle_space.basis:
            r = b1.reduce(z)
            if r and r not in span:
                basis.append(r)
                span = span + F2Subspace(len(cx.edges), [r])
        self.basis = basis
        self._coords = _Coordinates(basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, cycle: int) -> int:
        return self._coords(self.complex.boundary_space.reduce(cycle))

    def character(self, cochain: int) -> int:
        """Values of a 1-cocycle on the basis cycles."""
        return sum(_parity(cochain & h) << i for i, h in enumerate(self.basis))

    def is_cocycle(self, cochain: int) -> bool:
        return all(not _parity(cochain & f) for f in self.complex.d2)


_HOMOLOGY_CACHE: dict = {}


def homology_of_node(t: TowerDiagram, name: str) -> NodeHomology:
    key = (id(t), name)
    hit = _HOMOLOGY_CACHE.get(key)
    if hit is None or hit.tower is not t:
        hit = NodeHomology(t, name)
        _HOMOLOGY_CACHE[key] = hit
    return hit


@dataclass(frozen=True)
class PullbackMap:
    """``source`` is the quotient whose classes are pulled back to ``target``."""

    source: str
    target: str
    matrix: F2Matrix

    def __call__(self, v: int) -> int:
        return self.matrix.apply(v)

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target,
                "matrix": ["".join(map(str, r)) for r in self.matrix.to_lists()]}


def pullback_map(t: TowerDiagram, upper: str, lower: str) -> PullbackMap:
    """Matrix of ``H^1(lower) -> H^1(upper)``: entry ``(i, j)`` is the
    ``j``-th coordinate of the pushforward of the ``i``-th upper cycle."""
    if not t.covers(upper, lower):
        raise ValueError(f"{upper} does not cover {lower}")
    hu, hl = homology_of_node(t, upper), homology_of_node(t, lower)
    emap = hu.complex.edge_map_to(hl.complex)
    rows = [hl.coordinates(hu.complex.push_chain(z, hl.complex, emap)) for z in hu.basis]
    return PullbackMap(lower, upper, F2Matrix(hu.rank, hl.rank, rows))


def pullback_cochain(t: TowerDiagram, upper: str, lower: str, cochain: int) -> int:
    cu, cl = t.complex(upper), t.complex(lower)
    emap = cu.edge_map_to(cl)
    return sum(((cochain >> emap[i]) & 1) << i for i in range(len(cu.edges)))


def transition_cochain(t: TowerDiagram, upper: str, lower: str) -> int:
    """Cochain on ``lower`` recording, edge by edge, whether the lift of the
    edge that starts on the chosen sheet of ``upper`` ends on the chosen sheet
    over its endpoint. Sheets over ``v`` are coset representatives; over
    ``p_j`` representatives modulo ``<m_j>``. For an index-2 inclusion."""
    hu, hl = t.node(upper).subgroup, t.node(lower).subgroup
    if not t.covers(upper, lower) or hl.dim != hu.dim + 1:
        raise ValueError(f"{upper} -> {lower} is not a double cover in the tower")
    cl = t.complex(lower)
    rank = t.cover.group.rank
    out = 0
    for i, (kind, idx, c) in enumerate(cl.edges):
        if kind == "s":
            m = F2Subspace(rank, [t.cover.punctures[idx]])
            end_low, up = hl + m, hu + m
            jump = c ^ end_low.reduce(c)
        else:
            step = c ^ cl.monodromy(kind, idx)
            up = hu
            jump = step ^ hl.reduce(step)
        if up.reduce(jump):
            out |= 1 << i
    return out


def classifying_class(t: TowerDiagram, upper: str, lower: str) -> int:
    """Character on ``lower`` of the unramified double cover ``upper -> lower``."""
    if t.edge(upper, lower).ramified_points:
        raise ValueError(f"{upper} -> {lower} is branched; it has no class in H^1({lower})")
    h = homology_of_node(t, lower)
    cochain = transition_cochain(t, upper, lower)
    if not h.is_cocycle(cochain):  # pragma: no cover - unramified implies cocycle
        raise AssertionError("transition cochain is not a cocycle")
    return h.character(cochain)


# ---------------------------------------------------------------------------
# hyperelliptic nodes and the translation between models


@dataclass(frozen=True)
class HyperellipticStructure:
    """``node -> quotient`` is a double cover of a genus-0 node; the
    Weierstrass points are its ramification points."""

    node: str
    quotient: str
    points: tuple  # ((j, coset of H + <m_j>), ...)
    labels: tuple


def hyperelliptic_structure(t: TowerDiagram, name: str) -> HyperellipticStructure | None:
    node = t.node(name)
    if node.genus < 1:
        return None
    g = t.cover.group
    labels = t.cover.marked_labels()
    for quot in t.nodes:
        if quot.genus != 0 or quot.subgroup.dim != node.subgroup.dim + 1:
            continue
        if node.subgroup + quot.subgroup != quot.subgroup:
            continue
        pts, labs = [], []
        for j, m in enumerate(t.cover.punctures):
            if m in quot.subgroup and m not in node.subgroup:
                hp = node.subgroup + F2Subspace(g.rank, [m])
                cosets = sorted({hp.reduce(x) for x in range(g.order)})
                for c in cosets:
                    pts.append((j, c))
                    labs.append(labels[j] if len(cosets) == 1 else f"{labels[j]}@{g.label(c)}")
        return HyperellipticStructure(name, quot.name, tuple(pts), tuple(labs))
    return None


def _cochain_solve(rows: Sequence[int], ncols: int, target: int, columns: Sequence[int] | None = None) -> int:
    """Find a cochain ``x`` (supported on ``columns``) with ``<x, row_f> = target_f``."""
    cols = list(range(ncols)) if columns is None else list(columns)
    packed = []
    for r in rows:
        packed.append(sum(((r >> c) & 1) << k for k, c in enumerate(cols)))
    sol = f2_solve(F2Matrix(len(rows), len(cols), packed), target)
    if sol is None:
        raise ValueError("no cochain with the requested coboundary")
    return sum(((sol >> k) & 1) << c for k, c in enumerate(cols))


def even_subset_cocycle(t: TowerDiagram, cls: EvenSubsetClass, name: str | None = None) -> int:
    """A 1-cocycle on the node representing ``cls``.

    On the genus-0 quotient ``Y`` take a cochain whose coboundary marks one
    face at each point under ``cls``; pull it back and cancel the coboundary
    with spokes at the Weierstrass points themselves.
    """
    hs = hyperelliptic_structure(t, name)
    if hs is None:
        raise ValueError(f"{name} has no hyperelliptic structure in this tower")
    if tuple(cls.branch) != hs.labels:
        raise ValueError("class does not live on this node's Weierstrass set")
    cx, cy = t.complex(name), t.complex(hs.quotient)
    hy = t.node(hs.quotient).subgroup
    g = t.cover.group
    target = 0
    fpos = {f: i for i, f in enumerate(cy.faces)}
    chosen = [pt for pt, lab in zip(hs.points, hs.labels) if lab in cls.subset]
    for j, c in chosen:
        # one face of Y at the image point: the D_j face on the smallest sheet over it
        m = t.cover.punctures[j]
        hp = hy + F2Subspace(g.rank, [m])
        sheets = [s for s in cy.cosets if hp.reduce(s) == hp.reduce(c)]
        target ^= 1 << fpos[("D", j, min(sheets))]
    psi = _cochain_solve(cy.d2, len(cy.edges), target)
    phi = pullback_cochain(t, name, hs.quotient, psi)
    defect = sum(_parity(phi & f) << i for i, f in enumerate(cx.d2))
    hx = t.node(name).subgroup
    spokes = []
    for j, c in chosen:
        hp = hx + F2Subspace(g.rank, [t.cover.punctures[j]])
        spokes += [cx.edge_index(("s", j), s) for s in cx.cosets if hp.reduce(s) == c]
    eps = _cochain_solve(cx.d2, len(cx.edges), defect, spokes) if defect else 0
    out = phi ^ eps
    assert homology_of_node(t, name).is_cocycle(out)
    return out


def even_subset_character(t: TowerDiagram, name: str, cls: EvenSubsetClass) -> int:
    return homology_of_node(t, name).character(even_subset_cocycle(t, cls, name))


@dataclass(frozen=True)
class Translation:
    """Invertible matrix taking even-subset coordinates to characters."""

    node: str
    branch: tuple
    matrix: F2Matrix

    def to_character(self, cls: EvenSubsetClass) -> int:
        return self.matrix.apply(cls.to_vector())

    def to_even_subset(self, character: int) -> EvenSubsetClass:
        v = f2_solve(self.matrix, character)
        if v is None:  # pragma: no cover - the matrix is invertible
            raise ValueError("character outside the image")
        return EvenSubsetClass.from_vector(self.branch, v)


def translation(t: TowerDiagram, name: str) -> Translation:
    hs = hyperelliptic_structure(t, name)
    if hs is None:
        raise ValueError(f"{name} has no hyperelliptic structure in this tower")
    grp = Jac2Group(hs.labels)
    cols = [even_subset_character(t, name, b) for b in grp.basis()]
    m = F2Matrix.from_columns(homology_of_node(t, name).rank, cols)
    if m.rank() != grp.rank or m.nrows != grp.rank:
        raise ValueError(f"{name}: even-subset classes do not span H^1")
    return Translation(name, hs.labels, m)


def even_subset_pullback(t: TowerDiagram, upper: str, lower: str, cls: EvenSubsetClass) -> EvenSubsetClass:
    """Pullback in the even-subset model: each Weierstrass point pulls back to
    its preimages; only unramified preimages that are Weierstrass upstairs
    survive (ramified ones and conjugate pairs are multiples of ``g^1_2``)."""
    hl = hyperelliptic_structure(t, lower)
    hu = hyperelliptic_structure(t, upper)
    if hl is None or hu is None:
        raise ValueError("both ends must be hyperelliptic")
    g = t.cover.group
    h_up, h_low = t.node(upper).subgroup, t.node(lower).subgroup
    up_points = dict(zip(hu.points, hu.labels))
    out: set = set()
    for (j, c), lab in zip(hl.points, hl.labels):
        if lab not in cls.subset:
            continue
        m = t.cover.punctures[j]
        if m in h_low and m not in h_up:
            continue  # ramified preimage
        hp_up = h_up + F2Subspace(g.rank, [m])
        hp_low = h_low + F2Subspace(g.rank, [m])
        for s in sorted({hp_up.reduce(x) for x in range(g.order)}):
            if hp_low.reduce(s) == c and (j, s) in up_points:
                out ^= {up_points[(j, s)]}
    return EvenSubsetClass(hu.labels, frozenset(out))


def hyperelliptic_edges(t: TowerDiagram, composites: bool = True) -> list[tuple[str, str]]:
    """Covering pairs (index-2 edges, and with ``composites`` every longer
    path) whose ends carry compatible hyperelliptic structures."""
    if composites:
        pairs = [(u.name, l.name) for u in t.nodes for l in t.nodes
                 if u.name != l.name and t.covers(u.name, l.name)]
    else:
        pairs = [(e.upper, e.lower) for e in t.edges]
    out = []
    for upper, lower in pairs:
        hu, hl = hyperelliptic_structure(t, upper), hyperelliptic_structure(t, lower)
        if hu and hl and t.covers(hu.quotient, hl.quotient):
            out.append((upper, lower))
    return out


@dataclass(frozen=True)
class AgreementReport:
    cases: int
    mismatches: tuple
    edges: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches


def model_agreement(t: TowerDiagram) -> AgreementReport:
    """Compare both models on every pair class of every hyperelliptic edge."""
    cases = 0
    bad = []
    edges = hyperelliptic_edges(t)
    for upper, lower in edges:
        tl, tu = translation(t, lower), translation(t, upper)
        pb = pullback_map(t, upper, lower)
        for cls in Jac2Group(tl.branch).pair_classes():
            cases += 1
            via_chars = pb(tl.to_character(cls))
            via_sets = tu.to_character(even_subset_pullback(t, upper, lower, cls))
            if via_chars != via_sets:
                bad.append((upper, lower, cls.label()))
    return AgreementReport(cases, tuple(bad), tuple(edges))


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class KernelReport:
    source: str
    target: str
    kernel: F2Subspace
    generators: tuple  # EvenSubsetClass when the source is hyperelliptic, else bit strings

    @property
    def dim(self) -> int:
        return self.kernel.dim

    def generator_labels(self) -> list[str]:
        return [g.label() if isinstance(g, EvenSubsetClass) else g for g in self.generators]

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target, "dim": self.dim,
                "kernel": self.kernel.to_json(), "generators": self.generator_labels()}


def _name_generators(t: TowerDiagram, name: str, space: F2Subspace) -> tuple:
    if hyperelliptic_structure(t, name) is None:
        return tuple(bits_to_str(b, space.n) for b in space.basis)
    tr = translation(t, name)
    classes = [tr.to_even_subset(b) for b in space.basis]
    # prefer two-point names when a nonzero element of the span has one
    pairs = [tr.to_even_subset(v) for v in space.elements() if v]
    pairs = sorted({c.subset: c for c in pairs if len(c.display_subset()) == 2}.values(),
                   key=lambda c: [tr.branch.index(b) for b in c.display_subset()])
    chosen: list[EvenSubsetClass] = []
    span = F2Subspace(space.n)
    for c in pairs + classes:
        v = tr.to_character(c)
        if v not in span:
            chosen.append(c)
            span = span + F2Subspace(space.n, [v])
    return tuple(chosen)


def kernel_of_pullback(t: TowerDiagram, upper: str, lower: str) -> KernelReport:
    if upper == lower:
        h = homology_of_node(t, lower)
        return KernelReport(lower, upper, F2Subspace(h.rank), ())
    pb = pullback_map(t, upper, lower)
    ker = f2_kernel(pb.matrix)
    return KernelReport(lower, upper, ker, _name_generators(t, lower, ker))


@dataclass(frozen=True)
class EMKernel:
    """Kernel of ``H^1(E) x H^1(M) -> H^1(S_anti)``: ``literal`` as is and
    ``modulo_l0`` after dividing the target by the class ``l0`` of the
    unramified cover ``S -> S_anti``. Coordinates: E bits first, then M."""

    literal: F2Subspace
    modulo_l0: F2Subspace
    l0: int
    l0_width: int
    rank_e: int
    rank_m: int
    l0_from_e: EvenSubsetClass | None

    def element(self, e_char: int, m_char: int) -> int:
        return e_char | (m_char << self.rank_e)

    def to_json(self) -> dict:
        return {"literal": self.literal.to_json(), "modulo_l0": self.modulo_l0.to_json(),
                "l0": bits_to_str(self.l0, self.l0_width), "rank_e": self.rank_e, "rank_m": self.rank_m,
                "l0_from_e": self.l0_from_e.label() if self.l0_from_e else None}


def product_kernel_EM(t: TowerDiagram, e: str = "E", m: str = "M", top: str = "S_anti",
                      cover: str = "S") -> EMKernel:
    pe, pm = pullback_map(t, top, e), pullback_map(t, top, m)
    re, rm = pe.matrix.ncols, pm.matrix.ncols
    n = homology_of_node(t, top).rank
    cols = pe.matrix.columns() + pm.matrix.columns()
    literal = f2_kernel(F2Matrix.from_columns(n, cols))
    l0 = classifying_class(t, cover, top)
    with_l0 = f2_kernel(F2Matrix.from_columns(n, cols + [l0]))
    mask = (1 << (re + rm)) - 1
    modulo = F2Subspace(re + rm, [v & mask for v in with_l0.basis])
    # which class of E pulls back to l0, if any
    tr = translation(t, e)
    l0_from_e = None
    for v in range(1, 1 << re):
        if pe(v) == l0:
            l0_from_e = tr.to_even_subset(v)
    return EMKernel(literal, modulo, l0, n, re, rm, l0_from_e)


# ---------------------------------------------------------------------------
# twist relation


@dataclass(frozen=True)
class TwistWitness:
    ok: bool
    base: str
    covers: tuple
    branch_loci: dict
    reference_unramified: bool
    differing_loops: tuple

    def to_json(self) -> dict:
        return {"ok": self.ok, "base": self.base, "covers": list(self.covers),
                "branch_counts": {k: len(v) for k, v in self.branch_loci.items()},
                "reference_unramified": self.reference_unramified,
                "differing_loops": list(self.differing_loops)}


TWIST_NODES = {
    "rho": ("Sigma_rho", "S_rho", "S_rho_sigma", "Sigma"),
    "tau": ("Sigma_tau", "S_tau", "S_anti", "Sigma"),
}


def verify_twist_relation(t: TowerDiagram, involution: str = "rho", corrupt: int | None = None) -> TwistWitness:
    """The covers ``S/<i> -> Sigma_i`` and ``S/<i sigma> -> Sigma_i`` should
    share their branch locus and their transition cochains should differ by
    the class of the unramified cover ``Sigma -> Sigma_i``.

    ``corrupt`` flips the first cover's cochain on that edge index.
    """
    base, a, b, ref = TWIST_NODES[involution]
    loci = {a: t.edge(a, base).ramified_points, b: t.edge(b, base).ramified_points,
            ref: t.edge(ref, base).ramified_points}
    ta = transition_cochain(t, a, base)
    if corrupt is not None:
        ta ^= 1 << corrupt
    tb = transition_cochain(t, b, base)
    tr = transition_cochain(t, ref, base)
    cx = t.complex(base)
    diff = ta ^ tb ^ tr
    loops = []
    i = 0
    while diff:
        if diff & 1:
            kind, idx, c = cx.edges[i]
            loops.append(f"{kind}{idx + 1}@{t.cover.group.label(c)}")
        diff >>= 1
        i += 1
    same_locus = set(loci[a]) == set(loci[b])
    unramified = not loci[ref]
    ok = same_locus and unramified and not loops
    return TwistWitness(ok, base, (a, b, ref), {k: list(v) for k, v in loci.items()}, unramified, tuple(loops))


# ---------------------------------------------------------------------------
# deck actions


def deck_action(t: TowerDiagram, name: str, element) -> F2Matrix:
    """Action of a deck element on ``H^1(name)`` in character coordinates."""
    g = t.cover.group
    e = g.element(element)
    h = homology_of_node(t, name)
    cx = h.complex
    perm = [cx.edge_index((k, i), cx.shift(c, e)) for k, i, c in cx.edges]
    cols = []
    for z in h.basis:
        moved = 0
        for i in range(len(cx.edges)):
            if (z >> i) & 1:
                moved |= 1 << perm[i]
        cols.append(h.coordinates(moved))
    # homology action has these columns; cohomology acts by the transpose
    return F2Matrix.from_columns(h.rank, cols).transpose()


def fixed_subspaces(t: TowerDiagram, name: str, elements: Sequence) -> dict:
    """Dimensions of the fixed spaces of each deck element on ``H^1`` and of
    their joint fixed space."""
    h = homology_of_node(t, name)
    out = {}
    joint = F2Subspace(h.rank, [1 << i for i in range(h.rank)])
    for el in elements:
        a = deck_action(t, name, el)
        fix_rows = [r ^ (1 << i) for i, r in enumerate(a.rows)]
        fixed = f2_kernel(F2Matrix(h.rank, h.rank, fix_rows))
        out[t.cover.group.label(t.cover.group.element(el))] = fixed.dim
        joint = joint.intersection(fixed)
    out["joint"] = joint.dim
    out["rank"] = h.rank
    return out
