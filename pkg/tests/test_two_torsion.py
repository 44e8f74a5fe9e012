from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equibrane.exact import F2Subspace
from equibrane.towers import GENUS3_DIAGRAM, build_free_tower
from equibrane.two_torsion import (
    EvenSubsetClass,
    Jac2Group,
    classifying_class,
    deck_action,
    even_subset_character,
    fixed_subspaces,
    homology_of_node,
    hyperelliptic_edges,
    hyperelliptic_structure,
    jac2_group,
    kernel_of_pullback,
    model_agreement,
    product_kernel_EM,
    pullback_map,
    transition_cochain,
    translation,
    verify_twist_relation,
    weil_pairing,
)
from equibrane.surfaces import HyperellipticModel


@st.composite
def classes(draw, n_classes=2):
    g = draw(st.integers(1, 5))
    branch = tuple(f"b{i}" for i in range(2 * g + 2))
    out = []
    for _ in range(n_classes):
        sub = draw(st.sets(st.sampled_from(branch)))
        if len(sub) % 2:
            sub ^= {branch[-1]}
        out.append(EvenSubsetClass.of(branch, sub))
    return out


# ---------------------------------------------------------------------------
# even-subset model


def test_group_sizes():
    grp = jac2_group(HyperellipticModel([str(k) for k in range(1, 9)]))
    assert grp.rank == 6 and grp.order == 64
    assert len({c.subset for c in grp.elements()}) == 64
    assert len(grp.pair_classes()) == 28  # C(8, 2): no pair equals another pair or its complement
    assert len(Jac2Group(("a", "b", "c", "d")).pair_classes()) == 3  # genus 1: {ab} = {cd}


def test_complement_identified():
    branch = ("a", "b", "c", "d", "e", "f")
    assert EvenSubsetClass.of(branch, {"a", "b"}) == EvenSubsetClass.of(branch, {"c", "d", "e", "f"})
    assert EvenSubsetClass.of(branch, set(branch)).is_zero()
    with pytest.raises(ValueError):
        EvenSubsetClass.of(branch, {"a"})
    with pytest.raises(ValueError):
        EvenSubsetClass.of(branch, {"a", "z"})


def test_display_prefers_smaller_side():
    branch = ("0", "inf", "1", "2", "3", "4")
    c = EvenSubsetClass.of(branch, {"0", "inf"})
    assert c.label() == "{0,inf}"


@given(classes(3))
def test_weil_pairing_bilinear_alternating(cs):
    a, b, c = cs
    assert weil_pairing(a, a) == 0
    assert weil_pairing(a, b) == weil_pairing(b, a)
    assert weil_pairing(a + b, c) == weil_pairing(a, c) ^ weil_pairing(b, c)


@given(classes(2))
def test_vector_round_trip(cs):
    a, b = cs
    assert EvenSubsetClass.from_vector(a.branch, a.to_vector()) == a
    assert (a + b).to_vector() == a.to_vector() ^ b.to_vector()


@given(classes(2), st.randoms(use_true_random=False))
def test_pairing_invariant_under_relabeling(cs, rnd):
    a, b = cs
    perm = list(a.branch)
    rnd.shuffle(perm)
    ren = dict(zip(a.branch, perm))
    a2 = EvenSubsetClass.of(a.branch, {ren[x] for x in a.subset})
    b2 = EvenSubsetClass.of(a.branch, {ren[x] for x in b.subset})
    assert weil_pairing(a2, b2) == weil_pairing(a, b)


@given(classes(2))
def test_handle_loops_are_symplectic(cs):
    """The pairing equals the intersection form read off the handle loops."""
    a, b = cs
    va, vb = a.handle_vector(), b.handle_vector()
    form = 0
    for i in range(a.genus):
        ai, bi = (va >> 2 * i) & 1, (va >> 2 * i + 1) & 1
        aj, bj = (vb >> 2 * i) & 1, (vb >> 2 * i + 1) & 1
        form ^= (ai & bj) ^ (bi & aj)
    assert form == weil_pairing(a, b)


def test_pairing_nondegenerate():
    grp = Jac2Group(tuple("abcdefgh"))
    for c in grp.elements():
        if not c.is_zero():
            assert any(weil_pairing(c, d) for d in grp.basis())


# ---------------------------------------------------------------------------
# character model on the towers


def test_homology_ranks(g3, free2, free3):
    for t in (g3, free2, free3):
        for n in t.nodes:
            assert homology_of_node(t, n.name).rank == 2 * n.genus


def test_pullback_functorial(g3):
    """Pulling back in two steps equals pulling back directly."""
    for top, mid, bottom in [("S", "S_psi", "Sigma_Klein"), ("S", "S_tau", "Sigma_Klein"),
                             ("S_anti", "E", "base"), ("Sigma", "Sigma_tau", "base")]:
        direct = pullback_map(g3, top, bottom)
        step = pullback_map(g3, top, mid).matrix @ pullback_map(g3, mid, bottom).matrix
        assert direct.matrix == step


def test_pullback_rejects_non_cover(g3):
    with pytest.raises(ValueError):
        pullback_map(g3, "Sigma", "S")


def test_unramified_edges_kill_exactly_their_class(g3, free2):
    for t in (g3, free2):
        for e in t.edges:
            k = kernel_of_pullback(t, e.upper, e.lower).kernel
            if e.unramified:
                cls = classifying_class(t, e.upper, e.lower)
                assert cls and k == F2Subspace(k.n, [cls])
                assert homology_of_node(t, e.lower).is_cocycle(transition_cochain(t, e.upper, e.lower))
            else:
                assert k.dim == 0
                with pytest.raises(ValueError):
                    classifying_class(t, e.upper, e.lower)


def test_pulled_back_classes_are_invariant(g3):
    """Classes pulled back from S/H are fixed by every element of H."""
    for lower in ("Sigma", "Sigma_Klein", "E", "M"):
        pb = pullback_map(g3, "S", lower)
        h = g3.node(lower).subgroup
        for elem in h.elements():
            act = deck_action(g3, "S", elem)
            for v in range(pb.matrix.ncols):
                w = pb(1 << v)
                assert act.apply(w) == w


def test_deck_actions_form_the_group(g3):
    a = {e: deck_action(g3, "S", e) for e in ("sigma", "psi", "tau")}
    ident = deck_action(g3, "S", "1")
    for m in a.values():
        assert m @ m == ident
    assert a["sigma"] @ a["psi"] == a["psi"] @ a["sigma"]
    assert a["sigma"] @ a["tau"] == deck_action(g3, "S", "sigma*tau")


def test_fixed_subspaces(g3):
    fx = fixed_subspaces(g3, "S", ["sigma", "tau", "psi"])
    assert fx["rank"] == 18
    # the fixed part contains the pullback of H^1 of the quotient, of rank 2 g(S/<e>)
    assert fx["sigma"] >= 6 and fx["tau"] >= 10 and fx["psi"] >= 10
    assert fx["joint"] >= 6


def test_free_kernel_is_classifying_class(free2, free3):
    for t in (free2, free3):
        k = kernel_of_pullback(t, "S", "S_tau")
        assert k.kernel.basis == (classifying_class(t, "S", "S_tau"),)


@pytest.mark.parametrize("cls", ["0100", "1100", "0011", "1111"])
def test_free_kernel_other_classes(cls):
    t = build_free_tower(2, cls)
    k = kernel_of_pullback(t, "S", "S_tau")
    assert k.dim == 1 and k.kernel.basis == (classifying_class(t, "S", "S_tau"),)


# ---------------------------------------------------------------------------
# hyperelliptic nodes and model agreement


def test_hyperelliptic_nodes(g3):
    hs = hyperelliptic_structure(g3, "Sigma_Klein")
    assert hs.quotient == "base" and len(hs.labels) == 8
    assert set(hyperelliptic_structure(g3, "E").labels) == {"0", "inf", "1", "-1"}
    assert hyperelliptic_structure(g3, "Sigma_psi") is None  # genus 0


def test_translation_invertible(g3):
    for name in ("Sigma_Klein", "E", "M", "Sigma_tau"):
        tr = translation(g3, name)
        grp = Jac2Group(tr.branch)
        chars = {tr.to_character(c) for c in grp.elements()}
        assert len(chars) == grp.order
        for c in grp.elements():
            assert tr.to_even_subset(tr.to_character(c)) == c


def test_even_subset_characters_linear(g3):
    tr = translation(g3, "Sigma_Klein")
    pairs = Jac2Group(tr.branch).pair_classes()
    for a, b in combinations(pairs[:8], 2):
        assert even_subset_character(g3, "Sigma_Klein", a + b) == \
            even_subset_character(g3, "Sigma_Klein", a) ^ even_subset_character(g3, "Sigma_Klein", b)


def test_model_agreement(g3):
    rep = model_agreement(g3)
    assert rep.ok and rep.cases >= 100
    assert ("S_psi", "Sigma_Klein") in hyperelliptic_edges(g3)


def test_free_tower_has_no_hyperelliptic_edges(free2):
    assert hyperelliptic_edges(free2) == []


# ---------------------------------------------------------------------------
# the genus-3 kernels


def test_klein_kernel(g3):
    k = kernel_of_pullback(g3, "S", "Sigma_Klein")
    assert k.dim == 2
    assert sorted(k.generator_labels()) == ["{0,inf}", "{1,-1}"]
    assert pullback_map(g3, "S", "Sigma_Klein").matrix.rank() == 4


def test_em_kernel(g3):
    em = product_kernel_EM(g3)
    tr_e, tr_m = translation(g3, "E"), translation(g3, "M")
    a = em.element(tr_e.to_character(EvenSubsetClass.of(tr_e.branch, {"1", "-1"})), 0)
    b = em.element(0, tr_m.to_character(EvenSubsetClass.of(tr_m.branch, {"0", "inf"})))
    c = em.element(0, tr_m.to_character(EvenSubsetClass.of(tr_m.branch, {"2", "-2"})))
    assert em.modulo_l0.dim == 2
    assert a in em.modulo_l0 and b in em.modulo_l0 and c not in em.modulo_l0
    assert em.literal.dim == 1
    assert em.l0_from_e is not None and em.l0_from_e.label() == "{1,-1}"


def test_sigma_to_sigma_tau_kernel(g3):
    assert kernel_of_pullback(g3, "Sigma", "Sigma_tau").generator_labels() == ["{1,-1}"]


def test_twist_relation_tau(g3):
    w = verify_twist_relation(g3, "tau")
    assert w.ok and w.differing_loops == ()
    bad = verify_twist_relation(g3, "tau", corrupt=0)
    assert not bad.ok and len(bad.differing_loops) == 1


def test_twist_relation_rho_reports_ramified_reference(g3):
    w = verify_twist_relation(g3, "rho")
    assert not w.reference_unramified
    counts = {k: len(v) for k, v in w.branch_loci.items()}
    assert counts["S_rho"] != counts["S_rho_sigma"]


def test_every_named_node_present(g3):
    for n in GENUS3_DIAGRAM:
        assert homology_of_node(g3, n).rank == 2 * g3.node(n).genus
