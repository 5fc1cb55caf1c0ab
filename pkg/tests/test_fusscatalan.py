import itertools
import random

import pytest

from freefusion import fusscatalan as fc
from freefusion.free_product import UNIT, Letter, Word
from freefusion.laurent import LaurentPoly, quantum_int, t_names

from oracles import catalan, perfect_matchings


# -- independent oracles --------------------------------------------------------------


def valid_by_hand(bottom, top, pairs, allow_bottom_pairs=True):
    nb, nt = len(bottom), len(top)

    def color(p):
        return bottom[p] if p < nb else top[p - nb]

    def circ(p):
        return p if p < nb else nb + nt - 1 - (p - nb)

    for p, q in pairs:
        (cp, sp), (cq, sq) = color(p), color(q)
        same_side = (p < nb) == (q < nb)
        if cp != cq:
            return False
        if same_side and p < nb and not allow_bottom_pairs:
            return False
        if same_side == (sp == sq):
            return False
    arcs = [sorted((circ(p), circ(q))) for p, q in pairs]
    for (a, b), (c, d) in itertools.combinations(arcs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def brute_basis(bottom, top, allow_bottom_pairs=True):
    size = len(bottom) + len(top)
    out = set()
    for pairs in perfect_matchings(range(size)):
        if valid_by_hand(bottom, top, pairs, allow_bottom_pairs):
            out.add(frozenset(tuple(sorted(p)) for p in pairs))
    return out


def stack_oracle(upper, lower):
    """Union-find composition: returns (pairs of the result, loop colors)."""
    parent = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    mid = lower.nt

    def lname(p):  # lower top point i is the middle point i
        return ("m", p - lower.nb) if p >= lower.nb else ("b", p)

    def uname(p):  # upper bottom point i is the middle point i
        return ("m", p) if p < upper.nb else ("t", p - upper.nb)

    for p, q in lower.pairs():
        union(lname(p), lname(q))
    for p, q in upper.pairs():
        union(uname(p), uname(q))
    groups = {}
    for node in [("b", i) for i in range(lower.nb)] + [("m", i) for i in range(mid)] + [("t", i) for i in range(upper.nt)]:
        groups.setdefault(find(node), []).append(node)
    pairs, loops = [], []
    for nodes in groups.values():
        ext = [n for n in nodes if n[0] != "m"]
        if not ext:
            loops.append(lower.top[nodes[0][1]][0])
            continue
        ids = sorted(i if kind == "b" else lower.nb + i for kind, i in ext)
        pairs.append(tuple(ids))
    return frozenset(pairs), sorted(loops)


def as_pairs(d):
    return frozenset(d.pairs())


# -- boundary words and patterns --------------------------------------------------------


def test_boundary_word_examples():
    assert str(fc.boundary_word(2, 4)) == "x1 x2 x2* x1*"
    assert str(fc.boundary_word(1, 3)) == "x1 x1* x1"
    assert len(fc.boundary_word(3, 0)) == 0
    assert str(fc.boundary_word(2, 6)) == "x1 x2 x2* x1* x1 x2"
    with pytest.raises(ValueError):
        fc.boundary_word(0, 2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_boundary_word_star_bits_follow_occurrence_parity(m):
    w = fc.boundary_word(m, 4 * m + 1)
    assert fc.pattern_of(w.colors) == w


def test_sigma_text():
    assert fc.parse_sigma("x1x1x2") == (1, 1, 2)
    assert fc.parse_sigma("1") == ()
    assert fc.format_sigma((2, 1)) == "x2x1"
    for bad in ("y1", "x0", "x1xa"):
        with pytest.raises(ValueError):
            fc.parse_sigma(bad)


# -- enumeration ----------------------------------------------------------------------


@pytest.mark.parametrize("m,n", [(1, k) for k in range(0, 6)] + [(2, k) for k in range(0, 6)] + [(3, k) for k in range(0, 6)])
def test_basis_matches_brute_force(m, n):
    w = fc.boundary_word(m, n)
    got = {as_pairs(d) for d in fc.enumerate_basis(m, n)}
    assert got == brute_basis(w, w)


def test_dim_formula_examples():
    assert fc.dim_formula(2, 4) == 3
    assert fc.dim_formula(2, 8) == 55
    assert [fc.dim_formula(1, k) for k in range(11)] == [catalan(k) for k in range(11)]
    assert [len(fc.enumerate_basis(1, n)) for n in range(1, 5)] == [1, 2, 5, 14]
    assert [len(fc.enumerate_basis(2, n)) for n in range(1, 9)] == [1, 1, 2, 3, 7, 12, 30, 55]
    assert len(fc.enumerate_basis(2, 0)) == 1


def test_enumeration_guard():
    with pytest.raises(fc.GuardError):
        fc.enumerate_basis(1, 15)
    assert len(fc.enumerate_basis(1, 3, guard_points=6)) == 5
    with pytest.raises(fc.GuardError):
        fc.enumerate_basis(1, 4, guard_points=6)


def test_every_diagram_passes_validator():
    for m, n in [(1, 6), (2, 7), (3, 6)]:
        for d in fc.enumerate_basis(m, n):
            assert fc.diagram_violation(d) is None
            assert valid_by_hand(d.bottom, d.top, d.pairs())


def test_validator_catches_errors():
    w4 = fc.boundary_word(1, 4)
    crossing = fc.diagram_from_pairs(w4, w4, [(0, 6), (2, 4), (1, 7), (3, 5)])
    assert "cross" in fc.diagram_violation(crossing)
    w = fc.boundary_word(1, 2)
    w2 = fc.boundary_word(2, 2)
    wrong_color = fc.PlanarDiagram(w2, w2, (1, 0, 3, 2))
    assert "color" in fc.diagram_violation(wrong_color)
    assert fc.diagram_violation(fc.PlanarDiagram(w, w, (1, 0, 2, 3))) is not None


def test_serialization_round_trip():
    for m, n in [(1, 4), (2, 5), (3, 4)]:
        for d in fc.enumerate_basis(m, n):
            text = d.serialize(m)
            assert text.startswith(f"m={m};n={n};match=")
            assert fc.parse_diagram(text) == d
    d = fc.enumerate_basis(1, 2)[0]
    assert d.serialize(1) in ("m=1;n=2;match=0↔1,2↔3", "m=1;n=2;match=0↔2,1↔3")
    with pytest.raises(ValueError):
        fc.parse_diagram("m=1;n=2;match=0↔3,1↔2")


# -- multiplication and trace ------------------------------------------------------------


def test_e_squared_and_identity():
    A = fc.FCAlgebra(1, 2)
    (a,) = A.loops
    assert A.E(1) * A.E(1) == A.E(1).scale(a)
    assert A.identity() * A.E(1) == A.E(1) == A.E(1) * A.identity()
    assert fc.markov_trace(A.E(1)) == a
    assert fc.markov_trace(A.identity()) == a * a


def test_temperley_lieb_relations():
    A = fc.FCAlgebra(1, 4)
    for i in (1, 2):
        assert A.E(i) * A.E(i + 1) * A.E(i) == A.E(i)
        assert A.E(i + 1) * A.E(i) * A.E(i + 1) == A.E(i + 1)
    assert A.E(1) * A.E(3) == A.E(3) * A.E(1)


def test_e_relation_with_normalised_generators():
    A = fc.FCAlgebra(1, 3)
    (a,) = A.loops
    inv = a ** -1
    e1, e2 = A.E(1).scale(inv), A.E(2).scale(inv)
    assert e1 * e2 * e1 == e1.scale(inv * inv)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_trace_of_identity(m):
    n = 2
    A = fc.FCAlgebra(m, m * n)
    expected = LaurentPoly.one(A.names)
    for loop in A.loops:
        expected = expected * loop ** n
    assert fc.markov_trace(A.identity()) == expected


@pytest.mark.parametrize("m,n", [(1, 4), (2, 4), (2, 5), (3, 4)])
def test_multiply_matches_union_find_oracle(m, n):
    basis = fc.enumerate_basis(m, n)
    rng = random.Random(m * 10 + n)
    loops = fc.a_loops(m)
    pairs = list(itertools.product(basis, repeat=2))
    for du, dl in rng.sample(pairs, min(len(pairs), 120)):
        prod = fc.multiply(fc.AlgebraElement.basis_element(du, loops), fc.AlgebraElement.basis_element(dl, loops))
        (d, c), = prod.terms.items()
        want_pairs, loop_colors = stack_oracle(du, dl)
        assert as_pairs(d) == want_pairs
        want = LaurentPoly.one(loops[0].names)
        for col in loop_colors:
            want = want * loops[col - 1]
        assert c == want


def closure_loop_colors(d):
    # glue top i to bottom i and count components by color with union-find
    n = d.nb
    parent = list(range(2 * n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in d.pairs():
        parent[find(p)] = find(q)
    for i in range(n):
        parent[find(i)] = find(n + i)
    counts = {}
    for root in {find(p) for p in range(2 * n)}:
        color = d.color(root)[0]
        counts[color] = counts.get(color, 0) + 1
    return tuple(sorted(counts.items()))


def test_closure_matches_union_find():
    # right and left closures glue the same point pairs, so one count covers both sides
    for m, n in [(1, 5), (2, 5), (3, 4)]:
        for d in fc.enumerate_basis(m, n):
            assert fc._closure_loops(d) == closure_loop_colors(d)


def test_pattern_mismatch_raises():
    A, B = fc.FCAlgebra(1, 2), fc.FCAlgebra(1, 3)
    with pytest.raises(ValueError):
        A.E(1) * B.E(1)
    v = fc.AlgebraElement.basis_element(fc.enumerate_module_basis((), 1, 2)[0], A.loops)
    with pytest.raises(ValueError):
        fc.markov_trace(v)


def test_element_arithmetic():
    A = fc.FCAlgebra(2, 3)
    x = A.identity() + A.scalar(2)
    assert x == A.scalar(3)
    assert x - x == A.zero()
    assert not A.zero()
    assert 2 * A.identity() == A.identity() * 2


# -- modules ------------------------------------------------------------------------------


def test_module_examples():
    assert len(fc.enumerate_module_basis((), 1, 2)) == 1
    assert len(fc.enumerate_module_basis((1, 1), 1, 2)) == 1
    with pytest.raises(ValueError):
        fc.enumerate_module_basis((3,), 2, 2)


@pytest.mark.parametrize("m,n", [(1, 4), (2, 4), (2, 5), (3, 4)])
def test_module_basis_matches_brute_force(m, n):
    w = fc.boundary_word(m, n)
    for size in range(n + 1):
        for sigma in itertools.product(range(1, m + 1), repeat=size):
            got = {as_pairs(d) for d in fc.enumerate_module_basis(sigma, m, n)}
            assert got == brute_basis(fc.pattern_of(sigma), w, allow_bottom_pairs=False)


@pytest.mark.parametrize("m,n", [(1, 6), (2, 6), (3, 5)])
def test_module_dimensions_independent_count(m, n):
    dims = fc.module_dimensions(m, n)
    for size in range(n + 1):
        for sigma in itertools.product(range(1, m + 1), repeat=size):
            assert dims.get(sigma, 0) == len(fc.enumerate_module_basis(sigma, m, n))


def test_action_is_a_module_action():
    m, n, sigma = 2, 4, (1, 2)
    A = fc.FCAlgebra(m, n)
    vs = [fc.AlgebraElement.basis_element(d, A.loops) for d in fc.enumerate_module_basis(sigma, m, n)]
    basis = [A.diagram(d) for d in A.basis()]
    for x, y in itertools.product(basis, repeat=2):
        for v in vs:
            assert fc.act(x * y, v) == fc.act(x, fc.act(y, v))
    for v in vs:
        assert fc.act(A.identity(), v) == v


def test_dictionary():
    assert fc.sigma_of_simple(Word([Letter(1, 2)])) == (1, 1)
    assert fc.sigma_of_simple(Word([Letter(1, 2), Letter(2, 1)])) == (1, 1, 2)
    assert fc.simple_of_sigma((2,)) == Word([Letter(2, 1)])
    assert fc.simple_of_sigma(()) == UNIT
    for size in range(6):
        for sigma in itertools.product((1, 2, 3), repeat=size):
            assert fc.sigma_of_simple(fc.simple_of_sigma(sigma)) == sigma
    with pytest.raises(ValueError):
        fc.simple_of_sigma((0,))
    with pytest.raises(ValueError):
        fc.simple_of_sigma((3,), m=2)


def test_hom_module_examples():
    assert fc.hom_module_match((1, 2), 2, 2).passed
    r = fc.hom_module_match((), 2, 4)
    assert (r.module_dim, r.hom_dim) == (1, 1)


def test_branching_small_case():
    r = fc.branching_check((), None, 1, 1, 1)
    assert (r.upper, r.lower_minus, r.lower_plus) == (0, 0, 0)
    r = fc.branching_check((), 1, 1, 1, 2)
    assert (r.upper, r.lower_minus, r.lower_plus) == (2, 1, 1)
    with pytest.raises(ValueError):
        fc.branching_check((), 2, 1, 2, 0)  # w_1 ends in x1
    with pytest.raises(ValueError):
        fc.branching_check((1,), 1, 1, 1, 2)
    with pytest.raises(ValueError):
        fc.branching_check((), 1, 0, 1, 2)


def test_trace_weights():
    names = t_names(1)
    assert fc.trace_weight((1,), 1) == quantum_int(2, 0, names)
    assert str(fc.trace_weight((1, 1), 1)) == "t^2 + 1 + t^-2"
    assert fc.trace_weight((), 1) == 1
    t1, t2 = LaurentPoly.gens(t_names(2))
    assert fc.trace_weight((1, 2, 2), 2) == (t1 + t1 ** -1) * (t2 ** 2 + 1 + t2 ** -2)


def test_trace_weight_is_trace_of_minimal_projection_count():
    # d_sigma at t = 1 equals the dimension of the corresponding SU(2)^m representation
    for sigma in [(1,), (1, 1), (1, 2, 2), (2, 1, 1, 1)]:
        runs = [len(list(g)) for _, g in itertools.groupby(sigma)]
        expected = 1
        for k in runs:
            expected *= k + 1
        assert fc.trace_weight(sigma, 2).eval_at([1, 1]) == expected


def test_partition_identity_small():
    rep = fc.partition_identity_check(1, 2)
    assert rep.passed and str(rep.lhs) == str(rep.rhs) == "t^2 + 2 + t^-2"
    with pytest.raises(fc.GuardError):
        fc.partition_identity_check(2, 8)


def test_hecke_small():
    assert fc.hecke_relations_check(3).passed
