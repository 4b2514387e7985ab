import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discocat.lambek import Compose, EvL, EvR, Id, NameL, Par, check, prove
from discocat.lexicon import load_grammar
from discocat.pregroup import reduce
from discocat.semantics import (IDENTITY_2, SWAP_2, ApplyMatrix, ContractionPlan,
                                LoadWord, SemanticsError, ShapeError, SpaceAssignment,
                                TensorJoin, compact_modifier_tensor, compile_lambek,
                                compile_pregroup, compile_sentence, execute, infer_spaces,
                                meaning, name_tensor, quantise_type, word_shape)
from discocat.types import parse_lambek_type as T
from discocat.types import parse_pregroup_type

GRAMMAR = load_grammar()


def random_words(rng, n_dim, s_dim):
    return {"men": rng.normal(size=n_dim), "dogs": rng.normal(size=n_dim),
            "kill": rng.normal(size=(n_dim, s_dim, n_dim)), "cute": rng.normal(size=(n_dim, n_dim))}


def loop_transitive(subj, verb, obj):
    n, s, _ = verb.shape
    out = np.zeros(s)
    for i, j, k in itertools.product(range(n), range(s), range(n)):
        out[j] += verb[i, j, k] * subj[i] * obj[k]
    return out


def loop_adjective(adj, noun):
    out = np.zeros(adj.shape[0])
    for l, m in itertools.product(*map(range, adj.shape)):
        out[l] += adj[l, m] * noun[m]
    return out


def loop_adjective_object(subj, verb, adj, obj):
    n, s, _ = verb.shape
    out = np.zeros(s)
    for i, j, k, l, m in itertools.product(range(n), range(s), range(n), range(n), range(n)):
        out[j] += verb[i, j, k] * adj[l, m] * subj[i] * (k == l) * obj[m]
    return out


def test_quantise_examples():
    sa = SpaceAssignment({"n": 2, "s": 3})
    assert quantise_type(T("(n -o s) o- n"), sa) == (2, 3, 2)
    assert quantise_type(T("1"), sa) == ()
    assert quantise_type(T("n o- n"), SpaceAssignment({"n": 4})) == (4, 4)
    assert quantise_type(T("(sigma -o j) o- (sigma -o j)"), sa) == (2, 3, 2, 3)
    assert word_shape(T("(sigma -o j) o- (sigma -o j)"), sa) == (2, 3, 3, 2)
    with pytest.raises(SemanticsError, match="'q'"):
        quantise_type(T("q"), sa)


def test_aliases_share_dimensions():
    sa = SpaceAssignment({"n": 5, "s": 7})
    assert sa.dim("sigma") == 5 and sa.dim("j") == 7


def test_infer_spaces_conflict():
    with pytest.raises(ShapeError):
        infer_spaces([T("n"), T("n")], [np.zeros(2), np.zeros(3)])
    with pytest.raises(ShapeError):
        infer_spaces([T("n o- n")], [np.zeros(2)])
    sa = infer_spaces([T("(n -o s) o- n")], [np.zeros((2, 3, 2))])
    assert (sa.dim("n"), sa.dim("s"), sa.dim("sigma")) == (2, 3, 2)


def test_transitive_basis_selection():
    kill = np.arange(12.0).reshape(2, 3, 2)
    words = {"men": np.array([1.0, 0.0]), "dogs": np.array([0.0, 1.0]), "kill": kill}
    for logic in ("pregroup", "lambek"):
        assert np.array_equal(meaning("men kill dogs".split(), GRAMMAR, words, logic), kill[0, :, 1])


def test_single_word_plan():
    r = reduce(parse_pregroup_type("n").factors, "n")
    plan = compile_pregroup(r, SpaceAssignment({"n": 3}))
    assert plan.steps == (LoadWord(0, 0), TensorJoin())
    v = np.array([1.0, 2.0, 3.0])
    assert np.array_equal(execute(plan, [v]), v)


def test_transitive_plan_matches_closed_form():
    rng = np.random.default_rng(0)
    w = random_words(rng, 3, 4)
    got = meaning("men kill dogs".split(), GRAMMAR, w)
    assert np.max(np.abs(got - loop_transitive(w["men"], w["kill"], w["dogs"]))) <= 1e-12


def test_adjective_object_plan_matches_closed_form():
    rng = np.random.default_rng(1)
    w = random_words(rng, 3, 2)
    got = meaning("men kill cute dogs".split(), GRAMMAR, w, "lambek")
    want = loop_adjective_object(w["men"], w["kill"], w["cute"], w["dogs"])
    assert np.max(np.abs(got - want)) <= 1e-12


def test_intransitive_evaluation():
    rng = np.random.default_rng(2)
    men, verb = rng.normal(size=3), rng.normal(size=(3, 2))
    sa = SpaceAssignment({"n": 3, "s": 2})
    plan = compile_lambek(EvL(T("n"), T("s")), sa)
    want = sum(verb[i, j] * men[i] * np.eye(2)[j] for i in range(3) for j in range(2))
    assert np.allclose(execute(plan, [men, verb]), want, atol=1e-12)


def test_identity_plan():
    sa = SpaceAssignment({"n": 3})
    v = np.array([1.0, -2.0, 0.5])
    assert np.array_equal(execute(compile_lambek(Id(T("n")), sa), [v]), v)


def test_adjective_matches_closed_form():
    rng = np.random.default_rng(7)
    w = random_words(rng, 4, 2)
    for logic in ("pregroup", "lambek"):
        got = meaning("cute dogs".split(), GRAMMAR, w, logic)
        assert np.max(np.abs(got - loop_adjective(w["cute"], w["dogs"]))) <= 1e-12


def test_word_order_matters():
    rng = np.random.default_rng(3)
    w = random_words(rng, 3, 3)
    a = meaning("men kill dogs".split(), GRAMMAR, w)
    b = meaning("dogs kill men".split(), GRAMMAR, w)
    assert not np.allclose(a, b)


def truth_words():
    kill = np.zeros((2, 2, 2))
    kill[0, 0, 1] = 1          # men kill dogs: true
    kill[0, 1, 0] = kill[1, 1, 0] = kill[1, 1, 1] = 1
    return {"men": np.array([1.0, 0.0]), "dogs": np.array([0.0, 1.0]), "kill": kill,
            "do": compact_modifier_tensor(IDENTITY_2, 2),
            "not": compact_modifier_tensor(SWAP_2, 2)}


@pytest.mark.parametrize("logic", ["pregroup", "lambek"])
def test_negation_swaps_truth_value(logic):
    w = truth_words()
    positive = meaning("men kill dogs".split(), GRAMMAR, w, logic)
    negated = meaning("men do not kill dogs".split(), GRAMMAR, w, logic)
    assert np.array_equal(positive, [1, 0])
    assert np.array_equal(negated, SWAP_2 @ positive)


def test_compact_modifier_layout():
    m = np.array([[1.0, 2.0], [3.0, 4.0]])
    t = compact_modifier_tensor(m, 3)
    assert t.shape == (3, 2, 2, 3)
    for e, f, g, h in itertools.product(range(3), range(2), range(2), range(3)):
        assert t[e, f, g, h] == (e == h) * m[f, g]


def test_negation_diverges_when_the_map_touches_subjects():
    w = truth_words()
    flip = np.array([[0.0, 1.0], [1.0, 0.0]])
    full = np.kron(flip, SWAP_2)               # acts on the subject and the sentence
    monoidal_not = name_tensor(full, (2, 2), (2, 2), side="right").transpose(0, 1, 3, 2)
    lam = meaning("men do not kill dogs".split(), GRAMMAR, dict(w, **{"not": monoidal_not}), "lambek")
    compact = meaning("men do not kill dogs".split(), GRAMMAR, w, "pregroup")
    assert not np.allclose(lam, compact)
    same = name_tensor(np.kron(np.eye(2), SWAP_2), (2, 2), (2, 2), side="right").transpose(0, 1, 3, 2)
    lam = meaning("men do not kill dogs".split(), GRAMMAR, dict(w, **{"not": same}), "lambek")
    assert np.max(np.abs(lam - compact)) <= 1e-12


def test_name_tensor_examples():
    assert np.array_equal(name_tensor(np.eye(2)), [[1, 0], [0, 1]])
    swap = name_tensor(SWAP_2)
    v = np.array([3.0, 5.0])
    sa = SpaceAssignment({"s": 2})
    out = execute(compile_lambek(EvL(T("s"), T("s")), sa), [v, swap])
    assert np.array_equal(out, [5, 3])
    assert not name_tensor(np.zeros((2, 3))).any()
    with pytest.raises(ShapeError):
        name_tensor(np.eye(2), (3,), (2,))


def test_right_name_evaluates_from_the_right():
    rng = np.random.default_rng(4)
    m, v = rng.normal(size=(3, 2)), rng.normal(size=2)
    t = name_tensor(m, side="right")
    plan = compile_lambek(EvR(T("s"), T("n")), SpaceAssignment({"n": 2, "s": 3}))
    assert np.allclose(execute(plan, [t, v]), m @ v, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_yanking(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m, v = rng.normal(size=(rows, cols)), rng.normal(size=cols)
    sa = SpaceAssignment({"n": cols, "s": rows})
    plan = compile_lambek(EvL(T("n"), T("s")), sa)
    assert np.max(np.abs(execute(plan, [v, name_tensor(m)]) - m @ v)) <= 1e-12


def test_name_constructor_compiles_to_the_name():
    sa = SpaceAssignment({"n": 3, "s": 2})
    d = NameL(EvR(T("s"), T("n")))
    out = execute(compile_lambek(d, sa, []), [])
    assert out.shape == quantise_type(check(d)[1], sa) == (2, 3, 3, 2)
    want = np.zeros((2, 3, 3, 2))
    for a, b in itertools.product(range(2), range(3)):
        want[a, b, b, a] = 1
    assert np.array_equal(out, want)
    assert np.array_equal(execute(compile_lambek(NameL(Id(T("n"))), sa, []), []), np.eye(3))


def test_curry_then_evaluate_is_the_original():
    rng = np.random.default_rng(6)
    sa = SpaceAssignment({"n": 3, "s": 2})
    men, kill, dogs = rng.normal(size=3), rng.normal(size=(3, 2, 3)), rng.normal(size=3)
    direct = prove([T("n"), T("(n -o s) o- n"), T("n")], T("s"))
    # lift the subject and apply it: n |- s o- (n -o s), then evaluate
    lifted = prove([T("n")], T("s o- (n -o s)"))
    vp = prove([T("(n -o s) o- n"), T("n")], T("n -o s"))
    d = Compose(EvR(T("s"), T("n -o s")), Par(lifted, vp))
    types = [T("n"), T("(n -o s) o- n"), T("n")]
    a = execute(compile_lambek(direct, sa, types), [men, kill, dogs])
    b = execute(compile_lambek(d, sa, types), [men, kill, dogs])
    assert np.max(np.abs(a - b)) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_composition_is_functorial(n_dim, s_dim, seed):
    rng = np.random.default_rng(seed)
    sa = SpaceAssignment({"n": n_dim, "s": s_dim})
    f = Par(Id(T("n")), EvR(T("n -o s"), T("n")))
    g = EvL(T("n"), T("s"))
    types = [T("n"), T("(n -o s) o- n"), T("n")]
    men, kill, dogs = rng.normal(size=n_dim), rng.normal(size=(n_dim, s_dim, n_dim)), rng.normal(size=n_dim)
    whole = execute(compile_lambek(Compose(g, f), sa, types), [men, kill, dogs])
    middle = execute(compile_lambek(f, sa, types), [men, kill, dogs])
    # Q(g) is linear, so feed it the middle tensor one basis slice at a time
    plan_g = compile_lambek(g, sa)
    basis = np.eye(n_dim)
    staged = sum(execute(plan_g, [basis[a], middle[a]]) for a in range(n_dim))
    assert np.max(np.abs(whole - staged)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["men kill dogs", "men kill cute dogs", "cute men kill dogs", "cute dogs"]),
       st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_logics_agree(sentence, n_dim, s_dim, seed):
    w = random_words(np.random.default_rng(seed), n_dim, s_dim)
    a = meaning(sentence.split(), GRAMMAR, w, "pregroup")
    b = meaning(sentence.split(), GRAMMAR, w, "lambek")
    assert np.max(np.abs(a - b)) <= 1e-12


def test_plan_json_round_trip():
    w = truth_words()
    for logic in ("pregroup", "lambek"):
        _, plan, inputs = compile_sentence("men do not kill dogs".split(), GRAMMAR, w, logic)
        again = ContractionPlan.from_dict(plan.to_dict())
        assert again == plan
        assert np.array_equal(execute(again, inputs), execute(plan, inputs))


def test_apply_matrix_step():
    w = truth_words()
    _, plan, inputs = compile_sentence("men kill dogs".split(), GRAMMAR, w)
    negated = plan.then_apply("not", 0)
    assert isinstance(negated.steps[-2], ApplyMatrix)
    assert np.array_equal(execute(negated, inputs, {"not": SWAP_2}),
                          meaning("men do not kill dogs".split(), GRAMMAR, w))
    with pytest.raises(SemanticsError):
        execute(negated, inputs)


def test_input_shape_mismatch():
    r = reduce(parse_pregroup_type("n . n^r . s").factors, "s")
    plan = compile_pregroup(r, SpaceAssignment({"n": 2, "s": 2}), [1, 2])
    with pytest.raises(ShapeError):
        execute(plan, [np.zeros(3), np.zeros((2, 2))])
    with pytest.raises(SemanticsError, match="takes 2"):
        execute(plan, [np.zeros(2)])


def test_missing_binding_and_unparseable():
    w = truth_words()
    with pytest.raises(SemanticsError, match="cute"):
        meaning("men kill cute dogs".split(), GRAMMAR, w)
    with pytest.raises(SemanticsError, match="does not parse"):
        meaning("kill men dogs".split(), GRAMMAR, w)


def test_single_word_meaning_is_its_vector():
    w = truth_words()
    assert np.array_equal(meaning(["men"], GRAMMAR, w), w["men"])
