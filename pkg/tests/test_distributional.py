import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discocat.distributional import (DependencyTriple, VectorSpaceModel, add_verb_tensors,
                                     build_basis, build_model, cooccurrence, embed_diagonal,
                                     load_triples, read_corpus, tfidf, tokenize_corpus,
                                     verb_tensor_cat1, verb_tensor_cat2)
from discocat.lexicon import bundled_path, load_grammar
from discocat.semantics import meaning

TINY = tokenize_corpus("dogs chase cats\ncats chase mice\nDogs eat food\n\n")
words = st.sampled_from("a b c d e".split())
corpora = st.lists(st.lists(words, min_size=1, max_size=8), min_size=1, max_size=6)


def test_tokenize_lowercases_and_drops_blank_lines():
    assert TINY == [["dogs", "chase", "cats"], ["cats", "chase", "mice"], ["dogs", "eat", "food"]]


def test_basis_frequency_then_alphabetical():
    assert build_basis(TINY, 3) == ["cats", "chase", "dogs"]
    assert build_basis(TINY, 100) == ["cats", "chase", "dogs", "eat", "food", "mice"]
    with pytest.raises(ValueError):
        build_basis(TINY, 0)
    with pytest.raises(ValueError):
        build_basis([], 3)


@settings(max_examples=100, deadline=None)
@given(corpora, st.integers(1, 4))
def test_cooccurrence_matches_pair_count(corpus, window):
    basis = sorted({w for line in corpus for w in line})
    got = cooccurrence(corpus, basis, window)
    for w in got:
        for k, b in enumerate(basis):
            want = sum(1 for line in corpus for i, x in enumerate(line) for j, y in enumerate(line)
                       if x == w and y == b and i != j and abs(i - j) <= window)
            assert got[w][k] == want


def test_cooccurrence_stops_at_line_ends():
    got = cooccurrence([["a", "b"], ["c", "d"]], ["c"], 5)
    assert got["b"][0] == 0 and got["d"][0] == 1


def test_tfidf_by_hand():
    basis = ["chase", "food"]
    counts = cooccurrence(TINY, basis, 2)
    weighted = tfidf(counts, basis, TINY)
    # chase appears in 2 of 3 lines, food in 1 of 3
    idf = np.array([math.log(3 / 2), math.log(3)])
    assert np.allclose(weighted["dogs"], np.array([1, 1]) * idf)
    assert np.allclose(weighted["mice"], np.array([1, 0]) * idf)


def test_cat1_is_a_sum_of_outer_products():
    vec = {"a": np.array([1.0, 2.0]), "b": np.array([0.0, 3.0]), "c": np.array([1.0, 1.0])}
    triples = [DependencyTriple("a", "v", "b"), DependencyTriple("c", "v", "a"),
               DependencyTriple("a", "w", "b")]
    want = np.outer(vec["a"], vec["b"]) + np.outer(vec["c"], vec["a"])
    assert np.array_equal(verb_tensor_cat1("v", triples, vec), want)
    intransitive = [DependencyTriple("a", "sleep"), DependencyTriple("b", "sleep")]
    assert np.array_equal(verb_tensor_cat1("sleep", intransitive, vec), [1, 5])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_cat1_is_linear_in_each_slot(dim, uses, seed):
    rng = np.random.default_rng(seed)
    subjects = rng.normal(size=(uses, dim))
    vec = {f"s{k}": subjects[k] for k in range(uses)}
    vec["o"] = rng.normal(size=dim)
    triples = [DependencyTriple(f"s{k}", "v", "o") for k in range(uses)]
    got = verb_tensor_cat1("v", triples, vec)
    assert np.allclose(got, np.outer(subjects.sum(axis=0), vec["o"]), atol=1e-12)


def test_cat1_rejects_mixed_arity_and_missing_words():
    vec = {"a": np.ones(2)}
    with pytest.raises(ValueError, match="both"):
        verb_tensor_cat1("v", [DependencyTriple("a", "v"), DependencyTriple("a", "v", "a")], vec)
    with pytest.raises(KeyError):
        verb_tensor_cat1("v", [DependencyTriple("a", "v", "zzz")], vec)
    with pytest.raises(KeyError):
        verb_tensor_cat1("nope", [DependencyTriple("a", "v")], vec)


def test_cat2_is_a_kronecker_power():
    vec = {"v": np.array([1.0, 2.0])}
    assert np.array_equal(verb_tensor_cat2("v", vec, 2), [[1, 2], [2, 4]])
    assert verb_tensor_cat2("v", vec, 3)[1, 1, 1] == 8
    with pytest.raises(KeyError):
        verb_tensor_cat2("w", vec, 2)


def test_embed_diagonal_layout():
    t = np.arange(1.0, 5.0).reshape(2, 2)
    u = embed_diagonal(t)
    assert u.shape == (2, 4, 2)
    assert np.count_nonzero(u) == 4
    for i in range(2):
        for j in range(2):
            assert u[i, 2 * i + j, j] == t[i, j]
    assert np.array_equal(embed_diagonal(np.array([3.0, 4.0])), [[3, 0], [0, 4]])
    t3 = np.arange(8.0).reshape(2, 2, 2)
    u3 = embed_diagonal(t3)
    assert u3[1, 4 + 0 + 1, 1, 0] == t3[1, 0, 1]
    with pytest.raises(ValueError):
        embed_diagonal(np.zeros((2, 3)))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_embedded_verb_composes_to_pointwise_product(dim, seed):
    # with a diagonal embedding the sentence is (subj ⊗ obj) * verb, flattened
    rng = np.random.default_rng(seed)
    subj, obj, verb = rng.normal(size=dim), rng.normal(size=dim), rng.normal(size=(dim, dim))
    grammar = load_grammar(bundled_path("corpus_lexicon.json"))
    tensors = {"system": subj, "criterion": obj, "meet": embed_diagonal(verb)}
    got = meaning("system meet criterion".split(), grammar, tensors)
    assert np.allclose(got, (np.outer(subj, obj) * verb).ravel(), atol=1e-12)


def test_model_json_round_trip(tmp_path):
    model = build_model(TINY, 4, window=2)
    add_verb_tensors(model, [DependencyTriple("dogs", "chase", "cats")], "cat1")
    model.tensors["extra"] = np.eye(2)
    path = tmp_path / "m.json"
    model.save(path)
    again = VectorSpaceModel.load(path)
    assert again.basis == model.basis and again.meta == model.meta
    assert all(np.array_equal(again.vectors[w], v) for w, v in model.vectors.items())
    assert np.array_equal(again.verbs["chase"]["cat1"], model.verbs["chase"]["cat1"])
    assert np.array_equal(again.tensors["extra"], np.eye(2))
    assert again.dumps() == model.dumps()


def test_model_rejects_vectors_off_the_basis():
    with pytest.raises(ValueError):
        VectorSpaceModel.from_json({"basis": ["a", "b"], "vectors": {"x": [1, 2, 3]}})


def test_build_is_deterministic():
    corpus = read_corpus(bundled_path("corpus.txt"))
    assert build_model(corpus, 30).dumps() == build_model(corpus, 30).dumps()


def test_raw_weighting_keeps_counts():
    model = build_model(TINY, 6, window=1, weighting="raw")
    assert model.vectors["chase"].tolist() == [2, 0, 1, 0, 0, 1]
    with pytest.raises(ValueError):
        build_model(TINY, 6, weighting="ppmi")


def test_word_tensors_prefers_explicit_tensors():
    model = VectorSpaceModel(["a"], {"x": np.ones(1), "v": np.ones(1)},
                             {"v": {"cat2": np.ones((1, 1))}}, {"x": np.zeros(1)})
    t = model.word_tensors("cat2")
    assert t["x"][0] == 0 and t["v"].shape == (1, 1, 1)
    assert model.word_tensors()["v"].shape == (1,)


def test_bundled_triples_cover_the_corpus_verbs(tmp_path):
    triples = load_triples(bundled_path("triples.tsv"))
    assert triples and all(t.object for t in triples)
    path = tmp_path / "t.tsv"
    path.write_text("a\tsleep\t\nb\tsleep\n\n")
    assert load_triples(path) == [DependencyTriple("a", "sleep"), DependencyTriple("b", "sleep")]
    path.write_text("lonely\n")
    with pytest.raises(ValueError):
        load_triples(path)
