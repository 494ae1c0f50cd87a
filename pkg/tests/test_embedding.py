import numpy as np
import pytest

from conftest import O1_NS, O2_NS

from ontodivide.embedding import (EmbeddingSpace, TrainingConfig,
                                  entry_vector, entry_vectors, hinge_gradients,
                                  hinge_loss, positive_pairs,
                                  sample_negatives, similarity,
                                  train_embeddings, write_embeddings_tsv)
from ontodivide.lexindex import (IndexStats, LexIndex, LexValue, build_lexi)
from ontodivide.ontology import EntityRef


def make_lexi(entries, alpha=60):
    return LexIndex(entries, alpha,
                    IndexStats(len(entries), len(entries), 0, 0))


def ent(ns, name):
    return EntityRef(ns + name)


@pytest.fixture(scope="module")
def table1_lexi(table1_pair):
    return build_lexi(*table1_pair)


class TestPositivePairs:
    def test_row_two_gives_four_pairs(self, table1_lexi):
        key = ("disord", "pregnanc")
        value = table1_lexi.entries[key]
        pairs = positive_pairs(make_lexi({key: value}))
        assert len(pairs) == 4
        assert ("disord", ent(O1_NS, "Disorder_of_pregnancy")) in pairs
        assert ("pregnanc", ent(O2_NS, "Pregnancy_Disorder")) in pairs

    def test_empty_index(self):
        assert positive_pairs(make_lexi({})) == []

    def test_count_is_sum_of_products(self, table1_lexi):
        pairs = positive_pairs(table1_lexi)
        expected = sum(len(k) * len(v)
                       for k, v in table1_lexi.sorted_entries)
        assert len(pairs) == expected

    def test_canonical_order(self, table1_lexi):
        assert positive_pairs(table1_lexi) == positive_pairs(table1_lexi)


class TestSampleNegatives:
    def test_j_must_be_positive(self, table1_lexi):
        with pytest.raises(ValueError):
            sample_negatives(table1_lexi, 0, np.random.default_rng(0))

    def test_single_entity_index(self):
        e = ent(O1_NS, "Only")
        lexi = make_lexi({("only",): LexValue(frozenset({e}), frozenset())})
        drawn = sample_negatives(lexi, 3, np.random.default_rng(0))
        assert drawn == [e, e, e]

    def test_matches_multiset_frequencies(self, table1_lexi):
        # frequency check against the exact multiset, 3 sigma per entity
        rng = np.random.default_rng(99)
        n = 100_000
        drawn = sample_negatives(table1_lexi, n, rng)
        multiset = table1_lexi.value_entity_multiset
        counts = {}
        for e in drawn:
            counts[e] = counts.get(e, 0) + 1
        for e in set(multiset):
            p = multiset.count(e) / len(multiset)
            expected = n * p
            sigma = (n * p * (1 - p)) ** 0.5
            assert abs(counts.get(e, 0) - expected) <= 3 * sigma, e


class TestSimilarity:
    def test_orthogonal(self):
        assert similarity(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0

    def test_dot(self):
        assert similarity(np.array([1.0, 2.0]), np.array([3.0, 4.0])) == 11.0

    def test_self_similarity_nonnegative(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            v = rng.normal(size=8)
            assert similarity(v, v) >= 0.0
            assert np.isclose(similarity(v, v), np.linalg.norm(v) ** 2)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            similarity(np.zeros(3), np.zeros(4))


class TestHingeLoss:
    def test_zero_when_margin_met(self):
        v_w = np.array([1.0, 0.0])
        v_e = np.array([1.0, 0.0])
        negs = np.array([[-1.0, 0.0]])
        assert hinge_loss(v_w, v_e, negs, margin=0.5) == 0.0
        g_w, g_e, g_n = hinge_gradients(v_w, v_e, negs, 0.5)
        assert not g_w.any() and not g_e.any() and not g_n.any()

    def test_analytic_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(17)
        h = 1e-6
        for _ in range(25):
            d = int(rng.integers(2, 8))
            j = int(rng.integers(1, 6))
            v_w = rng.normal(size=d)
            v_e = rng.normal(size=d)
            negs = rng.normal(size=(j, d))
            margin = float(rng.uniform(0.01, 0.5))
            g_w, g_e, g_n = hinge_gradients(v_w, v_e, negs, margin)

            def fd(setter, getter, analytic):
                numeric = np.zeros_like(analytic)
                flat = analytic.reshape(-1)
                for i in range(flat.size):
                    plus = getter().copy()
                    plus.reshape(-1)[i] += h
                    minus = getter().copy()
                    minus.reshape(-1)[i] -= h
                    numeric.reshape(-1)[i] = (
                        setter(plus) - setter(minus)) / (2 * h)
                scale = max(np.linalg.norm(analytic),
                            np.linalg.norm(numeric), 1e-12)
                assert np.linalg.norm(analytic - numeric) / scale < 1e-4

            fd(lambda v: hinge_loss(v, v_e, negs, margin), lambda: v_w, g_w)
            fd(lambda v: hinge_loss(v_w, v, negs, margin), lambda: v_e, g_e)
            fd(lambda v: hinge_loss(v_w, v_e, v, margin), lambda: negs, g_n)


class TestTraining:
    def test_zero_epochs_returns_seeded_init(self, table1_lexi):
        cfg = TrainingConfig(dim=8, epochs=0, seed=4)
        space = train_embeddings(table1_lexi, cfg)
        rng = np.random.default_rng(4)
        expected_w = rng.uniform(-1 / 8, 1 / 8,
                                 size=(len(space.words), 8))
        expected_e = rng.uniform(-1 / 8, 1 / 8,
                                 size=(len(space.entities), 8))
        assert np.array_equal(space.word_matrix, expected_w)
        assert np.array_equal(space.entity_matrix, expected_e)

    def test_fixed_seed_bit_identical(self, table1_lexi):
        cfg = TrainingConfig(dim=8, epochs=5, seed=123)
        a = train_embeddings(table1_lexi, cfg)
        b = train_embeddings(table1_lexi, cfg)
        assert np.array_equal(a.word_matrix, b.word_matrix)
        assert np.array_equal(a.entity_matrix, b.entity_matrix)
        assert a.epoch_losses == b.epoch_losses

    def test_empty_index_rejected(self):
        with pytest.raises(ValueError):
            train_embeddings(make_lexi({}), TrainingConfig(dim=4, epochs=1))

    def test_vocabulary_covers_index(self, table1_lexi):
        space = train_embeddings(table1_lexi,
                                 TrainingConfig(dim=4, epochs=1, seed=0))
        for key, value in table1_lexi.sorted_entries:
            for w in key:
                assert w in space.word_index
            for e in value.all_entities():
                assert e in space.entity_index

    def test_all_finite_and_norm_bounded(self, table1_lexi):
        cfg = TrainingConfig(dim=8, epochs=30, seed=7, learning_rate=0.5,
                             max_norm=2.0)
        space = train_embeddings(table1_lexi, cfg)
        assert np.isfinite(space.word_matrix).all()
        assert np.isfinite(space.entity_matrix).all()
        norms = np.linalg.norm(space.entity_matrix, axis=1)
        assert (norms <= 2.0 + 1e-9).all()

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_divergence_aborts(self, table1_lexi):
        cfg = TrainingConfig(dim=4, epochs=60, seed=0, learning_rate=1e120,
                             max_norm=float("inf"))
        with np.errstate(all="ignore"), \
                pytest.raises(RuntimeError, match="non-finite"):
            train_embeddings(table1_lexi, cfg)

    def _two_group_lexi(self):
        g1 = {(f"w1{i}",): LexValue(
            frozenset({ent(O1_NS, f"G1_{i}")}),
            frozenset({ent(O2_NS, f"G1_{i}")})) for i in range(4)}
        g2 = {(f"w2{i}",): LexValue(
            frozenset({ent(O1_NS, f"G2_{i}")}),
            frozenset({ent(O2_NS, f"G2_{i}")})) for i in range(4)}
        return make_lexi({**g1, **g2})

    def test_groups_separate(self):
        lexi = self._two_group_lexi()
        space = train_embeddings(lexi, TrainingConfig(dim=16, epochs=60,
                                                      seed=9))
        intra, inter = [], []
        for key, value in lexi.sorted_entries:
            word = key[0]
            for other_key, other_value in lexi.sorted_entries:
                for e in other_value.all_entities():
                    sim = similarity(space.word_vector(word),
                                     space.entity_vector(e))
                    same = word[:2] == other_key[0][:2]
                    (intra if same else inter).append(sim)
        assert np.mean(intra) > np.mean(inter)

    def test_epoch_loss_trend_over_seeds(self):
        lexi = self._two_group_lexi()
        first, tenth = [], []
        for seed in range(5):
            cfg = TrainingConfig(dim=16, epochs=10, seed=seed)
            space = train_embeddings(lexi, cfg)
            first.append(space.epoch_losses[0])
            tenth.append(space.epoch_losses[9])
        assert np.mean(tenth) < np.mean(first)


class TestEntryVector:
    def _space(self, words, entities, W, E):
        W = np.asarray(W, dtype=float)
        E = np.asarray(E, dtype=float)
        return EmbeddingSpace(tuple(words), tuple(entities), W, E,
                              {w: i for i, w in enumerate(words)},
                              {e: i for i, e in enumerate(entities)})

    def test_hand_set_vectors(self):
        e1a = ent(O1_NS, "Disorder_of_pregnancy")
        e2a = ent(O2_NS, "Pregnancy_Disorder")
        space = self._space(["disord", "pregnanc"], [e1a, e2a],
                            [[1.0, 0.0], [0.0, 1.0]],
                            [[2.0, 0.0], [0.0, 2.0]])
        value = LexValue(frozenset({e1a}), frozenset({e2a}))
        vec = entry_vector((("disord", "pregnanc"), value), space)
        assert np.allclose(vec, [0.5, 0.5, 1.0, 1.0])

    def test_singletons(self):
        e = ent(O1_NS, "X")
        t = ent(O2_NS, "Y")
        space = self._space(["w"], [e, t], [[1.0, 2.0]],
                            [[3.0, 4.0], [5.0, 6.0]])
        value = LexValue(frozenset({e}), frozenset({t}))
        vec = entry_vector((("w",), value), space)
        assert np.allclose(vec, [1.0, 2.0, 4.0, 5.0])

    def test_missing_token_is_named(self):
        space = self._space(["w"], [], [[1.0]], np.zeros((0, 1)))
        value = LexValue(frozenset({ent(O1_NS, "X")}), frozenset())
        with pytest.raises(KeyError, match="X"):
            entry_vector((("w",), value), space)
        with pytest.raises(KeyError, match="nope"):
            entry_vector((("nope",), value), space)

    def test_length_is_twice_dim(self, table1_lexi):
        space = train_embeddings(table1_lexi,
                                 TrainingConfig(dim=6, epochs=1, seed=2))
        for key, vec in entry_vectors(table1_lexi, space):
            assert vec.shape == (12,)


def test_embedding_dump_format(tmp_path, table1_pair):
    lexi = build_lexi(*table1_pair)
    space = train_embeddings(lexi, TrainingConfig(dim=3, epochs=1, seed=0))
    out = tmp_path / "emb.tsv"
    write_embeddings_tsv(space, out)
    lines = out.read_text().splitlines()
    assert len(lines) == len(space.words) + len(space.entities)
    first = lines[0].split("\t")
    assert first[1] == "word"
    assert len(first) == 2 + 3
