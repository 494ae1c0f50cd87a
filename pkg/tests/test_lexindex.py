from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import O1_NS, O2_NS

from ontodivide.lexindex import (LexConfig, Mapping, all_candidate_mappings,
                                 build_lexi, load_default_stopwords,
                                 mappings_of, normalize_label, word_subsets,
                                 write_index_tsv)
from ontodivide.ontology import EntityRef

STOPWORDS = load_default_stopwords()


def e1(name):
    return EntityRef(O1_NS + name)


def e2(name):
    return EntityRef(O2_NS + name)


class TestNormalizeLabel:
    def test_lunate_facet_of_hamate(self):
        assert normalize_label("Lunate facet of hamate", STOPWORDS) == \
            {"lunat", "facet", "hamat"}

    def test_all_stopwords(self):
        assert normalize_label("of the", STOPWORDS) == frozenset()

    def test_disorder_of_pregnancy(self):
        # stems frozen from the reference stemmer run
        assert normalize_label("Disorder of pregnancy", STOPWORDS) == \
            {"disord", "pregnanc"}

    def test_punctuation_and_digits(self):
        assert normalize_label("T4-weighted (image)", STOPWORDS) == \
            {"t4", "weight", "imag"}

    def test_duplicates_collapse(self):
        assert normalize_label("bone bone BONE", STOPWORDS) == {"bone"}

    @given(st.text(max_size=40))
    def test_total_on_arbitrary_text(self, label):
        words = normalize_label(label, STOPWORDS)
        assert all(w and w == w.lower() for w in words)


class TestWordSubsets:
    def test_three_words_gives_seven_subsets(self):
        keys = word_subsets({"lunat", "facet", "hamat"}, 50)
        assert len(keys) == 7
        assert ("facet", "lunat") in keys
        assert ("hamat", "lunat") in keys
        assert keys[0] == ("facet", "hamat", "lunat")

    def test_singleton(self):
        assert word_subsets({"disord"}, 50) == [("disord",)]

    def test_five_words_truncated_to_ten(self):
        words = {"a", "b", "c", "d", "e"}
        keys = word_subsets(words, 10)
        # oracle: enumerate sizes 5,4,3 lexicographically and cut at 10
        expected = []
        for size in (5, 4, 3):
            expected.extend(combinations(sorted(words), size))
        assert keys == expected[:10]
        assert [len(k) for k in keys] == [5] + [4] * 5 + [3] * 4

    def test_sizes_bounded_below(self):
        keys = word_subsets({"a", "b", "c", "d", "e"}, 1000)
        assert {len(k) for k in keys} == {3, 4, 5}

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            word_subsets(set(), 10)

    @given(st.sets(st.text(alphabet="abcdefg", min_size=1, max_size=3),
                   min_size=1, max_size=6))
    def test_keys_are_canonical(self, words):
        keys = word_subsets(words, 50)
        assert len(keys) == len(set(keys))
        for key in keys:
            assert tuple(sorted(key)) == key
            assert max(1, len(words) - 2) <= len(key) <= len(words)


class TestBuildLexi:
    def test_disord_entry(self, table1_pair):
        lexi = build_lexi(*table1_pair)
        value = lexi.entries[("disord",)]
        assert value.entities1 == {e1("Disorder_of_pregnancy"),
                                   e1("Disorder_of_stomach")}
        assert value.entities2 == {e2("Pregnancy_Disorder")}

    def test_single_side_entry_removed(self, table1_pair):
        lexi = build_lexi(*table1_pair)
        assert ("hamat", "lunat") not in lexi.entries
        assert ("lunat",) not in lexi.entries
        assert lexi.stats.dropped_single_side > 0

    def test_alpha_filter(self, table1_pair):
        lexi = build_lexi(*table1_pair, LexConfig(alpha=1))
        assert ("disord",) not in lexi.entries
        assert lexi.stats.dropped_over_alpha > 0

    def test_every_entry_spans_both_sides_within_alpha(self, toy_pair):
        lexi = build_lexi(*toy_pair)
        for _, value in lexi.sorted_entries:
            assert value.entities1 and value.entities2
            assert len(value) <= lexi.alpha

    def test_deterministic_and_byte_identical_dump(self, toy_pair, tmp_path):
        a = build_lexi(*toy_pair)
        b = build_lexi(*toy_pair)
        assert dict(a.entries) == dict(b.entries)
        pa, pb = tmp_path / "a.tsv", tmp_path / "b.tsv"
        write_index_tsv(a, pa)
        write_index_tsv(b, pb)
        assert pa.read_bytes() == pb.read_bytes()

    def test_shared_stem_entities_co_occur_before_alpha(self, toy_pair):
        # with a huge alpha nothing is size-filtered, so any cross-ontology
        # pair sharing a stem must meet in some entry (toy labels are short
        # enough that singleton keys always exist)
        from ontodivide.ontology import entity_labels, signature
        o1, o2 = toy_pair
        lexi = build_lexi(o1, o2, LexConfig(alpha=10_000))

        def stems(onto, ent):
            out = set()
            for label in entity_labels(onto, ent):
                out |= normalize_label(label, STOPWORDS)
            return out

        stems1 = {ent: stems(o1, ent) for ent in signature(o1)}
        stems2 = {ent: stems(o2, ent) for ent in signature(o2)}
        for ent1, s1 in stems1.items():
            for ent2, s2 in stems2.items():
                if s1 & s2:
                    assert any(ent1 in v.entities1 and ent2 in v.entities2
                               for v in lexi.entries.values()), (ent1, ent2)


class TestMappings:
    def test_row_one_yields_two_mappings(self, table1_pair):
        lexi = build_lexi(*table1_pair)
        entry = (("disord",), lexi.entries[("disord",)])
        ms = mappings_of([entry])
        assert len(ms) == 2
        assert Mapping(e1("Disorder_of_stomach"),
                       e2("Pregnancy_Disorder")) in ms
        assert all(m.relation == "=" and m.confidence == 1.0 for m in ms)

    def test_empty(self):
        assert mappings_of([]) == frozenset()

    def test_far_smaller_than_cartesian_product(self, toy_pair):
        o1, o2 = toy_pair
        lexi = build_lexi(o1, o2)
        ms = all_candidate_mappings(lexi)
        cartesian = len(o1.signature) * len(o2.signature)
        assert 0 < len(ms) < cartesian / 2

    def test_monotone_in_entries(self, toy_pair):
        lexi = build_lexi(*toy_pair)
        entries = list(lexi.sorted_entries)
        for cut in (0, 1, len(entries) // 2, len(entries)):
            smaller = mappings_of(entries[:cut])
            assert smaller <= mappings_of(entries)

    def test_identity_ignores_confidence(self):
        a = Mapping(e1("A"), e2("B"), confidence=0.5)
        b = Mapping(e1("A"), e2("B"), confidence=0.9)
        assert a == b
        assert len({a, b}) == 1

    def test_relation_distinguishes(self):
        a = Mapping(e1("A"), e2("B"), "=")
        b = Mapping(e1("A"), e2("B"), "<")
        assert a != b

    def test_validation(self):
        with pytest.raises(ValueError):
            Mapping(e1("A"), e2("B"), "~")
        with pytest.raises(ValueError):
            Mapping(e1("A"), e2("B"), confidence=0.0)
