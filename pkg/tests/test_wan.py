import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_tokens
from symnet.wan import (
    WordNetwork,
    build_wan,
    export_edgelist,
    export_json,
    import_edgelist,
    import_json,
    load_network,
    shared_vocabulary,
)

LEMMAS = st.sampled_from(["cat", "run", "dog", "sea", "time", "fly"])


def edge_lemmas(net: WordNetwork) -> dict:
    return {
        tuple(sorted((net.lemmas[i], net.lemmas[j]))): w
        for (i, j), w in net.edges.items()
    }


class TestBuild:
    def test_repeat_pair(self):
        net = build_wan(make_tokens(["cat", "run", "cat"]))
        assert sorted(net.lemmas) == ["cat", "run"]
        assert edge_lemmas(net) == {("cat", "run"): 2}
        assert net.node_frequency[net.lemma_ids["cat"]] == 2
        assert net.node_frequency[net.lemma_ids["run"]] == 1

    def test_empty(self):
        net = build_wan([])
        assert net.node_count == 0
        assert net.edge_count == 0

    def test_sentence_boundary_blocks_edge(self):
        tokens = make_tokens(["a", "b", "c"], sentences=[0, 0, 1])
        net = build_wan(tokens, cross_sentence_edges=False)
        assert edge_lemmas(net) == {("a", "b"): 1}
        assert net.node_count == 3  # c is an isolated node with frequency 1
        assert net.node_frequency[net.lemma_ids["c"]] == 1

    def test_cross_sentence_enabled(self):
        tokens = make_tokens(["a", "b", "c"], sentences=[0, 0, 1])
        net = build_wan(tokens, cross_sentence_edges=True)
        assert edge_lemmas(net) == {("a", "b"): 1, ("b", "c"): 1}

    def test_no_self_loop(self):
        net = build_wan(make_tokens(["cat", "cat", "run"]))
        assert edge_lemmas(net) == {("cat", "run"): 1}
        assert net.node_frequency[net.lemma_ids["cat"]] == 2


@given(lemmas=st.lists(LEMMAS, max_size=50), cross=st.booleans())
@settings(max_examples=200)
def test_build_invariants(lemmas, cross):
    sentences = [i // 7 for i in range(len(lemmas))]
    net = build_wan(make_tokens(lemmas, sentences), cross_sentence_edges=cross)
    assert net.node_count == len(set(lemmas))
    assert sum(net.node_frequency) == len(lemmas)
    assert all(f >= 1 for f in net.node_frequency)
    assert net.edge_count <= max(len(lemmas) - 1, 0)
    for (i, j), w in net.edges.items():
        assert i < j and w >= 1
    # symmetric adjacency by construction of the neighbor lists
    adj = net.adjacency()
    for (i, j) in net.edges:
        assert j in adj[i] and i in adj[j]


@given(lemmas=st.lists(LEMMAS, max_size=40), seed=st.integers(0, 10))
@settings(max_examples=100)
def test_permuting_tokens_preserves_nodes_and_frequencies(lemmas, seed):
    rng = np.random.default_rng(seed)
    shuffled = list(lemmas)
    rng.shuffle(shuffled)
    a = build_wan(make_tokens(lemmas))
    b = build_wan(make_tokens(shuffled))
    assert set(a.lemmas) == set(b.lemmas)
    freq_a = {l: a.node_frequency[a.lemma_ids[l]] for l in a.lemmas}
    freq_b = {l: b.node_frequency[b.lemma_ids[l]] for l in b.lemmas}
    assert freq_a == freq_b


class TestSharedVocabulary:
    def test_intersection_sorted(self):
        n1 = WordNetwork.from_pairs([("a", "b"), ("b", "c")])
        n2 = WordNetwork.from_pairs([("d", "c"), ("c", "b")])
        assert shared_vocabulary([n1, n2]) == ["b", "c"]

    def test_single_network(self):
        n1 = WordNetwork.from_pairs([("b", "a"), ("c", "a")])
        assert shared_vocabulary([n1]) == ["a", "b", "c"]

    def test_disjoint(self):
        n1 = WordNetwork.from_pairs([("a", "b")])
        n2 = WordNetwork.from_pairs([("c", "d")])
        assert shared_vocabulary([n1, n2]) == []

    def test_empty_list(self):
        with pytest.raises(ValueError):
            shared_vocabulary([])


class TestExport:
    def test_edgelist_format(self, tmp_path):
        net = build_wan(make_tokens(["cat", "run", "cat"]))
        p = tmp_path / "net.edges.tsv"
        export_edgelist(net, p)
        assert p.read_text() == "cat\trun\t2\n"

    def test_edgelist_sorted(self, tmp_path):
        net = WordNetwork.from_pairs([("zeta", "beta"), ("beta", "alpha")])
        p = tmp_path / "net.edges.tsv"
        export_edgelist(net, p)
        assert p.read_text().splitlines() == ["alpha\tbeta\t1", "beta\tzeta\t1"]

    def test_empty_network(self, tmp_path):
        p = tmp_path / "net.edges.tsv"
        export_edgelist(build_wan([]), p)
        assert p.read_text() == ""

    def test_json_round_trip_exact(self, tmp_path):
        tokens = make_tokens(["a", "b", "a", "c", "c", "b"], sentences=[0, 0, 0, 1, 1, 1])
        net = build_wan(tokens)
        p = tmp_path / "net.json"
        export_json(net, p)
        back = import_json(p)
        assert back.lemmas == net.lemmas
        assert back.node_frequency == net.node_frequency
        assert back.edges == net.edges

    def test_load_network_dispatch(self, tmp_path):
        net = build_wan(make_tokens(["a", "b"]))
        export_json(net, tmp_path / "n.json")
        export_edgelist(net, tmp_path / "n.edges.tsv")
        assert load_network(tmp_path / "n.json").lemmas == net.lemmas
        assert edge_lemmas(load_network(tmp_path / "n.edges.tsv")) == edge_lemmas(net)


@given(lemmas=st.lists(LEMMAS, min_size=2, max_size=50), seed=st.integers(0, 99))
@settings(max_examples=100, deadline=None)
def test_round_trips_on_random_networks(lemmas, seed, tmp_path_factory):
    rng = np.random.default_rng(seed)
    sentences = sorted(int(rng.integers(0, 4)) for _ in lemmas)
    net = build_wan(make_tokens(lemmas, sentences))
    tmp = tmp_path_factory.mktemp("nets")

    export_json(net, tmp / "n.json")
    back = import_json(tmp / "n.json")
    assert (back.lemmas, back.node_frequency, back.edges) == (
        net.lemmas,
        net.node_frequency,
        net.edges,
    )

    # the edge list carries the weighted topology; lemma-keyed equality
    export_edgelist(net, tmp / "n.edges.tsv")
    topo = import_edgelist(tmp / "n.edges.tsv")
    assert edge_lemmas(topo) == edge_lemmas(net)
