import pytest
from hypothesis import given, settings, strategies as st

from dpfreqsub.codec import build_codebook
from dpfreqsub.errors import AlignmentError
from dpfreqsub.oracle import brute_aligned_counts
from dpfreqsub.suffix_index import DELIMITER_BASE, Locus, build_index


@pytest.fixture
def book():
    return build_codebook("ACGT")


@pytest.fixture
def corpus_index(book, toy_corpus):
    return build_index([book.encode(d) for d in toy_corpus], book.round_r)


@pytest.mark.parametrize("p,freq", [
    ("01$", 5),
    ("01$10$01$00$", 2),
    ("01$00$11$", 1),
    ("10$01$", 2),
    ("01$10$0", 2),
])
def test_toy_frequencies(corpus_index, p, freq):
    assert corpus_index.freq(corpus_index.locus_of(p)) == freq


def test_absent_patterns(corpus_index):
    assert corpus_index.locus_of("11$11$") is None
    assert corpus_index.locus_of("01$#") is None


def test_stepping(corpus_index):
    loc = corpus_index.root_locus()
    for ch in "01$":
        loc = corpus_index.step(loc, ch)
    assert corpus_index.freq(loc) == 5
    loc = corpus_index.step(corpus_index.locus_of("01$10$"), "0")
    assert corpus_index.path_label(loc) == "01$10$0"
    assert corpus_index.freq(loc) == 2
    assert corpus_index.step(corpus_index.root_locus(), DELIMITER_BASE) is None


def test_root_counts_every_block_start(corpus_index):
    assert corpus_index.num_leaves == 12
    assert corpus_index.freq(corpus_index.root_locus()) == 12


def test_single_short_string():
    tree = build_index(["0$"], 2)
    assert tree.num_nodes == 2
    assert tree.num_leaves == 1
    assert tree.render() == "<root> [1]\n  0$## [1]"


def test_candidate_tree_of_c6():
    tree = build_index(["01$00$", "01$10$", "10$01$"], 3)
    assert tree.render() == "\n".join([
        "<root> [6]",
        "  0 [4]",
        "    0$### [1]",
        "    1$ [3]",
        "      00$### [1]",
        "      10$### [1]",
        "      ### [1]",
        "  10$ [2]",
        "    01$### [1]",
        "    ### [1]",
    ])


def test_extensions_skip_delimiters():
    tree = build_index(["01$00$", "01$10$", "10$01$"], 3)
    loc = tree.locus_of("10$")
    assert [s for s, _ in tree.extensions(loc)] == [0]
    assert tree.extensions(tree.locus_of("10$01$")) == []


def test_misaligned_input_rejected():
    with pytest.raises(AlignmentError):
        build_index(["01$0"], 3)
    with pytest.raises(AlignmentError):
        build_index(["01x"], 3)


def test_empty_collection():
    tree = build_index([], 3)
    assert tree.num_nodes == 1 and tree.num_leaves == 0


docs_strategy = st.lists(st.text(alphabet="ACGT", min_size=0, max_size=12), min_size=1, max_size=8)


@settings(max_examples=80, deadline=None)
@given(docs_strategy)
def test_counts_match_brute_force(docs):
    book = build_codebook("ACGT")
    enc = [book.encode(d) for d in docs]
    tree = build_index(enc, book.round_r)
    counts = brute_aligned_counts(enc, book.round_r)
    for p, c in counts.items():
        loc = tree.locus_of(p)
        assert loc is not None and tree.freq(loc) == c
    assert tree.num_leaves == sum(len(e) for e in enc) // book.round_r
    assert tree.num_nodes <= 2 * max(tree.num_leaves, 1)


@settings(max_examples=40, deadline=None)
@given(docs_strategy, st.text(alphabet="01$", min_size=1, max_size=9))
def test_absent_iff_zero_count(docs, probe):
    book = build_codebook("ACGT")
    enc = [book.encode(d) for d in docs]
    tree = build_index(enc, book.round_r)
    c = brute_aligned_counts(enc, book.round_r)[probe]
    loc = tree.locus_of(probe)
    assert (loc is None) == (c == 0)
    if loc is not None:
        assert tree.freq(loc) == c


def test_locus_inside_edge_reports_lower_node_count(corpus_index):
    loc = corpus_index.locus_of("01$1")
    assert not corpus_index.at_node(loc)
    assert isinstance(loc, Locus)
    assert corpus_index.freq(loc) == corpus_index.count[loc.node]
