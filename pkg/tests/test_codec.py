import pytest
from hypothesis import given, strategies as st

from dpfreqsub.codec import build_codebook, infer_alphabet
from dpfreqsub.errors import EncodingError, InvalidAlphabetError, UndecodableError


@pytest.fixture
def dna():
    return build_codebook("ACGT")


def test_dna_codewords(dna):
    assert dna.codewords == ["00$", "01$", "10$", "11$"]
    assert (dna.block_width, dna.round_r) == (2, 3)


def test_binary_alphabet():
    book = build_codebook("xy")
    assert book.forward == {"x": "0$", "y": "1$"}
    assert book.round_r == 2


def test_five_symbols_need_three_bits():
    book = build_codebook("ACGTN")
    assert book.block_width == 3 and book.round_r == 4
    assert book.forward["N"] == "100$"


def test_singleton_alphabet_uses_one_bit():
    book = build_codebook("A")
    assert book.forward["A"] == "0$"


@pytest.mark.parametrize("alphabet", ["", "AA", ["x", "y", "x"]])
def test_invalid_alphabets(alphabet):
    with pytest.raises(InvalidAlphabetError):
        build_codebook(alphabet)


def test_encode_examples(dna):
    assert dna.encode("CGCA") == "01$10$01$00$"
    assert dna.encode("CATA") == "01$00$11$00$"
    assert dna.encode("") == ""


def test_encode_unknown_symbol_names_position(dna):
    with pytest.raises(EncodingError) as info:
        dna.encode("ACXT")
    assert info.value.symbol == "X" and info.value.position == 2


def test_decode(dna):
    assert dna.decode("01$10$01$00$") == "CGCA"
    assert dna.decode("") == ""


@pytest.mark.parametrize("enc", ["00$0101$", "0$1", "$01", "0101$$"])
def test_undecodable(dna, enc):
    with pytest.raises(UndecodableError):
        dna.decode(enc)


def test_non_text_alphabet_round_trip():
    book = build_codebook([10, 20, 30])
    enc = book.encode([30, 10, 10])
    assert enc == "10$00$00$"
    assert book.decode(enc) == (30, 10, 10)


@pytest.mark.parametrize("p,expected", [
    ("01$10$1", True),
    ("", True),
    ("1$10$", False),
    ("01$", True),
    ("01$1", True),
    ("0$$01$", False),
    ("01$10$01$00$", True),
    ("01x", False),
])
def test_character_alignment(dna, p, expected):
    assert dna.is_character_aligned(p) is expected


def test_alignment_matches_exhaustive_split(dna):
    import itertools
    r = dna.round_r
    words = set(dna.codewords)

    def split_exists(p):
        for a in range(len(p) // r + 1):
            c = len(p) - a * r
            if 0 <= c <= r and all(p[i * r:(i + 1) * r] in words for i in range(a)):
                return True
        return False

    for length in range(8):
        for chars in itertools.product("01$", repeat=length):
            p = "".join(chars)
            assert dna.is_character_aligned(p) is split_exists(p)


@given(st.lists(st.sampled_from("ACGTN"), max_size=30))
def test_round_trip(symbols):
    book = build_codebook("ACGTN")
    doc = "".join(symbols)
    enc = book.encode(doc)
    assert len(enc) == book.round_r * len(doc)
    assert book.decode(enc) == doc


def test_infer_alphabet_sorted():
    assert infer_alphabet(["CAT", "GAT"]) == ["A", "C", "G", "T"]
    assert infer_alphabet([]) == []
