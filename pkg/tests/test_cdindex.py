import pytest

from minorposet.cdindex import AbPolynomial, CdPolynomial, ab_to_cd, cd_compare, cd_words
from minorposet.errors import DegreeMismatch, NotCd, ParseError


def test_parse_and_print():
    p = CdPolynomial.parse("c^3 + 2cd + 3dc")
    assert str(p) == "c^3 + 2cd + 3dc"
    assert p.coefficient("cd") == 2 and p.degree() == 3
    assert str(CdPolynomial.parse("1")) == "1"
    with pytest.raises(ParseError):
        CdPolynomial.parse("c + x")


def test_arithmetic():
    c, d = CdPolynomial("c"), CdPolynomial("d")
    assert (c + d) * c == CdPolynomial({"cc": 1, "dc": 1})
    assert c ** 2 - c * c == CdPolynomial()
    assert (c * d).coefficient("dc") == 0


def test_expand():
    assert CdPolynomial("c").expand() == AbPolynomial({"a": 1, "b": 1})
    assert CdPolynomial("d").expand() == AbPolynomial({"ab": 1, "ba": 1})
    assert AbPolynomial({"ab": 2, "b": 0}).evaluate(1, 3) == 6


def test_word_counts_are_fibonacci():
    assert [len(cd_words(n)) for n in range(8)] == [1, 1, 2, 3, 5, 8, 13, 21]


def test_round_trip():
    for n in range(1, 7):
        for i, w in enumerate(cd_words(n)):
            p = CdPolynomial({w: i + 1})
            assert ab_to_cd(p.expand()) == p


def test_not_cd():
    with pytest.raises(NotCd):
        ab_to_cd(AbPolynomial({"ab": 1}))


def test_compare():
    a = CdPolynomial.parse("c^3 + cd + 3dc")
    b = CdPolynomial.parse("c^3 + 2cd + 3dc")
    assert cd_compare(a, a) == {"leq": True, "witness": None}
    assert cd_compare(a, b)["leq"]
    assert cd_compare(b, a) == {"leq": False, "witness": "cd"}
    assert cd_compare(CdPolynomial.parse("c^2 + d"), b, pad=1)["leq"]
    with pytest.raises(DegreeMismatch):
        cd_compare(a, b, pad=1)
