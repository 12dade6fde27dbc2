"""Error-type classification: curated fixture plus rule-level unit cases."""

import pytest

from gectools.align import extract_edits
from gectools.classify import POS_TAGS, char_overlap_ratio, classify_all, classify_edit
from gectools.errors import MissingAnnotations
from gectools.lexicon import Lexicon
from gectools.text import Sentence, Token


def sent(*triples):
    """Sentence from (form, lemma, upos) triples; None entries allowed."""
    return Sentence(tokens=tuple(Token(form=f, lemma=l, upos=u) for f, l, u in triples))


def bare(*forms):
    return Sentence(tokens=tuple(Token(form=f) for f in forms))


def classify_pair(orig, corr, lexicon):
    edits = extract_edits(orig, corr)
    assert len(edits) == 1, f"expected one edit, got {edits}"
    return classify_edit(edits[0], orig, corr, lexicon)


@pytest.fixture(scope="module")
def lex():
    return Lexicon.from_words(
        ["casa", "casă", "masa", "frumoasă", "merge", "repede",
         "internată", "fii", "din", "aa", "și", "port-armă"]
    )


class TestFixture:
    def test_all_nineteen(self, classify_fixture, fixture_lexicon):
        orig, corr, labels = classify_fixture
        results = classify_all(zip(orig, corr), fixture_lexicon)
        got = []
        for edits in results:
            assert len(edits) == 1
            got.append(edits[0].etype)
        assert got == labels


class TestRules:
    def test_order(self, lex):
        o = bare("Nu", "mai", "o", "da")
        c = bare("Nu", "o", "mai", "da")
        assert classify_pair(o, c, lex) == "ORDER"

    def test_order_needs_different_sequence(self, lex):
        # same multiset AND same sequence after lowercasing: not a
        # reordering, falls through to ORTH
        o = bare("Camera", "deputaților")
        c = bare("camera", "Deputaților")
        edits = extract_edits(o, c)
        for e in edits:
            assert classify_edit(e, o, c, lex) == "ORTH"

    def test_order_case_insensitive(self, lex):
        o = bare("Mai", "nu")
        c = bare("nu", "mai")
        edits = extract_edits(o, c)
        assert len(edits) == 1
        assert classify_edit(edits[0], o, c, lex) == "ORDER"

    def test_orth_split(self, lex):
        o = bare("dealtfel")
        c = bare("de", "altfel")
        assert classify_pair(o, c, lex) == "ORTH"

    def test_orth_casing(self, lex):
        o = bare("bucurești")
        c = bare("București")
        assert classify_pair(o, c, lex) == "ORTH"

    def test_spell(self, lex):
        o = bare("frumossa")
        c = bare("frumoasă")
        assert classify_pair(o, c, lex) == "SPELL"

    def test_spell_requires_oov(self, lex):
        # "casa" is in the lexicon: rule 3 skipped, and with bare tokens
        # the single-token gate must raise
        o = bare("casa")
        c = bare("masa")
        edits = extract_edits(o, c)
        with pytest.raises(MissingAnnotations):
            classify_edit(edits[0], o, c, lex)

    def test_spell_requires_majority_overlap(self, lex):
        # LCS("xy", "yz") = 1, ratio 0.5 is not strictly greater
        o = bare("xy")
        c = bare("yz")
        edits = extract_edits(o, c)
        with pytest.raises(MissingAnnotations):
            classify_edit(edits[0], o, c, lex)

    def test_morph(self, lex):
        o = sent(("internată", "interna", "VERB"))
        c = sent(("internate", "interna", "ADJ"))
        assert classify_pair(o, c, lex) == "MORPH"

    def test_pos_form(self, lex):
        o = sent(("fii", "fi", "VERB"))
        c = sent(("fi", "fi", "VERB"))
        assert classify_pair(o, c, lex) == "POS:VERB:FORM"

    def test_pos_substitution(self, lex):
        o = sent(("din", "din", "ADP"))
        c = sent(("dintre", "dintre", "ADP"))
        assert classify_pair(o, c, lex) == "POS:ADP"

    def test_pos_insertion(self, lex):
        o = sent(("aa", "aa", "NOUN"), ("bb", "bb", "NOUN"))
        c = sent(("aa", "aa", "NOUN"), ("cc", "cc", "DET"), ("bb", "bb", "NOUN"))
        assert classify_pair(o, c, lex) == "POS:DET"

    def test_pos_deletion(self, lex):
        o = sent(("aa", "aa", "NOUN"), ("și", "și", "CCONJ"), ("bb", "bb", "NOUN"))
        c = sent(("aa", "aa", "NOUN"), ("bb", "bb", "NOUN"))
        assert classify_pair(o, c, lex) == "POS:CCONJ"

    def test_mixed_tags_are_other(self, lex):
        o = sent(("aa", "aa", "NOUN"))
        c = sent(("bb", "bb", "DET"), ("cc", "cc", "VERB"))
        assert classify_pair(o, c, lex) == "OTHER"

    def test_tag_outside_label_set_is_other(self, lex):
        # X and SYM are valid UPOS but not POS:<T> labels
        o = sent(("port-armă", "port-armă", "X"))
        c = sent(("portarmă", "portarmă", "X"))
        assert classify_pair(o, c, lex) == "OTHER"

    def test_pos_tag_set(self):
        assert len(POS_TAGS) == 14
        assert "X" not in POS_TAGS and "SYM" not in POS_TAGS


class TestCharOverlap:
    def test_values(self):
        assert char_overlap_ratio("vroiați", "voiați") == pytest.approx(6 / 7)
        assert char_overlap_ratio("ab", "ab") == 1.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            char_overlap_ratio("", "ab")


class TestMissingAnnotations:
    def test_insertion_without_tags(self, lex):
        o = bare("aa", "bb")
        c = bare("aa", "cc", "bb")
        edits = extract_edits(o, c)
        with pytest.raises(MissingAnnotations):
            classify_edit(edits[0], o, c, lex)

    def test_rules_one_to_three_need_no_tags(self, lex):
        assert classify_pair(bare("abc"), bare("Abc"), lex) == "ORTH"

    def test_classify_all_reports_sentence_index(self, lex):
        pairs = [
            (bare("abc"), bare("Abc")),
            (bare("casa"), bare("masa")),
        ]
        with pytest.raises(MissingAnnotations) as err:
            classify_all(pairs, lex)
        assert err.value.sentence_index == 1
        assert "sentence 1" in str(err.value)
