"""Pattern catalog loading and discourse-pattern matching."""
import pytest

from nonissue.morphology import Tag
from nonissue.patterns import (
    CatalogError,
    PatternCatalog,
    PatternRule,
    Reason,
    Scope,
    is_question_particle,
    match_patterns,
    parse_catalog,
    split_sentences,
)

# One sentence per shipped pattern; each must fire exactly its own code.
FIXTURES = {
    "NI_REQUEST": "Başvurunun arşive kaldırılmasını rica ederiz.",
    "NI_YESNO_QUESTION": "... poliçe numarasını öğrenebilir miyiz?",
    "NI_WHY_QUESTION": "Neden hayat sigortası polisinin iptal edildiği ...",
    "NI_POSSIBLE": "İşlemin iptali mümkün değildir.",
    "NI_INADVERTENTLY": "Sehven yaratılmıştır.",
}

VALID_ISSUE_SENTENCES = [
    "Kart limiti güncellenemedi.",
    "Başvuru ekranı açılamadı.",
    "Müşteri kaydı bulunamadı.",
    "Rapor dosyası silinemedi.",
    "Sistem saat dokuzda açılmalıydı.",
    "Hesap bakiyesi güncellenmeliydi.",
    "Transfer işlemi yapılamadı.",
    "Fatura tutarı hesaplanamadı.",
    "Ödeme ekranını çalıştıramadık.",
    "Poliçe bilgisi görüntülenemedi.",
]


class TestDefaultCatalog:
    def test_ships_five_rules(self, catalog):
        assert len(catalog) == 5
        assert catalog.codes == {
            "NI_REQUEST",
            "NI_YESNO_QUESTION",
            "NI_WHY_QUESTION",
            "NI_POSSIBLE",
            "NI_INADVERTENTLY",
        }

    def test_request_rule_shape(self, catalog):
        rule = next(r for r in catalog if r.code == "NI_REQUEST")
        assert rule.trigger_roots == {"arşiv", "güncel", "sil"}
        assert rule.trigger_tags == (Tag.VERBAL_NOUN, Tag.POSSESSIVE_3SG)
        assert rule.scope is Scope.SENTENCE

    def test_question_rule_uses_particle(self, catalog):
        rule = next(r for r in catalog if r.code == "NI_YESNO_QUESTION")
        assert rule.question_particle and not rule.trigger_roots


class TestCatalogLoading:
    def test_empty_document_gives_empty_catalog(self):
        assert len(parse_catalog("")) == 0

    def test_duplicate_code_rejected_with_line(self):
        doc = "NI_REQUEST\tsil\t-\tSentence\nNI_REQUEST\tarşiv\t-\tSentence\n"
        with pytest.raises(CatalogError, match="line 2"):
            parse_catalog(doc)

    def test_empty_rule_rejected(self):
        with pytest.raises(CatalogError, match="line 1"):
            parse_catalog("NI_EMPTY\t-\t-\tSentence\n")

    def test_malformed_line_rejected(self):
        with pytest.raises(CatalogError, match="line 1"):
            parse_catalog("NI_REQUEST\tsil\t-\n")
        with pytest.raises(CatalogError, match="line 1"):
            parse_catalog("NI_REQUEST\tsil\tNotATag\tSentence\n")
        with pytest.raises(CatalogError, match="line 1"):
            parse_catalog("NI_REQUEST\tsil\t-\tParagraph\n")

    def test_bad_code_rejected(self):
        with pytest.raises(CatalogError):
            PatternRule(code="REQUEST", trigger_roots=frozenset({"sil"}))


class TestMatching:
    @pytest.mark.parametrize("code,sentence", sorted(FIXTURES.items()))
    def test_fixture_fires_exactly_its_own_code(self, code, sentence, catalog, analyzer):
        matches = match_patterns(sentence, catalog, analyzer)
        assert [m.code for m in matches] == [code]

    @pytest.mark.parametrize("sentence", VALID_ISSUE_SENTENCES)
    def test_valid_issue_sentences_fire_nothing(self, sentence, catalog, analyzer):
        assert match_patterns(sentence, catalog, analyzer) == []

    def test_request_needs_root_and_suffix_together(self, catalog, analyzer):
        # root evidence alone (sil...) or suffix evidence alone (-mesi) is not enough
        assert match_patterns("Rapor dosyası silinemedi.", catalog, analyzer) == []
        assert match_patterns("Bilgi verilmesini rica ederiz.", catalog, analyzer) == []

    def test_request_evidence_has_both_reasons(self, catalog, analyzer):
        (match,) = match_patterns(FIXTURES["NI_REQUEST"], catalog, analyzer)
        reasons = {r for _, r in match.evidence}
        assert Reason.ROOT_HIT in reasons and Reason.SUFFIX_HIT in reasons

    def test_sentence_locality(self, catalog, analyzer):
        first = "Kart limiti güncellenemedi."
        second = "Kaydın silinmesini rica ederiz."
        combined = match_patterns(first + " " + second, catalog, analyzer)
        assert [m.code for m in combined] == ["NI_REQUEST"]
        assert combined[0].sentence_index == 1
        # removing the second sentence creates no match in the first
        assert match_patterns(first, catalog, analyzer) == []

    def test_matches_ordered_and_deduplicated(self, catalog, analyzer):
        text = "Kaydın silinmesini rica ederiz. Sehven yaratılmıştır. Kaydın silinmesini rica ederiz."
        codes = [(m.sentence_index, m.code) for m in match_patterns(text, catalog, analyzer)]
        assert codes == [(0, "NI_REQUEST"), (1, "NI_INADVERTENTLY"), (2, "NI_REQUEST")]

    def test_multiple_codes_in_one_sentence_sorted(self, catalog, analyzer):
        text = "Limitin artırılması mümkün müdür?"
        codes = [m.code for m in match_patterns(text, catalog, analyzer)]
        assert codes == ["NI_POSSIBLE", "NI_YESNO_QUESTION"]

    def test_catalog_monotonicity(self, catalog, analyzer):
        text = "Kaydın silinmesini rica ederiz. Bu mümkün müdür?"
        base = {(m.sentence_index, m.code) for m in match_patterns(text, catalog, analyzer)}
        extended = PatternCatalog(
            list(catalog.rules) + [PatternRule(code="NI_RICA", trigger_roots=frozenset({"rica"}))]
        )
        bigger = {(m.sentence_index, m.code) for m in match_patterns(text, extended, analyzer)}
        assert base <= bigger
        assert (0, "NI_RICA") in bigger

    def test_document_scope(self, analyzer):
        rule = PatternRule(
            code="NI_DOC",
            trigger_roots=frozenset({"sehven"}),
            trigger_tags=(Tag.VERBAL_NOUN, Tag.POSSESSIVE_3SG),
            scope=Scope.DOCUMENT,
        )
        catalog = PatternCatalog([rule])
        # triggers sit in different sentences: only document scope fires
        text = "Sehven yaratıldı. Kaydın silinmesini rica ederiz."
        matches = match_patterns(text, catalog, analyzer)
        assert [m.code for m in matches] == ["NI_DOC"]
        sentence_rule = PatternRule(
            code="NI_DOC",
            trigger_roots=frozenset({"sehven"}),
            trigger_tags=(Tag.VERBAL_NOUN, Tag.POSSESSIVE_3SG),
            scope=Scope.SENTENCE,
        )
        assert match_patterns(text, PatternCatalog([sentence_rule]), analyzer) == []

    def test_empty_text(self, catalog, analyzer):
        assert match_patterns("", catalog, analyzer) == []

    def test_determinism(self, catalog, analyzer):
        text = "Kaydın silinmesini rica ederiz. Bu mümkün müdür?"
        assert match_patterns(text, catalog, analyzer) == match_patterns(text, catalog, analyzer)

    def test_literal_token_counts_for_root_only_rules(self, catalog, analyzer):
        # "sehven" is in the lexicon, but even a token the analyzer cannot
        # analyze may hit a root-only rule by literal equality.
        assert [m.code for m in match_patterns("mümkün", catalog, analyzer)] == ["NI_POSSIBLE"]


class TestParticles:
    @pytest.mark.parametrize("token", ["mı", "mi", "mu", "mü", "miyiz", "mıdır", "müdür", "mısınız", "mıydı"])
    def test_particles(self, token):
        assert is_question_particle(token)

    @pytest.mark.parametrize("token", ["milyon", "mimar", "makine", "müšteri", "limiti", "m", "mx"])
    def test_non_particles(self, token):
        assert not is_question_particle(token)


def test_split_sentences():
    assert split_sentences("A b. C d? E!\nF") == ["A b", "C d", "E", "F"]
    assert split_sentences("...") == []
    assert split_sentences("") == []
