import pytest

from sentbound.candidates import Candidate
from sentbound.corpus import AbbreviationSet
from sentbound.features import (
    EmptyRegistryError,
    build_registry,
    encode,
    extract_best,
    extract_portable,
    load_lexicon_file,
    make_extractor,
)


def make_candidate(token, offset, prev=None, nxt=None):
    return Candidate(
        mark=token[offset],
        token=token,
        offset_in_token=offset,
        prefix=token[:offset],
        suffix=token[offset + 1 :],
        prev_word=prev,
        next_word=nxt,
        stream_position=0,
    )


CORP = make_candidate("Corp.", 4, prev="ANLP", nxt="chairman")


def test_best_worked_example_superset(lexicons):
    preds = extract_best(CORP, lexicons)
    assert {
        "PreviousWordIsCapitalized",
        "Prefix=Corp",
        "Suffix=NULL",
        "PrefixFeature=CorporateDesignator",
    } <= preds


def test_best_honorific(lexicons):
    preds = extract_best(make_candidate("Dr.", 2, prev="chairman", nxt="Smith"), lexicons)
    assert "PrefixFeature=Honorific" in preds
    assert "FollowingWordIsCapitalized" in preds


def test_best_lone_period_empty_context(lexicons):
    preds = extract_best(make_candidate(".", 0), lexicons)
    assert {"Prefix=NULL", "Suffix=NULL", "PreviousWord=NULL", "FollowingWord=NULL"} <= preds


def test_best_char_classes(lexicons):
    preds = extract_best(make_candidate("3.5", 1, prev="rose", nxt="percent"), lexicons)
    assert "PrefixContainsDigit" in preds
    assert "SuffixContainsDigit" in preds
    assert "PrefixContainsUpper" not in preds


def test_portable_worked_example(example1_labeled):
    abbrevs = AbbreviationSet(frozenset({"Corp.", "Dr."}))
    preds = extract_portable(CORP, abbrevs)
    assert preds >= {
        "PreviousWord=ANLP",
        "FollowingWord=chairman",
        "Prefix=Corp",
        "Suffix=NULL",
        "PrefixFeature=InducedAbbreviation",
    }


def test_portable_empty_abbrevs_no_membership_predicates():
    preds = extract_portable(CORP, AbbreviationSet(frozenset()))
    assert not any("InducedAbbreviation" in p for p in preds)


def test_portable_final_token():
    cand = make_candidate("resigned.", 8, prev="Smith", nxt=None)
    preds = extract_portable(cand, AbbreviationSet(frozenset()))
    assert preds == {
        "PreviousWord=Smith",
        "FollowingWord=NULL",
        "Prefix=resigned",
        "Suffix=NULL",
    }


def test_portable_never_consults_lexicons():
    # Portable extraction must work with no lexicon resources at all.
    extractor = make_extractor("portable")
    assert extractor(CORP)


def test_literal_null_token_does_not_collide():
    cand = make_candidate("x.", 1, prev="NULL", nxt=None)
    preds = extract_portable(cand, AbbreviationSet(frozenset()))
    assert "PreviousWord=\\NULL" in preds
    assert "FollowingWord=NULL" in preds


def test_build_registry_portable_example1(example1_labeled):
    extractor = make_extractor(
        "portable", abbreviations=AbbreviationSet(frozenset({"Corp.", "Dr."}))
    )
    reg = build_registry(example1_labeled, extractor, "portable", cutoff=1)
    assert {"Prefix=Corp", "Prefix=Dr", "Prefix=resigned"} <= set(reg.keys)
    assert sorted(reg.index.values()) == list(range(len(reg)))


def test_build_registry_cutoff_too_high(example1_labeled):
    extractor = make_extractor("portable")
    with pytest.raises(EmptyRegistryError):
        build_registry(example1_labeled, extractor, "portable", cutoff=99)


def test_registry_counts_scale_linearly(example1_labeled):
    from sentbound.corpus import LabeledCandidateSet

    doubled = LabeledCandidateSet(
        candidates=example1_labeled.candidates * 2,
        tokens=example1_labeled.tokens * 2,
    )
    extractor = make_extractor("portable")
    reg1 = build_registry(example1_labeled, extractor, "portable")
    reg2 = build_registry(doubled, extractor, "portable")
    assert reg1.keys == reg2.keys
    assert [2 * c for c in reg1.counts] == reg2.counts


def test_encode_idempotent_and_drops_unseen(example1_labeled):
    extractor = make_extractor("portable")
    reg = build_registry(example1_labeled, extractor, "portable")
    cand = example1_labeled.candidates[0][0]
    idx = encode(cand, reg, extractor)
    assert idx == encode(cand, reg, extractor)
    assert idx == tuple(sorted(idx))
    unseen = make_candidate("zzzz.", 4, prev="qqqq", nxt="wwww")
    assert all(reg.keys[i] in extract_portable(unseen, AbbreviationSet(frozenset()))
               for i in encode(unseen, reg, extractor))


def test_load_lexicon_file(tmp_path):
    p = tmp_path / "lex.txt"
    p.write_text("# comment\nDr.\nMs.  # trailing\n\nGen.\n")
    assert load_lexicon_file(p) == {"Dr.", "Ms.", "Gen."}


def test_default_lexicons_seeded(lexicons):
    assert {"Ms.", "Dr.", "Gen."} <= lexicons.honorifics
    assert {"Corp.", "S.p.A.", "L.L.C."} <= lexicons.corporate_designators
