from carsim.chunker import GroupKind, Voice, chunk, tokenize
from carsim.lexicon import builtin_lexicon

LEX = builtin_lexicon()


def shape(text, lex=LEX):
    return [[(g.kind, g.text, g.voice) for g in s.groups] for s in chunk(text, lex).sentences]


def test_active_sentence():
    assert shape("Vehicle B collided with my vehicle.") == [[
        (GroupKind.NOUN, "Vehicle B", None),
        (GroupKind.VERB, "collided", Voice.ACTIVE),
        (GroupKind.PREPOSITIONAL, "with my vehicle", None),
        (GroupKind.OTHER, ".", None),
    ]]


def test_passive_sentence():
    groups = shape("My vehicle was hit by vehicle B.")[0]
    assert groups[:3] == [
        (GroupKind.NOUN, "My vehicle", None),
        (GroupKind.VERB, "was hit", Voice.PASSIVE),
        (GroupKind.PREPOSITIONAL, "by vehicle B", None),
    ]


def test_empty_text():
    assert chunk("", LEX).sentences == ()
    assert chunk("   \n", LEX).sentences == ()


def test_sentence_split_and_contractions():
    sents = tokenize("I didn't stop. It's late")
    assert sents == [["I", "did", "n't", "stop", "."], ["It", "'s", "late"]]


def test_french_elision():
    assert tokenize("il m'a percuté")[0] == ["il", "m'", "a", "percuté"]


def test_token_indices_are_global():
    tokens = chunk("I braked. He swerved.", LEX).tokens
    assert [t.index for t in tokens] == list(range(len(tokens)))


def test_unknown_words_fall_into_other_groups():
    groups = shape("Blorft zzyx.")[0]
    assert all(kind is GroupKind.OTHER for kind, _, _ in groups)


def test_part_word_not_lemmatized_as_verb():
    tokens = chunk("my left side", LEX).tokens
    assert tokens[1].lemma == "left"


def test_named_vehicle_splits_noun_run():
    groups = shape("At the junction vehicle B hit me.")[0]
    assert (GroupKind.NOUN, "vehicle B", None) in groups
