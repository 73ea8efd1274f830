"""Tokenizing, tagging and finite-state chunking of report text.

Sentences are cut on terminal punctuation, tokens are tagged from the
lexicon with a small left-context disambiguation pass, and each sentence
is then segmented into noun, verb, prepositional and ``other`` groups.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .lexicon import Lexicon


class GroupKind(str, Enum):
    NOUN = "noun"
    VERB = "verb"
    PREPOSITIONAL = "prepositional"
    OTHER = "other"


class Voice(str, Enum):
    ACTIVE = "active"
    PASSIVE = "passive"


@dataclass(frozen=True)
class Token:
    form: str
    lemma: str
    tag: str  # chosen tag; "PUNCT", "NUM" or "UNK" for tokens outside the lexicon
    index: int
    options: tuple[str, ...] = ()


@dataclass(frozen=True)
class Group:
    kind: GroupKind
    tokens: tuple[Token, ...]
    voice: Optional[Voice] = None

    @property
    def span(self) -> tuple[int, int]:
        return self.tokens[0].index, self.tokens[-1].index + 1

    @property
    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)

    @property
    def lemmas(self) -> tuple[str, ...]:
        return tuple(t.lemma for t in self.tokens)

    @property
    def preposition(self) -> Optional[Token]:
        return self.tokens[0] if self.kind is GroupKind.PREPOSITIONAL else None

    @property
    def nominal(self) -> tuple[Token, ...]:
        """Tokens of the noun phrase (a prepositional group minus its preposition)."""
        if self.kind is GroupKind.PREPOSITIONAL:
            return self.tokens[1:]
        return self.tokens

    @property
    def main_verb(self) -> Optional[Token]:
        if self.kind is not GroupKind.VERB:
            return None
        return self.tokens[-1]


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    groups: tuple[Group, ...]

    @property
    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)

    def position(self, group: Group) -> int:
        for i, g in enumerate(self.groups):
            if g.span == group.span:
                return i
        raise ValueError(f"group {group.text!r} is not part of this sentence")


@dataclass(frozen=True)
class ChunkedText:
    sentences: tuple[Sentence, ...]

    @property
    def tokens(self) -> tuple[Token, ...]:
        return tuple(t for s in self.sentences for t in s.tokens)


# ---------------------------------------------------------------------------
# tokenizing

_WORD = r"[^\W\d_]+(?:-[^\W\d_]+)*"
_TOKEN_RE = re.compile(
    rf"""
    (?P<neg>[^\W\d_]+?(?=n['’]t\b))      # "did" of "didn't"
  | (?P<nt>n['’]t\b)
  | (?P<elision>(?:[cdjlmnstCDJLMNST]|[Qq]u|[Jj]usqu|[Ll]orsqu|[Pp]uisqu)['’](?=[^\W\d_]))  # French "m'", "d'"
  | (?P<word>{_WORD})
  | (?P<clitic>['’][^\W\d_]+)
  | (?P<num>\d+(?:[.,]\d+)?)
  | (?P<punct>[^\w\s])
    """,
    re.VERBOSE,
)
_TERMINAL = {".", "!", "?", "…"}


def tokenize(text: str) -> list[list[str]]:
    """Split ``text`` into sentences of raw token strings."""
    sentences: list[list[str]] = []
    current: list[str] = []
    for m in _TOKEN_RE.finditer(text):
        form = m.group()
        if not form:
            continue
        current.append(form.replace("’", "'"))
        if m.lastgroup == "punct" and form in _TERMINAL:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return [s for s in sentences if any(not (len(t) == 1 and not t.isalnum()) for t in s)]


# ---------------------------------------------------------------------------
# tagging

_NOMINAL_PREFIX = {"DET", "POSS", "NUM", "ADJ"}
_VERBAL = ("VERB", "VPP", "VING")


def _options(form: str, prev_form: Optional[str], lex: Lexicon) -> tuple[tuple[str, ...], str]:
    entry = lex.lookup(form)
    if prev_form is not None and len(form) == 1 and form.isupper():
        prev = lex.lookup(prev_form)
        prev_lemma = prev.lemma if prev else prev_form.lower()
        if lex.vehicle_cues.get(prev_lemma) in ("car", "truck", "vehicle"):
            return ("NOUN",), form.lower()  # "vehicle B"
    if entry is not None:
        return entry.tags, entry.lemma
    if re.fullmatch(r"\d+(?:[.,]\d+)?", form):
        return ("NUM",), form
    if not any(c.isalnum() for c in form):
        return ("PUNCT",), form
    return ("UNK",), form.lower()


def _choose(options: tuple[str, ...], prev_tag: Optional[str], in_verb_chain: bool,
            next_options: tuple[str, ...]) -> str:
    if len(options) == 1:
        return options[0]

    def first(*prefs: str) -> Optional[str]:
        return next((p for p in prefs if p in options), None)

    # an auxiliary-capable word directly followed by a verb form heads a chain
    if "AUX" in options and any(t in next_options for t in _VERBAL + ("AUX", "ADV")):
        if any(t in next_options for t in _VERBAL + ("AUX",)) or "ADV" in next_options:
            return "AUX"
    if in_verb_chain:
        pick = first("VPP", "VING", "VERB")
        if pick:
            return pick
    if prev_tag in _NOMINAL_PREFIX:
        nounish = "NOUN" in next_options or "ADJ" in next_options
        pick = first("ADJ", "NOUN") if nounish else first("NOUN", "ADJ")
        if pick:
            return pick
    if prev_tag in ("VERB", "VPP", "VING"):
        pick = first("ADV", "DET", "POSS", "NOUN", "ADJ")
        if pick:
            return pick
    if prev_tag == "PREP":
        pick = first("DET", "POSS", "NOUN", "ADJ", "PRON")
        if pick:
            return pick
    if prev_tag in (None, "PRON", "NOUN", "CLITIC", "CONJ", "ADV", "PUNCT", "UNK", "NUM"):
        if prev_tag is None and "DET" in options:
            return "DET"
        if prev_tag is None and "NOUN" in options and ("NOUN" in next_options or "VERB" in next_options or "AUX" in next_options):
            return "NOUN"
        pick = first("VERB", "VPP", "AUX")
        if pick and prev_tag is not None:
            return pick
    return first("NOUN", "DET", "POSS", "PRON", "ADJ", "VERB", "VPP", "VING", "AUX", "ADV", "PREP", "CONJ") or options[0]


def tag_sentence(forms: list[str], lex: Lexicon, start_index: int = 0) -> tuple[Token, ...]:
    raw = []
    for i, form in enumerate(forms):
        raw.append(_options(form, forms[i - 1] if i else None, lex))
    tokens: list[Token] = []
    prev_tag: Optional[str] = None
    in_chain = False
    for i, (form, (options, lemma)) in enumerate(zip(forms, raw)):
        next_options = raw[i + 1][0] if i + 1 < len(raw) else ()
        tag = _choose(options, prev_tag, in_chain, next_options)
        if tag not in _VERBAL + ("AUX",) and any(o in _VERBAL for o in options):
            lemma = form.lower()  # "left" the side, not the past of "leave"
        tokens.append(Token(form, lemma, tag, start_index + i, options))
        if tag == "AUX":
            in_chain = True
        elif tag != "ADV" and tag != "CLITIC":
            in_chain = False
        prev_tag = tag
    return tuple(tokens)


# ---------------------------------------------------------------------------
# chunking


def _is_name_letter(t: Token) -> bool:
    return len(t.form) == 1 and t.form.isupper() and t.tag == "NOUN"


def _noun_run(tokens: tuple[Token, ...], i: int, heads: frozenset = frozenset()) -> int:
    """End index (exclusive) of a maximal noun group starting at ``i``; ``i`` if none.

    A named vehicle ("vehicle B") after another noun opens a new group, so
    "the junction vehicle B" splits before "vehicle" but "the police car"
    stays whole.
    """
    if tokens[i].tag == "PRON":
        return i + 1
    j = i
    seen_noun = False
    while j < len(tokens):
        tag = tokens[j].tag
        if tag in ("DET", "POSS") and (seen_noun or j > i and tokens[j - 1].tag not in ("DET",)):
            break
        if tag == "NUM" and seen_noun:
            break
        if tag not in ("DET", "POSS", "NUM", "ADJ", "NOUN"):
            break
        if (tag == "NOUN" and seen_noun and tokens[j].lemma in heads and tokens[j - 1].lemma not in heads
                and j + 1 < len(tokens) and _is_name_letter(tokens[j + 1])):
            break
        seen_noun = seen_noun or tag == "NOUN"
        j += 1
    if not seen_noun:
        return i
    return j


def _retag_head(tokens: list[Token], i: int) -> bool:
    """Let a nominal prefix ending in a noun-capable word close as a noun group."""
    j = i
    while j < len(tokens) and tokens[j].tag in ("DET", "POSS", "NUM", "ADJ"):
        j += 1
    k = j - 1
    if k >= i and "NOUN" in tokens[k].options and tokens[k].tag != "NOUN":
        t = tokens[k]
        tokens[k] = Token(t.form, t.lemma, "NOUN", t.index, t.options)
        return True
    return False


def _verb_run(tokens: tuple[Token, ...], i: int) -> int:
    j = i
    while j < len(tokens) and tokens[j].tag == "CLITIC":
        j += 1
    start_main = j
    while j < len(tokens):
        tag = tokens[j].tag
        if tag in _VERBAL:
            return j + 1
        if tag == "AUX" or (tag == "ADV" and j > start_main) or (tag == "CLITIC" and j > i):
            j += 1
            continue
        break
    # auxiliary-only group ("was"), dropping trailing adverbs
    while j > i and tokens[j - 1].tag == "ADV":
        j -= 1
    return j


def _voice(group_tokens: tuple[Token, ...], following: Optional[Group], lex: Lexicon) -> Voice:
    main = group_tokens[-1]
    aux_lemmas = {t.lemma for t in group_tokens[:-1] if t.tag == "AUX"}
    if main.tag == "VPP" and aux_lemmas & lex.passive_auxiliaries:
        return Voice.PASSIVE
    if ("VPP" in main.options and following is not None and following.kind is GroupKind.PREPOSITIONAL
            and following.tokens[0].lemma in lex.agent_prepositions):
        return Voice.PASSIVE
    return Voice.ACTIVE


def chunk_sentence(tokens: tuple[Token, ...], lex: Lexicon) -> Sentence:
    toks = list(tokens)
    heads = frozenset(w for w, cue in lex.vehicle_cues.items() if cue != "part")
    groups: list[tuple[GroupKind, tuple[Token, ...]]] = []
    i = 0
    while i < len(toks):
        tag = toks[i].tag
        if tag == "PREP":
            k = i + 1
            end = _noun_run(tuple(toks), k, heads) if k < len(toks) else k
            if end == k and k < len(toks) and tokens_nominal(toks[k]) and _retag_head(toks, k):
                end = _noun_run(tuple(toks), k, heads)
            if end > k:
                groups.append((GroupKind.PREPOSITIONAL, tuple(toks[i:end])))
                i = end
                continue
            groups.append((GroupKind.OTHER, (toks[i],)))
            i += 1
        elif tag in ("DET", "POSS", "NUM", "ADJ", "NOUN", "PRON"):
            end = _noun_run(tuple(toks), i, heads)
            if end == i and _retag_head(toks, i):
                end = _noun_run(tuple(toks), i, heads)
            if end > i:
                groups.append((GroupKind.NOUN, tuple(toks[i:end])))
                i = end
            else:
                groups.append((GroupKind.OTHER, (toks[i],)))
                i += 1
        elif tag in ("CLITIC", "AUX") + _VERBAL:
            end = _verb_run(tuple(toks), i)
            if end > i:
                groups.append((GroupKind.VERB, tuple(toks[i:end])))
                i = end
            else:
                groups.append((GroupKind.OTHER, (toks[i],)))
                i += 1
        else:
            groups.append((GroupKind.OTHER, (toks[i],)))
            i += 1

    out: list[Group] = []
    for n, (kind, gtoks) in enumerate(groups):
        if kind is GroupKind.VERB:
            nxt = groups[n + 1] if n + 1 < len(groups) else None
            following = Group(nxt[0], nxt[1]) if nxt else None
            out.append(Group(kind, gtoks, _voice(gtoks, following, lex)))
        else:
            out.append(Group(kind, gtoks))
    return Sentence(tuple(toks), tuple(out))


def tokens_nominal(tok: Token) -> bool:
    return tok.tag in ("DET", "POSS", "NUM", "ADJ", "NOUN") or "NOUN" in tok.options


def chunk(text: str, lex: Lexicon) -> ChunkedText:
    """Tokenize, tag and chunk ``text`` into sentences of groups."""
    sentences = []
    index = 0
    for forms in tokenize(text):
        tokens = tag_sentence(forms, lex, index)
        index += len(tokens)
        sentences.append(chunk_sentence(tokens, lex))
    return ChunkedText(tuple(sentences))
