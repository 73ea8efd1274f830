"""Lexicon files: cue words, pronouns and part-of-speech entries.

One record per line, three TAB-separated fields::

    category<TAB>lemma<TAB>payload

Blank lines and lines starting with ``#`` are ignored. Lemmas of cue
categories may span several words (``stop sign``). ``pos`` records map a
word form to ``TAG[|TAG...] [lemma]``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import LexiconError
from .fd import EventKind, LightColor, RoadKind

POS_TAGS = frozenset(
    {"DET", "POSS", "PRON", "CLITIC", "ADJ", "NOUN", "NUM", "AUX", "VERB", "VPP", "VING", "ADV", "PREP", "CONJ"}
)
STATIC_KINDS = frozenset({"tree", "light", "stopsign", "crossing"})
PART_CUES = frozenset({"front", "rear", "left", "right"})
VEHICLE_CUES = frozenset({"car", "truck", "vehicle", "part"})
PRONOUN_ROLES = frozenset({"first", "third", "subject", "object", "possessive", "reflexive"})

CATEGORIES = (
    "collision_verb", "collision_noun", "road_cue", "static_cue", "part_cue", "vehicle_cue",
    "color_cue", "event_verb", "pronoun", "agent_prep", "genitive_prep", "passive_aux", "negation", "pos",
)


@dataclass(frozen=True)
class PosEntry:
    tags: tuple[str, ...]
    lemma: str


def _frozen(d: dict) -> Mapping:
    return MappingProxyType(dict(d))


@dataclass(frozen=True)
class Lexicon:
    collision_verbs: frozenset = frozenset()
    collision_nouns: frozenset = frozenset()
    road_cues: Mapping[str, RoadKind] = field(default_factory=dict)
    static_cues: Mapping[str, str] = field(default_factory=dict)
    part_cues: Mapping[str, str] = field(default_factory=dict)
    vehicle_cues: Mapping[str, str] = field(default_factory=dict)
    color_cues: Mapping[str, LightColor] = field(default_factory=dict)
    event_verbs: Mapping[str, tuple[EventKind, ...]] = field(default_factory=dict)
    pronouns: Mapping[str, frozenset] = field(default_factory=dict)
    agent_prepositions: frozenset = frozenset()
    genitive_prepositions: frozenset = frozenset()
    passive_auxiliaries: frozenset = frozenset()
    negations: frozenset = frozenset()
    pos: Mapping[str, PosEntry] = field(default_factory=dict)

    @property
    def actor_pronouns(self) -> frozenset:
        return frozenset(w for w, roles in self.pronouns.items() if "subject" in roles)

    def pronoun_roles(self, form: str) -> frozenset:
        return self.pronouns.get(form.lower(), frozenset())

    def lookup(self, form: str) -> PosEntry | None:
        return self.pos.get(form.lower())

    @classmethod
    def from_text(cls, text: str, source: str = "<lexicon>") -> "Lexicon":
        return _build([(source, text)])

    def merged(self, other: "Lexicon") -> "Lexicon":
        """Entries of ``other`` extend (and override) this lexicon."""
        kw = {}
        for name in self.__dataclass_fields__:
            mine, theirs = getattr(self, name), getattr(other, name)
            if isinstance(mine, frozenset):
                kw[name] = mine | theirs
            else:
                kw[name] = _frozen({**mine, **theirs})
        return Lexicon(**kw)


def _build(sources: Iterable[tuple[str, str]]) -> Lexicon:
    sets: dict[str, set] = {k: set() for k in ("collision_verbs", "collision_nouns", "agent_prepositions",
                                                "genitive_prepositions", "passive_auxiliaries", "negations")}
    maps: dict[str, dict] = {k: {} for k in ("road_cues", "static_cues", "part_cues", "vehicle_cues", "color_cues",
                                              "event_verbs", "pronouns", "pos")}
    set_for = {"collision_verb": "collision_verbs", "collision_noun": "collision_nouns", "agent_prep": "agent_prepositions",
               "genitive_prep": "genitive_prepositions", "passive_aux": "passive_auxiliaries",
               "negation": "negations"}

    for source, text in sources:
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise LexiconError(f"{source}:{lineno}: expected 3 TAB-separated fields, got {len(fields)}")
            category, lemma, payload = (f.strip() for f in fields)
            lemma = " ".join(lemma.lower().split())
            if not lemma:
                raise LexiconError(f"{source}:{lineno}: empty lemma")

            def bad(what: str) -> LexiconError:
                return LexiconError(f"{source}:{lineno}: {what} {payload!r} for {category} {lemma!r}")

            if category in set_for:
                sets[set_for[category]].add(lemma)
            elif category == "road_cue":
                try:
                    maps["road_cues"][lemma] = RoadKind.parse(payload)
                except ValueError:
                    raise bad("unknown road kind") from None
            elif category == "static_cue":
                if payload not in STATIC_KINDS:
                    raise bad("unknown static kind")
                maps["static_cues"][lemma] = payload
            elif category == "part_cue":
                if payload not in PART_CUES:
                    raise bad("unknown part cue")
                maps["part_cues"][lemma] = payload
            elif category == "vehicle_cue":
                if payload not in VEHICLE_CUES:
                    raise bad("unknown vehicle cue")
                maps["vehicle_cues"][lemma] = payload
            elif category == "color_cue":
                try:
                    maps["color_cues"][lemma] = LightColor.parse(payload)
                except ValueError:
                    raise bad("unknown light color") from None
            elif category == "event_verb":
                try:
                    events = tuple(EventKind.parse(e.strip()) for e in payload.split(",") if e.strip())
                except ValueError:
                    raise bad("unknown event in") from None
                if not events:
                    raise bad("empty event list")
                maps["event_verbs"][lemma] = events
            elif category == "pronoun":
                roles = frozenset(r.strip() for r in payload.split(",") if r.strip())
                if not roles or not roles <= PRONOUN_ROLES:
                    raise bad("unknown pronoun roles")
                maps["pronouns"][lemma] = roles
            elif category == "pos":
                parts = payload.split()
                if not parts or len(parts) > 2:
                    raise bad("malformed pos payload")
                tags = tuple(parts[0].split("|"))
                if not set(tags) <= POS_TAGS:
                    raise bad("unknown tag in")
                maps["pos"][lemma] = PosEntry(tags, parts[1].lower() if len(parts) == 2 else lemma)
            else:
                raise LexiconError(f"{source}:{lineno}: unknown category {category!r}")

    return Lexicon(**{k: frozenset(v) for k, v in sets.items()}, **{k: _frozen(v) for k, v in maps.items()})


def load_lexicon(*paths: str | os.PathLike) -> Lexicon:
    """Load and merge lexicon files; later files override earlier ones."""
    sources = []
    for p in paths:
        try:
            sources.append((str(p), Path(p).read_text(encoding="utf-8")))
        except OSError as exc:
            raise LexiconError(f"cannot read lexicon {p}: {exc}") from exc
    return _build(sources)


def bundled_lexicon_text(name: str) -> str:
    return resources.files("carsim.data").joinpath(f"{name}.lex").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def builtin_lexicon(name: str = "english") -> Lexicon:
    """The shipped ``english`` or ``french`` lexicon."""
    try:
        text = bundled_lexicon_text(name)
    except FileNotFoundError:
        raise LexiconError(f"no bundled lexicon named {name!r}") from None
    return _build([(f"{name}.lex", text)])


def default_lexicon() -> Lexicon:
    return builtin_lexicon("english")
