"""Rule-based extraction of an FD template from a chunked report.

The extractor is goal-driven: whatever it fails to find is filled from
the road-configuration defaults, so every input yields a valid FD.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence, Union

from .chunker import ChunkedText, Group, GroupKind, Sentence, Token, Voice, chunk
from .fd import (
    Collision, Crossing, Direction, EventKind, FormalDescription, Light, LightColor, Participant, Road,
    RoadKind, StaticObject, StopSign, Tree, Vehicle, VehicleKind, VehiclePart,
)
from .lexicon import Lexicon, default_lexicon
from .scenario import ROAD_DEFAULTS, assign_directions, default_chain

log = logging.getLogger(__name__)

NARRATOR_ID = "enunciator"
PLACEHOLDER_PREFIX = "?"  # never a valid FD identifier
NARRATOR_LETTERS = frozenset({"a"})  # "the vehicle A" is the narrator's


# ---------------------------------------------------------------------------
# mentions and what they denote


@dataclass(frozen=True)
class Mention:
    """A noun phrase (with its genitive complements) or a lone pronoun."""

    sentence: int
    groups: tuple[Group, ...]
    pronoun: Optional[Token] = None

    @property
    def tokens(self) -> tuple[Token, ...]:
        if self.pronoun is not None:
            return (self.pronoun,)
        return tuple(t for g in self.groups for t in g.nominal)

    @property
    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)


class EntityKind(Enum):
    NONE = "none"
    NARRATOR = "narrator"
    VEHICLE = "vehicle"
    STATIC = "static"
    PRONOUN = "pronoun"  # third-person pronoun, left unresolved


@dataclass(frozen=True)
class Entity:
    kind: EntityKind
    key: str = ""  # normalized mention string (vehicles) or static kind (statics)
    vehicle_kind: VehicleKind = VehicleKind.CAR
    subject: bool = True  # False for object-only pronouns ("me", "him")


NO_ENTITY = Entity(EntityKind.NONE)


def _cue_spans(tokens: Sequence[Token], cues, tags=("NOUN", "ADJ")) -> list[tuple[int, int, str]]:
    """Longest-first matches of multiword lemma cues over nominal tokens."""
    lemmas = [t.lemma if t.tag in tags else None for t in tokens]
    out = []
    i = 0
    longest = max((len(k.split()) for k in cues), default=1)
    while i < len(tokens):
        for n in range(min(longest, len(tokens) - i), 0, -1):
            seq = lemmas[i:i + n]
            if None in seq:
                continue
            key = " ".join(seq)
            if key in cues:
                out.append((i, i + n, cues[key]))
                i += n
                break
        else:
            i += 1
    return out


def normalize_mention(tokens: Sequence[Token]) -> str:
    """Lower-cased words minus determiners and possessives."""
    words = [t.form.lower() for t in tokens if t.tag not in ("DET", "POSS") and any(c.isalnum() for c in t.form)]
    return " ".join(words)


def _segment_entity(tokens: Sequence[Token], lex: Lexicon) -> Entity:
    if len(tokens) == 1 and tokens[0].tag in ("PRON", "CLITIC"):
        roles = lex.pronoun_roles(tokens[0].form)
        if "first" in roles:
            return Entity(EntityKind.NARRATOR, subject="subject" in roles)
        if "third" in roles:
            return Entity(EntityKind.PRONOUN, subject="subject" in roles)
        return NO_ENTITY
    nouns = [(i, lex.vehicle_cues.get(t.lemma)) for i, t in enumerate(tokens) if t.tag == "NOUN"]
    vehicle_nouns = [(i, c) for i, c in nouns if c in ("car", "truck", "vehicle")]
    has_part = any(c == "part" for _, c in nouns)
    possessors = [lex.pronoun_roles(t.form) for t in tokens if t.tag in ("POSS", "PRON", "CLITIC")]
    first_person = any("first" in r and "possessive" in r for r in possessors)
    third_person = any("third" in r and "possessive" in r for r in possessors)
    if first_person and (vehicle_nouns or has_part):
        return Entity(EntityKind.NARRATOR)
    if vehicle_nouns:
        i, cue = vehicle_nouns[0]
        after = tokens[i + 1] if i + 1 < len(tokens) else None
        if after is not None and after.tag == "NOUN" and after.lemma in NARRATOR_LETTERS and len(after.form) == 1:
            return Entity(EntityKind.NARRATOR)
        kind = VehicleKind.TRUCK if cue == "truck" else VehicleKind.CAR
        return Entity(EntityKind.VEHICLE, normalize_mention(tokens), kind)
    statics = _cue_spans(tokens, lex.static_cues)
    if statics:
        return Entity(EntityKind.STATIC, statics[0][2])
    if third_person and has_part:
        return Entity(EntityKind.PRONOUN, subject=False)
    return NO_ENTITY


def classify(mention: Optional[Mention], lex: Lexicon) -> Entity:
    """What a mention denotes; the first group that denotes something wins."""
    if mention is None:
        return NO_ENTITY
    if mention.pronoun is not None:
        return _segment_entity((mention.pronoun,), lex)
    for g in mention.groups:
        ent = _segment_entity(g.nominal, lex)
        if ent.kind is not EntityKind.NONE:
            return ent
    return NO_ENTITY


def _valid_actor(ent: Entity) -> bool:
    return ent.kind in (EntityKind.NARRATOR, EntityKind.VEHICLE, EntityKind.PRONOUN) and ent.subject


def _valid_victim(ent: Entity) -> bool:
    if ent.kind is EntityKind.STATIC:
        return ent.key in ("tree", "light")
    return ent.kind in (EntityKind.NARRATOR, EntityKind.VEHICLE, EntityKind.PRONOUN)


def _window(sentence: Sentence, index: int, lex: Lexicon, sentence_index: int) -> Mention:
    groups = [sentence.groups[index]]
    j = index + 1
    while j < len(sentence.groups):
        g = sentence.groups[j]
        if g.kind is GroupKind.PREPOSITIONAL and g.tokens[0].lemma in lex.genitive_prepositions:
            groups.append(g)
            j += 1
        else:
            break
    return Mention(sentence_index, tuple(groups))


def _locate(verb: Group, sentence: Union[Sentence, Sequence[Group]]) -> tuple[Sentence, int]:
    if not isinstance(sentence, Sentence):
        groups = tuple(sentence)
        sentence = Sentence(tuple(t for g in groups for t in g.tokens), groups)
    return sentence, sentence.position(verb)


# ---------------------------------------------------------------------------
# grammatical relations


def find_subject(verb: Group, sentence, lex: Lexicon, sentence_index: int = 0) -> Optional[Mention]:
    """Last noun group before ``verb`` that can be an actor."""
    sent, pos = _locate(verb, sentence)
    for i in range(pos - 1, -1, -1):
        if sent.groups[i].kind is GroupKind.NOUN:
            m = _window(sent, i, lex, sentence_index)
            if _valid_actor(classify(m, lex)):
                return m
    return None


def _object_candidates(sent: Sentence, pos: int, lex: Lexicon):
    for i in range(pos + 1, len(sent.groups)):
        g = sent.groups[i]
        if g.kind is GroupKind.NOUN:
            yield i
        elif g.kind is GroupKind.PREPOSITIONAL and g.tokens[0].lemma not in lex.genitive_prepositions:
            yield i


def find_object(verb: Group, sentence, lex: Lexicon, sentence_index: int = 0) -> Optional[Mention]:
    """Victim of an active collision verb.

    First noun group after the verb denoting a vehicle, tree or light; else a
    pronoun inside the verb group; else the first noun group after the verb.
    """
    sent, pos = _locate(verb, sentence)
    first = None
    for i in _object_candidates(sent, pos, lex):
        m = _window(sent, i, lex, sentence_index)
        if first is None:
            first = m
        if _valid_victim(classify(m, lex)):
            return m
    for tok in verb.tokens:
        if tok.tag in ("CLITIC", "PRON") and lex.pronoun_roles(tok.form):
            return Mention(sentence_index, (), tok)
    return first


def find_agent(verb: Group, sentence, lex: Lexicon, sentence_index: int = 0) -> Optional[Mention]:
    """Actor of a passive verb: the noun phrase of the first agent prepositional group."""
    sent, pos = _locate(verb, sentence)
    for i in range(pos + 1, len(sent.groups)):
        g = sent.groups[i]
        if g.kind is GroupKind.PREPOSITIONAL and g.tokens[0].lemma in lex.agent_prepositions:
            m = _window(sent, i, lex, sentence_index)
            return m if _valid_actor(classify(m, lex)) else None
    return None


# ---------------------------------------------------------------------------
# participating parts


def part_from_tokens(tokens: Sequence[Token], lex: Lexicon) -> VehiclePart:
    cues = [lex.part_cues[t.lemma] for t in tokens if t.lemma in lex.part_cues]
    if not cues:
        return VehiclePart.UNKNOWN
    part_noun = any(t.tag == "NOUN" and lex.vehicle_cues.get(t.lemma) == "part" for t in tokens)
    sides = [c for c in cues if c in ("left", "right")]
    ends = [c for c in cues if c in ("front", "rear")]
    if sides and (not ends or part_noun):
        return VehiclePart.LEFTSIDE if sides[0] == "left" else VehiclePart.RIGHTSIDE
    return VehiclePart.FRONT if ends[0] == "front" else VehiclePart.REAR


def extract_part(mention: Union[Mention, Group, Sequence[Token], None], lex: Lexicon) -> VehiclePart:
    """Map front/rear/left/right cues in a mention to a vehicle part."""
    if mention is None:
        return VehiclePart.UNKNOWN
    if isinstance(mention, Mention):
        tokens = mention.tokens
    elif isinstance(mention, Group):
        tokens = mention.nominal
    else:
        tokens = tuple(mention)
    return part_from_tokens(tokens, lex)


def _names_part(g: Group, lex: Lexicon) -> bool:
    """"on the left side" names a part; "in the left lane" does not."""
    return any(t.tag == "NOUN" and lex.vehicle_cues.get(t.lemma) == "part" for t in g.nominal)


def _part_window(sent: Sentence, mention: Mention, lex: Lexicon) -> tuple[Token, ...]:
    """Mention tokens plus directly following prepositional groups naming a part."""
    tokens = list(mention.tokens)
    if not mention.groups:
        return tuple(tokens)
    j = sent.position(mention.groups[-1]) + 1
    while j < len(sent.groups):
        g = sent.groups[j]
        if (g.kind is GroupKind.PREPOSITIONAL and g.tokens[0].lemma not in lex.agent_prepositions
                and _names_part(g, lex)):
            tokens.extend(g.nominal)
            j += 1
        else:
            break
    return tuple(tokens)


# ---------------------------------------------------------------------------
# static objects and road configuration


def _nominal_tokens(chunks: ChunkedText) -> list[tuple[Token, ...]]:
    out = []
    for s in chunks.sentences:
        for g in s.groups:
            if g.kind in (GroupKind.NOUN, GroupKind.PREPOSITIONAL):
                out.append(g.nominal)
    return out


def extract_road_kind(chunks: ChunkedText, lex: Lexicon) -> RoadKind:
    """crossroads beats a bend; straightroad when no cue occurs."""
    found = set()
    for tokens in _nominal_tokens(chunks):
        found.update(kind for _, _, kind in _cue_spans(tokens, lex.road_cues, tags=("NOUN",)))
    if RoadKind.CROSSROADS in found:
        return RoadKind.CROSSROADS
    if RoadKind.TURN_LEFT in found or RoadKind.TURN_RIGHT in found:
        return RoadKind.TURN_LEFT  # both turn directions are treated alike
    return RoadKind.STRAIGHTROAD


_STATIC_ORDER = ("tree", "light", "stopsign", "crossing")


def extract_statics(chunks: ChunkedText, lex: Lexicon) -> list[StaticObject]:
    """One static object per kind of cue found, ids numbered by kind."""
    found: dict[str, LightColor] = {}
    for tokens in _nominal_tokens(chunks):
        for _, _, kind in _cue_spans(tokens, lex.static_cues):
            if kind not in found:
                colors = [lex.color_cues[t.lemma] for t in tokens if t.lemma in lex.color_cues]
                found[kind] = colors[0] if colors else LightColor.INACTIVE
    out: list[StaticObject] = []
    for kind, color in found.items():
        if kind == "tree":
            out.append(Tree("tree1"))
        elif kind == "light":
            out.append(Light("light1", None, color))
        elif kind == "stopsign":
            out.append(StopSign())
        else:
            out.append(Crossing())
    return out


# ---------------------------------------------------------------------------
# collisions


@dataclass(frozen=True)
class CollisionCandidate:
    verb_group: Group
    sentence: int
    actor_mention: Optional[Mention]
    victim_mention: Optional[Mention]
    actor_part: VehiclePart = VehiclePart.UNKNOWN
    victim_part: VehiclePart = VehiclePart.UNKNOWN


def _verb_adverbs(sent: Sentence, pos: int, verb: Group) -> list[Token]:
    """Adverbs inside the verb group and right after it ("collided head-on")."""
    out = [t for t in verb.tokens if t.tag == "ADV"]
    for g in sent.groups[pos + 1:]:
        if g.kind is not GroupKind.OTHER or any(t.tag != "ADV" for t in g.tokens):
            break
        out.extend(g.tokens)
    return out


def _actor_part(sent: Sentence, pos: int, verb: Group, actor: Mention, lex: Lexicon) -> VehiclePart:
    part = part_from_tokens(_part_window(sent, actor, lex), lex)
    if part is VehiclePart.UNKNOWN:
        # "collided head-on"
        part = part_from_tokens(_verb_adverbs(sent, pos, verb), lex)
    if part is VehiclePart.UNKNOWN:
        # "... hence a second frontal collision"
        for g in sent.groups[pos + 1:]:
            if g.kind is GroupKind.NOUN and any(t.lemma in lex.collision_nouns for t in g.tokens):
                part = part_from_tokens(g.tokens, lex)
                if part is not VehiclePart.UNKNOWN:
                    break
    return part


def _victim_part(sent: Sentence, pos: int, verb: Group, victim: Mention, lex: Lexicon) -> VehiclePart:
    part = part_from_tokens(_part_window(sent, victim, lex), lex)
    if part is VehiclePart.UNKNOWN and verb.voice is Voice.PASSIVE:
        # "was struck on the right side by ..."
        for g in sent.groups[pos + 1:]:
            if g.kind is not GroupKind.PREPOSITIONAL or g.tokens[0].lemma in lex.agent_prepositions:
                break
            part = part_from_tokens(g.nominal, lex)
            if part is not VehiclePart.UNKNOWN:
                break
    if part is VehiclePart.UNKNOWN and classify(victim, lex).kind in (EntityKind.NARRATOR, EntityKind.VEHICLE):
        # "collided head-on" describes both vehicles
        part = part_from_tokens(_verb_adverbs(sent, pos, verb), lex)
    return part


def _same_entity(a: Entity, b: Entity) -> bool:
    if a.kind is EntityKind.NARRATOR:
        return b.kind is EntityKind.NARRATOR
    return a.kind in (EntityKind.VEHICLE, EntityKind.STATIC) and a.kind is b.kind and a.key == b.key


def _elaborates(cand: CollisionCandidate, prev: CollisionCandidate, lex: Lexicon) -> bool:
    """A collision without actor re-mentioning a participant of the previous one.

    "Vehicle B collided with my vehicle. On the first impact, my rear fender
    on the left side was hit" describes one impact, not two.
    """
    if cand.actor_mention is not None:
        return False
    ent = classify(cand.victim_mention, lex)
    return any(m is not None and _same_entity(ent, classify(m, lex))
               for m in (prev.actor_mention, prev.victim_mention))


def _merge_part(prev: CollisionCandidate, cand: CollisionCandidate, lex: Lexicon) -> CollisionCandidate:
    if cand.victim_part is VehiclePart.UNKNOWN:
        return prev
    ent = classify(cand.victim_mention, lex)
    if (prev.victim_part is VehiclePart.UNKNOWN and prev.victim_mention is not None
            and _same_entity(ent, classify(prev.victim_mention, lex))):
        return replace(prev, victim_part=cand.victim_part)
    if prev.actor_part is VehiclePart.UNKNOWN and prev.actor_mention is not None:
        return replace(prev, actor_part=cand.victim_part)
    return prev


def extract_collisions(chunks: ChunkedText, lex: Lexicon) -> list[CollisionCandidate]:
    """One candidate per reported impact, in text order."""
    out: list[CollisionCandidate] = []
    for si, sent in enumerate(chunks.sentences):
        for pos, g in enumerate(sent.groups):
            if g.kind is not GroupKind.VERB or g.main_verb.lemma not in lex.collision_verbs:
                continue
            if g.voice is Voice.PASSIVE:
                victim = find_subject(g, sent, lex, si)
                actor = find_agent(g, sent, lex, si)
            else:
                actor = find_subject(g, sent, lex, si)
                victim = find_object(g, sent, lex, si)
            cand = CollisionCandidate(
                g, si, actor, victim,
                _actor_part(sent, pos, g, actor, lex) if actor else VehiclePart.UNKNOWN,
                _victim_part(sent, pos, g, victim, lex) if victim else VehiclePart.UNKNOWN,
            )
            if out and _elaborates(cand, out[-1], lex):
                out[-1] = _merge_part(out[-1], cand, lex)
                continue
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# coreference


def mention_identifier(key: str) -> str:
    """``"vehicle b"`` -> ``"vehicleB"``; empty when nothing usable is left."""
    words = [re.sub(r"\W", "", w) for w in key.split()]
    words = [w for w in words if w]
    if not words:
        return ""
    ident = words[0].lower() + "".join(w[:1].upper() + w[1:].lower() for w in words[1:])
    if ident[0].isdigit():
        ident = "v" + ident
    return ident


@dataclass
class _Registry:
    static_ids: dict[str, str]
    vehicles: dict[str, Vehicle] = field(default_factory=dict)
    key_to_id: dict[str, str] = field(default_factory=dict)

    def narrator(self) -> str:
        if NARRATOR_ID not in self.vehicles:
            self.vehicles[NARRATOR_ID] = Vehicle(NARRATOR_ID)
        return NARRATOR_ID

    def vehicle(self, ent: Entity) -> str:
        ident = self.key_to_id.get(ent.key)
        if ident is not None:
            return ident
        base = mention_identifier(ent.key) or "vehicle"
        ident, n = base, 1
        taken = set(self.vehicles) | set(self.static_ids.values())
        while ident in taken or ident == NARRATOR_ID:
            n += 1
            ident = f"{base}{n}"
        self.key_to_id[ent.key] = ident
        self.vehicles[ident] = Vehicle(ident, ent.vehicle_kind)
        return ident

    def reference(self, ent: Entity, role: str) -> Optional[str]:
        if ent.kind is EntityKind.NARRATOR:
            return self.narrator()
        if ent.kind is EntityKind.VEHICLE:
            return self.vehicle(ent)
        if ent.kind is EntityKind.STATIC and role == "victim":
            return self.static_ids.get(ent.key)
        return None


def _known_part(p: Participant, part: VehiclePart) -> Participant:
    return p if p.part is not VehiclePart.UNKNOWN else Participant(p.ident, part)


def resolve_references(candidates: Sequence[CollisionCandidate], statics: Sequence[StaticObject],
                       lex: Lexicon) -> tuple[list[Vehicle], list[Collision]]:
    """Map mentions to canonical ids, one vehicle per distinct id.

    First-person mentions become ``enunciator``; static victims point at the
    existing static object; other vehicles corefer on equal normalized
    strings. Missing participants get ``?n`` placeholder ids for :func:`build_fd`.
    """
    static_ids = {}
    for s in statics:
        if isinstance(s, Tree):
            static_ids.setdefault("tree", s.ident)
        elif isinstance(s, Light):
            static_ids.setdefault("light", s.ident)
    reg = _Registry(static_ids)
    collisions: list[Collision] = []
    placeholders = 0

    for cand in candidates:
        actor = reg.reference(classify(cand.actor_mention, lex), "actor")
        victim = reg.reference(classify(cand.victim_mention, lex), "victim")
        if actor is not None and actor == victim:
            victim = None
        if actor is None:
            placeholders += 1
            actor = f"{PLACEHOLDER_PREFIX}{placeholders}"
        if victim is None:
            placeholders += 1
            victim = f"{PLACEHOLDER_PREFIX}{placeholders}"
        prev = collisions[-1] if collisions else None
        if prev is not None and (prev.actor.ident, prev.victim.ident) == (actor, victim):
            # the same impact told twice: keep one, with any part the retelling adds
            collisions[-1] = Collision(_known_part(prev.actor, cand.actor_part), _known_part(prev.victim, cand.victim_part))
            continue
        collisions.append(Collision(Participant(actor, cand.actor_part), Participant(victim, cand.victim_part)))
    return list(reg.vehicles.values()), collisions


# ---------------------------------------------------------------------------
# event chains

_SKIPPABLE = frozenset({"DET", "POSS", "PREP", "ADV"})


def _match_event(sent: Sentence, verb: Group, lex: Lexicon) -> Optional[tuple[EventKind, ...]]:
    tokens = sent.tokens
    start, end = verb.span
    base = tokens[0].index
    main = verb.main_verb
    best: Optional[tuple[int, tuple[EventKind, ...]]] = None
    for pattern, events in lex.event_verbs.items():
        words = pattern.split()
        if best is not None and len(words) <= best[0]:
            continue
        for s in range(start, end):
            if _matches(tokens, s - base, words, main.index - base):
                best = (len(words), events)
                break
    return best[1] if best else None


def _matches(tokens: Sequence[Token], i: int, words: list[str], main: int) -> bool:
    if tokens[i].lemma != words[0]:
        return False
    used = [i]
    j = i + 1
    for w in words[1:]:
        while j < len(tokens) and tokens[j].lemma != w and tokens[j].tag in _SKIPPABLE:
            j += 1
        if j >= len(tokens) or tokens[j].lemma != w:
            return False
        used.append(j)
        j += 1
    return main in used


def extract_events(chunks: ChunkedText, vehicles: Sequence[Vehicle], lex: Lexicon,
                   diagnostics: Optional[list[str]] = None) -> list[Vehicle]:
    """Append the events of every movement verb to its vehicle, in text order."""
    chains: dict[str, list[EventKind]] = {v.ident: list(v.chain) for v in vehicles}
    order = [v.ident for v in vehicles]
    kinds = {v.ident: v for v in vehicles}
    for si, sent in enumerate(chunks.sentences):
        for g in sent.groups:
            if g.kind is not GroupKind.VERB:
                continue
            events = _match_event(sent, g, lex)
            if events is None or any(t.lemma in lex.negations for t in g.tokens):
                continue
            subject = find_subject(g, sent, lex, si)
            ent = classify(subject, lex)
            owner: Optional[str] = None
            if ent.kind is EntityKind.NARRATOR:
                owner = NARRATOR_ID
                if owner not in chains:
                    chains[owner] = []
                    order.append(owner)
                    kinds[owner] = Vehicle(owner)
            elif len(order) == 2 and NARRATOR_ID in order:
                owner = next(i for i in order if i != NARRATOR_ID)
            elif ent.kind is EntityKind.VEHICLE:
                wanted = mention_identifier(ent.key)
                owner = wanted if wanted in chains else None
            if owner is None:
                msg = f"dropped event(s) {','.join(e.value for e in events)} of {g.text!r}: no vehicle for subject"
                log.warning(msg)
                if diagnostics is not None:
                    diagnostics.append(msg)
                continue
            chains[owner].extend(events)
    return [replace(kinds[i], chain=tuple(chains[i])) for i in order]


# ---------------------------------------------------------------------------
# template filling


def build_fd(road: RoadKind, statics: Sequence[StaticObject], vehicles: Sequence[Vehicle],
             collisions: Sequence[Collision]) -> FormalDescription:
    """Fill every gap from the road defaults; the result always validates."""
    defaults = ROAD_DEFAULTS[road]
    vehicles = list(vehicles)
    collisions = list(collisions) or [Collision(Participant(f"{PLACEHOLDER_PREFIX}a"), Participant(f"{PLACEHOLDER_PREFIX}v"))]
    taken = {v.ident for v in vehicles} | {s.ident for s in statics if s.ident}

    def new_vehicle() -> str:
        n = 1
        while f"vehicle{n}" in taken:
            n += 1
        ident = f"vehicle{n}"
        taken.add(ident)
        vehicles.append(Vehicle(ident))
        return ident

    def pick(exclude: Optional[str]) -> str:
        for v in vehicles:
            if v.ident != exclude and not v.ident.startswith(PLACEHOLDER_PREFIX):
                return v.ident
        return new_vehicle()

    filled: list[Collision] = []
    for c in collisions:
        actor, victim = c.actor, c.victim
        actor_missing = actor.ident.startswith(PLACEHOLDER_PREFIX)
        victim_missing = victim.ident.startswith(PLACEHOLDER_PREFIX)
        if actor_missing and victim_missing:
            a = pick(None)
            victim = Participant(pick(a), defaults.victim_part)
            actor = Participant(a, defaults.actor_part)
        elif actor_missing:
            actor = Participant(pick(victim.ident), defaults.actor_part)
        elif victim_missing:
            victim = Participant(pick(actor.ident), defaults.victim_part)
        if actor.part is VehiclePart.UNKNOWN:
            actor = Participant(actor.ident, defaults.actor_part)
        filled.append(Collision(actor, victim, c.coord))

    directions = assign_directions(road, vehicles, filled)
    final = []
    for v in vehicles:
        d = directions[v.ident]
        chain = v.chain or default_chain(road, d)
        final.append(Vehicle(v.ident, v.kind, d, tuple(chain)))
    return FormalDescription((Road(road), *statics), tuple(final), tuple(filled))


# ---------------------------------------------------------------------------
# whole pipeline


@dataclass
class Extraction:
    fd: FormalDescription
    chunks: ChunkedText
    candidates: list[CollisionCandidate]
    diagnostics: list[str]


def extract(text: str, lex: Optional[Lexicon] = None) -> Extraction:
    lex = lex or default_lexicon()
    chunks = chunk(text, lex)
    road = extract_road_kind(chunks, lex)
    statics = extract_statics(chunks, lex)
    candidates = extract_collisions(chunks, lex)
    vehicles, collisions = resolve_references(candidates, statics, lex)
    diagnostics: list[str] = []
    vehicles = extract_events(chunks, vehicles, lex, diagnostics)
    fd = build_fd(road, statics, vehicles, collisions)
    return Extraction(fd, chunks, candidates, diagnostics)


def extract_fd(text: str, lex: Optional[Lexicon] = None) -> FormalDescription:
    """Report text to a valid FD."""
    return extract(text, lex).fd
