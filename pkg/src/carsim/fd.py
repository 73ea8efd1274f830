"""Formal accident descriptions: data model, text format, structural checks.

A document is made of three top-level blocks::

    STATIC [ ROAD [ KIND = crossroads; ] TREE [ ID = tree1; COORD = ( 5.0, -5.0 ); ] ]
    DYNAMIC [ VEHICLE [ ID = vehicleB; KIND = car; INITDIRECTION = east;
                        CHAIN [ EVENT [ KIND = driving_forward; ] ] ] ]
    ACCIDENT [ COLLISION [ ACTOR = vehicleB, front; VICTIM = tree1, unknown; ] ]

Block names and keys are case-insensitive, identifiers are not.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Union

from .errors import FDSyntaxError, FDValidationError, FDValueError


class _Tag(str, Enum):
    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str):
        try:
            return cls(text.lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown {cls.__name__} {text!r} (one of {choices})") from None


class RoadKind(_Tag):
    CROSSROADS = "crossroads"
    STRAIGHTROAD = "straightroad"
    TURN_LEFT = "turn_left"
    TURN_RIGHT = "turn_right"

    @property
    def is_turn(self) -> bool:
        return self in (RoadKind.TURN_LEFT, RoadKind.TURN_RIGHT)


class EventKind(_Tag):
    DRIVING_FORWARD = "driving_forward"
    STOP = "stop"
    TURN_LEFT = "turn_left"
    TURN_RIGHT = "turn_right"
    CHANGE_LANE_LEFT = "change_lane_left"
    CHANGE_LANE_RIGHT = "change_lane_right"
    OVERTAKE = "overtake"


class VehiclePart(_Tag):
    FRONT = "front"
    REAR = "rear"
    LEFTSIDE = "leftside"
    RIGHTSIDE = "rightside"
    UNKNOWN = "unknown"


class Direction(_Tag):
    NORTH = "north"
    SOUTH = "south"
    EAST = "east"
    WEST = "west"

    @property
    def vector(self) -> tuple[float, float]:
        return _DIRECTION_VECTORS[self]

    def turned(self, left: bool) -> "Direction":
        order = [Direction.EAST, Direction.NORTH, Direction.WEST, Direction.SOUTH]
        step = 1 if left else -1
        return order[(order.index(self) + step) % 4]

    @property
    def opposite(self) -> "Direction":
        return self.turned(True).turned(True)


_DIRECTION_VECTORS = {
    Direction.EAST: (1.0, 0.0),
    Direction.NORTH: (0.0, 1.0),
    Direction.WEST: (-1.0, 0.0),
    Direction.SOUTH: (0.0, -1.0),
}


class VehicleKind(_Tag):
    CAR = "car"
    TRUCK = "truck"


class LightColor(_Tag):
    RED = "red"
    ORANGE = "orange"
    GREEN = "green"
    INACTIVE = "inactive"


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def distance(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Road:
    kind: RoadKind

    ident = None
    coord = None


@dataclass(frozen=True)
class Tree:
    ident: str
    coord: Optional[Point2] = None


@dataclass(frozen=True)
class Light:
    ident: str
    coord: Optional[Point2] = None
    color: LightColor = LightColor.INACTIVE


@dataclass(frozen=True)
class StopSign:
    coord: Optional[Point2] = None

    ident = None


@dataclass(frozen=True)
class Crossing:
    coord: Optional[Point2] = None

    ident = None


StaticObject = Union[Road, Tree, Light, StopSign, Crossing]


@dataclass(frozen=True)
class Vehicle:
    ident: str
    kind: VehicleKind = VehicleKind.CAR
    init_direction: Optional[Direction] = None
    chain: tuple[EventKind, ...] = ()


@dataclass(frozen=True)
class Participant:
    ident: str
    part: VehiclePart = VehiclePart.UNKNOWN


@dataclass(frozen=True)
class Collision:
    actor: Participant
    victim: Participant
    coord: Optional[Point2] = None


@dataclass(frozen=True)
class FormalDescription:
    statics: tuple[StaticObject, ...] = ()
    dynamics: tuple[Vehicle, ...] = ()
    collisions: tuple[Collision, ...] = ()

    @property
    def road(self) -> Optional[Road]:
        return next((s for s in self.statics if isinstance(s, Road)), None)

    @property
    def road_kind(self) -> RoadKind:
        road = self.road
        return road.kind if road is not None else RoadKind.STRAIGHTROAD

    def vehicle(self, ident: str) -> Optional[Vehicle]:
        return next((v for v in self.dynamics if v.ident == ident), None)

    def static(self, ident: str) -> Optional[StaticObject]:
        return next((s for s in self.statics if s.ident == ident), None)


# ---------------------------------------------------------------------------
# validation

IDENTIFIER = re.compile(r"[^\W\d]\w*\Z")


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: Optional[str] = None


def validate_fd(fd: FormalDescription) -> list[Violation]:
    """Return every structural violation of ``fd``; empty means valid."""
    out: list[Violation] = []
    roads = [s for s in fd.statics if isinstance(s, Road)]
    if not roads:
        out.append(Violation("missing_road", "no ROAD block among the static objects"))
    elif len(roads) > 1:
        out.append(Violation("multiple_roads", f"{len(roads)} ROAD blocks, exactly one expected"))

    kinds: dict[str, str] = {}
    for obj in [*fd.statics, *fd.dynamics]:
        ident = obj.ident
        if ident is None:
            continue
        label = type(obj).__name__.lower()
        if not IDENTIFIER.match(ident):
            out.append(Violation("invalid_id", f"{label} id {ident!r} is not an identifier", ident))
        if ident in kinds:
            out.append(Violation("duplicate_id", f"id {ident!r} used by {kinds[ident]} and {label}", ident))
        else:
            kinds[ident] = label

    for s in fd.statics:
        if s.coord is not None and not all(math.isfinite(c) for c in s.coord):
            out.append(Violation("non_finite_coord", f"{type(s).__name__.lower()} has a non-finite coordinate", s.ident))

    vehicle_ids = {v.ident for v in fd.dynamics}
    static_ids = {s.ident for s in fd.statics if s.ident is not None}
    for n, c in enumerate(fd.collisions, 1):
        actor, victim = c.actor.ident, c.victim.ident
        if actor in static_ids:
            out.append(Violation("static_actor", f"collision {n}: actor {actor!r} is a static object; the actor must be a vehicle", actor))
        elif actor not in vehicle_ids:
            out.append(Violation("dangling_reference", f"collision {n}: actor {actor!r} does not name a vehicle", actor))
        if victim not in vehicle_ids and victim not in static_ids:
            out.append(Violation("dangling_reference", f"collision {n}: victim {victim!r} does not name a vehicle, tree or light", victim))
        if actor == victim:
            out.append(Violation("self_collision", f"collision {n}: actor and victim are both {actor!r}", actor))
        if c.coord is not None and not all(math.isfinite(v) for v in c.coord):
            out.append(Violation("non_finite_coord", f"collision {n} has a non-finite coordinate"))
    return out


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*)
  | (?P<number>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[^\W\d]\w*)
  | (?P<punct>[\[\];=,()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # number | ident | punct | eof
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FDSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# ---------------------------------------------------------------------------
# generic block tree


@dataclass
class _Entry:
    key: str
    tok: _Tok
    values: list  # items: _Tok (ident/number) or tuple[float, float]


@dataclass
class _Block:
    name: str
    tok: _Tok
    items: list = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0) -> _Tok:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            raise FDSyntaxError(f"unexpected {_describe(tok)}", tok.line, tok.col, repr(text))
        return tok

    def document(self) -> list[_Block]:
        blocks = []
        while self.peek().kind != "eof":
            blocks.append(self.block())
        return blocks

    def block(self) -> _Block:
        tok = self.next()
        if tok.kind != "ident":
            raise FDSyntaxError(f"unexpected {_describe(tok)}", tok.line, tok.col, "a block name")
        self.expect("[")
        blk = _Block(tok.text.upper(), tok)
        while True:
            nxt = self.peek()
            if nxt.text == "]" and nxt.kind == "punct":
                self.next()
                return blk
            if nxt.kind != "ident":
                raise FDSyntaxError(f"unexpected {_describe(nxt)}", nxt.line, nxt.col, "a key, a block or ']'")
            after = self.peek(1)
            if after.text == "[":
                blk.items.append(self.block())
            elif after.text == "=":
                blk.items.append(self.entry())
            else:
                raise FDSyntaxError(f"unexpected {_describe(after)}", after.line, after.col, "'=' or '['")

    def entry(self) -> _Entry:
        key = self.next()
        self.expect("=")
        values = [self.value()]
        while self.peek().text == ",":
            self.next()
            values.append(self.value())
        self.expect(";")
        return _Entry(key.text.upper(), key, values)

    def value(self):
        tok = self.next()
        if tok.kind in ("ident", "number"):
            return tok
        if tok.text == "(":
            x = self.number()
            self.expect(",")
            y = self.number()
            self.expect(")")
            return (x, y)
        raise FDSyntaxError(f"unexpected {_describe(tok)}", tok.line, tok.col, "a value")

    def number(self) -> float:
        tok = self.next()
        if tok.kind != "number":
            raise FDSyntaxError(f"unexpected {_describe(tok)}", tok.line, tok.col, "a number")
        return float(tok.text)


def _describe(tok: _Tok) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


# ---------------------------------------------------------------------------
# interpretation of the block tree


class _Fields:
    """Entries of one block, keyed by upper-cased name, each used at most once."""

    def __init__(self, blk: _Block, allowed_keys: set[str], allowed_blocks: set[str]):
        self.blk = blk
        self.entries: dict[str, _Entry] = {}
        self.blocks: list[_Block] = []
        for item in blk.items:
            if isinstance(item, _Entry):
                if item.key not in allowed_keys:
                    raise FDSyntaxError(f"unknown key {item.tok.text!r} in {blk.name}", item.tok.line, item.tok.col,
                                        " or ".join(sorted(allowed_keys)) or "no keys")
                if item.key in self.entries:
                    raise FDSyntaxError(f"duplicate key {item.tok.text!r} in {blk.name}", item.tok.line, item.tok.col)
                self.entries[item.key] = item
            else:
                if item.name not in allowed_blocks:
                    raise FDSyntaxError(f"unexpected block {item.tok.text!r} in {blk.name}", item.tok.line, item.tok.col,
                                        " or ".join(sorted(allowed_blocks)) or "no blocks")
                self.blocks.append(item)

    def ident(self, key: str, required: bool = True) -> Optional[str]:
        entry = self._get(key, required)
        if entry is None:
            return None
        tok = self._single(entry)
        if not isinstance(tok, _Tok) or tok.kind != "ident":
            raise FDValueError(f"{key} expects an identifier", entry.tok.line, entry.tok.col)
        return tok.text

    def tag(self, key: str, enum, required: bool = True):
        text = self.ident(key, required)
        if text is None:
            return None
        try:
            return enum.parse(text)
        except ValueError as exc:
            entry = self.entries[key]
            raise FDValueError(str(exc), entry.tok.line, entry.tok.col) from None

    def coord(self, key: str = "COORD") -> Optional[Point2]:
        entry = self._get(key, False)
        if entry is None:
            return None
        val = self._single(entry)
        if not isinstance(val, tuple):
            raise FDValueError(f"{key} expects a coordinate pair ( x, y )", entry.tok.line, entry.tok.col)
        return Point2(*val)

    def participant(self, key: str) -> Participant:
        entry = self._get(key, True)
        vals = entry.values
        if len(vals) > 2 or any(not isinstance(v, _Tok) or v.kind != "ident" for v in vals):
            raise FDValueError(f"{key} expects 'id, part'", entry.tok.line, entry.tok.col)
        part = VehiclePart.UNKNOWN
        if len(vals) == 2:
            try:
                part = VehiclePart.parse(vals[1].text)
            except ValueError as exc:
                raise FDValueError(str(exc), vals[1].line, vals[1].col) from None
        return Participant(vals[0].text, part)

    def _get(self, key: str, required: bool) -> Optional[_Entry]:
        entry = self.entries.get(key)
        if entry is None and required:
            raise FDSyntaxError(f"{self.blk.name} block lacks {key}", self.blk.tok.line, self.blk.tok.col, key)
        return entry

    @staticmethod
    def _single(entry: _Entry):
        if len(entry.values) != 1:
            raise FDValueError(f"{entry.key} expects a single value", entry.tok.line, entry.tok.col)
        return entry.values[0]


def _static(blk: _Block) -> StaticObject:
    if blk.name == "ROAD":
        f = _Fields(blk, {"KIND"}, set())
        return Road(f.tag("KIND", RoadKind))
    if blk.name == "TREE":
        f = _Fields(blk, {"ID", "COORD"}, set())
        return Tree(f.ident("ID"), f.coord())
    if blk.name == "LIGHT":
        f = _Fields(blk, {"ID", "COORD", "COLOR"}, set())
        color = f.tag("COLOR", LightColor, required=False) or LightColor.INACTIVE
        return Light(f.ident("ID"), f.coord(), color)
    if blk.name == "STOPSIGN":
        return StopSign(_Fields(blk, {"COORD"}, set()).coord())
    if blk.name == "CROSSING":
        return Crossing(_Fields(blk, {"COORD"}, set()).coord())
    raise FDSyntaxError(f"unexpected block {blk.tok.text!r} in STATIC", blk.tok.line, blk.tok.col,
                        "ROAD, TREE, LIGHT, STOPSIGN or CROSSING")


def _vehicle(blk: _Block) -> Vehicle:
    f = _Fields(blk, {"ID", "KIND", "INITDIRECTION"}, {"CHAIN"})
    if len(f.blocks) > 1:
        extra = f.blocks[1].tok
        raise FDSyntaxError("duplicate CHAIN block", extra.line, extra.col)
    chain: list[EventKind] = []
    if f.blocks:
        cf = _Fields(f.blocks[0], set(), {"EVENT"})
        for ev in cf.blocks:
            chain.append(_Fields(ev, {"KIND"}, set()).tag("KIND", EventKind))
    kind = f.tag("KIND", VehicleKind, required=False) or VehicleKind.CAR
    direction = f.tag("INITDIRECTION", Direction, required=False)
    return Vehicle(f.ident("ID"), kind, direction, tuple(chain))


def _collision(blk: _Block) -> Collision:
    f = _Fields(blk, {"ACTOR", "VICTIM", "COORD"}, set())
    return Collision(f.participant("ACTOR"), f.participant("VICTIM"), f.coord())


_TOP = {"STATIC": ("ROAD", "TREE", "LIGHT", "STOPSIGN", "CROSSING"), "DYNAMIC": ("VEHICLE",), "ACCIDENT": ("COLLISION",)}


def parse_fd(text: str, *, check: bool = True) -> FormalDescription:
    """Parse an FD document.

    With ``check`` (the default) structural violations found by
    :func:`validate_fd` raise :class:`FDValidationError`.
    """
    seen: dict[str, _Block] = {}
    for blk in _Parser(text).document():
        if blk.name not in _TOP:
            raise FDSyntaxError(f"unexpected block {blk.tok.text!r}", blk.tok.line, blk.tok.col, "STATIC, DYNAMIC or ACCIDENT")
        if blk.name in seen:
            raise FDSyntaxError(f"duplicate {blk.name} block", blk.tok.line, blk.tok.col)
        seen[blk.name] = blk

    def children(name: str) -> list[_Block]:
        blk = seen.get(name)
        if blk is None:
            return []
        return _Fields(blk, set(), set(_TOP[name])).blocks

    fd = FormalDescription(
        statics=tuple(_static(b) for b in children("STATIC")),
        dynamics=tuple(_vehicle(b) for b in children("DYNAMIC")),
        collisions=tuple(_collision(b) for b in children("ACCIDENT")),
    )
    if check:
        violations = validate_fd(fd)
        if violations:
            raise FDValidationError(violations)
    return fd


# ---------------------------------------------------------------------------
# serialization

_INDENT = "   "


def _num(value: float) -> str:
    return repr(float(value))


def _coord(p: Point2) -> str:
    return f"( {_num(p.x)}, {_num(p.y)} )"


def serialize_fd(fd: FormalDescription) -> str:
    lines: list[str] = ["// Static objects", "STATIC ["]

    def emit(depth: int, text: str) -> None:
        lines.append(_INDENT * depth + text)

    for s in fd.statics:
        if isinstance(s, Road):
            emit(1, "ROAD [")
            emit(2, f"KIND = {s.kind};")
        elif isinstance(s, (Tree, Light)):
            emit(1, "TREE [" if isinstance(s, Tree) else "LIGHT [")
            emit(2, f"ID = {s.ident};")
            if s.coord is not None:
                emit(2, f"COORD = {_coord(s.coord)};")
            if isinstance(s, Light):
                emit(2, f"COLOR = {s.color};")
        else:
            emit(1, "STOPSIGN [" if isinstance(s, StopSign) else "CROSSING [")
            if s.coord is not None:
                emit(2, f"COORD = {_coord(s.coord)};")
        emit(1, "]")
    lines += ["]", "", "// Dynamic objects", "DYNAMIC ["]
    for v in fd.dynamics:
        emit(1, "VEHICLE [")
        emit(2, f"ID = {v.ident}; KIND = {v.kind};")
        if v.init_direction is not None:
            emit(2, f"INITDIRECTION = {v.init_direction};")
        emit(2, "CHAIN [")
        for ev in v.chain:
            emit(3, "EVENT [")
            emit(4, f"KIND = {ev};")
            emit(3, "]")
        emit(2, "]")
        emit(1, "]")
    lines += ["]", "", "// Collision objects", "ACCIDENT ["]
    for c in fd.collisions:
        emit(1, "COLLISION [")
        emit(2, f"ACTOR = {c.actor.ident}, {c.actor.part};")
        emit(2, f"VICTIM = {c.victim.ident}, {c.victim.part};")
        if c.coord is not None:
            emit(2, f"COORD = {_coord(c.coord)};")
        emit(1, "]")
    lines.append("]")
    return "\n".join(lines) + "\n"
