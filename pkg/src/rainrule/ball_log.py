"""Ball-by-ball match ingestion and per-innings cumulative trajectories.

Reads two document kinds:

* Cricsheet-style JSON (one match per file), using ``info.match_type``,
  ``info.dates[0]``, ``info.teams``, ``info.venue`` and
  ``innings[*].overs[*].deliveries[*]``.
* A canonical CSV ball log (fixtures and interop) with header
  ``match_id,format,innings,over,ball_in_over,legal,batter_runs,extras_runs,extras_kind,wicket``.

Normalization rules applied while building trajectories:

* the ball axis counts **legal deliveries only**, starting at 1, so a full
  ODI innings always spans 1..300;
* runs from wides and no-balls are credited to the next legal ball (or the
  previous one when an innings ends on an illegal delivery);
* wickets follow the same index placement as the runs of their delivery.
"""

from __future__ import annotations

import json
import warnings
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from datetime import date
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import ParseError, UnsupportedFormatError

__all__ = [
    "MatchFormat",
    "ExtrasKind",
    "DeliveryEvent",
    "InningsRecord",
    "MatchRecord",
    "InningsTrajectory",
    "Diagnostic",
    "Corpus",
    "ParseWarning",
    "parse_match",
    "load_corpus",
    "trajectory",
    "export_csv",
    "CSV_HEADER",
]

CSV_HEADER = (
    "match_id,format,innings,over,ball_in_over,legal,"
    "batter_runs,extras_runs,extras_kind,wicket"
)

# placeholder metadata for CSV ball logs, which carry none
_CSV_EPOCH = date(1900, 1, 1)


class MatchFormat(Enum):
    """Limited-overs format; fixes the scheduled number of legal balls."""

    ODI = "odi"
    T20I = "t20i"
    IPL = "ipl"

    @property
    def scheduled_balls(self) -> int:
        return 300 if self is MatchFormat.ODI else 120

    @property
    def scheduled_overs(self) -> int:
        return self.scheduled_balls // 6

    @classmethod
    def from_string(cls, name: str) -> "MatchFormat":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise UnsupportedFormatError(f"unknown match format: {name!r}") from None


class ExtrasKind(Enum):
    NONE = "none"
    WIDE = "wide"
    NO_BALL = "no_ball"
    BYE = "bye"
    LEG_BYE = "leg_bye"
    PENALTY = "penalty"


_ILLEGAL_KINDS = (ExtrasKind.WIDE, ExtrasKind.NO_BALL)


@dataclass(frozen=True)
class DeliveryEvent:
    """One delivery, legal or not.

    ``ball_in_over`` is the delivery's sequence number within its over,
    counting illegal deliveries, so ordering by (over, ball_in_over) is the
    bowling order.
    """

    over: int
    ball_in_over: int
    batter_runs: int
    extras_runs: int
    extras_kind: ExtrasKind
    wicket: bool
    legal: bool

    def __post_init__(self):
        if self.over < 0 or self.ball_in_over < 1:
            raise ValueError("over must be >= 0 and ball_in_over >= 1")
        if self.batter_runs < 0 or self.extras_runs < 0:
            raise ValueError("negative runs")
        if self.legal == (self.extras_kind in _ILLEGAL_KINDS):
            raise ValueError("legal flag inconsistent with extras kind")
        if self.extras_kind in _ILLEGAL_KINDS and self.extras_runs < 1:
            raise ValueError("wide/no-ball must credit at least one extra run")

    @property
    def total_runs(self) -> int:
        return self.batter_runs + self.extras_runs


@dataclass(frozen=True)
class InningsRecord:
    innings_index: int
    batting_team: str
    deliveries: tuple[DeliveryEvent, ...]

    def __post_init__(self):
        if self.innings_index not in (1, 2):
            raise ValueError("innings_index must be 1 or 2")
        object.__setattr__(self, "deliveries", tuple(self.deliveries))
        keys = [(d.over, d.ball_in_over) for d in self.deliveries]
        if any(b < a for a, b in zip(keys, keys[1:])):
            raise ValueError("deliveries not ordered by (over, ball_in_over)")
        if sum(d.wicket for d in self.deliveries) > 10:
            raise ValueError("more than 10 wickets in one innings")


@dataclass(frozen=True)
class MatchRecord:
    match_id: str
    format: MatchFormat
    date: date
    teams: tuple[str, str]
    venue: str
    innings: tuple[InningsRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "innings", tuple(self.innings))
        object.__setattr__(self, "teams", tuple(self.teams))
        idx = [inn.innings_index for inn in self.innings]
        if not 1 <= len(idx) <= 2 or len(set(idx)) != len(idx):
            raise ValueError("a match needs 1 or 2 innings with distinct indices")


@dataclass(frozen=True)
class InningsTrajectory:
    """Cumulative (ball, runs, wickets) sampled at each legal ball.

    ``ball`` runs 1..completed_balls except for the degenerate all-illegal
    innings, which yields a single synthetic point at ball 1 while
    ``completed_balls`` stays 0.
    """

    ball: np.ndarray
    runs: np.ndarray
    wickets: np.ndarray
    total: int
    completed_balls: int

    def __post_init__(self):
        for arr in (self.ball, self.runs, self.wickets):
            arr.setflags(write=False)

    @property
    def points(self) -> list[tuple[int, int, int]]:
        return list(zip(self.ball.tolist(), self.runs.tolist(), self.wickets.tolist()))

    def __len__(self) -> int:
        return len(self.ball)


@dataclass(frozen=True)
class Diagnostic:
    source: str
    message: str


class ParseWarning(UserWarning):
    """Non-fatal data loss during parsing (e.g. super-over innings dropped)."""


@dataclass(frozen=True)
class Corpus(Sequence):
    """Sequence of MatchRecord plus the diagnostics collected while loading."""

    matches: tuple[MatchRecord, ...]
    diagnostics: tuple[Diagnostic, ...] = ()

    def __len__(self) -> int:
        return len(self.matches)

    def __getitem__(self, i):
        return self.matches[i]

    def __iter__(self) -> Iterator[MatchRecord]:
        return iter(self.matches)


# ---------------------------------------------------------------------------
# parsing


def parse_match(
    data: bytes | str,
    format_hint: MatchFormat | None = None,
    match_id: str | None = None,
) -> MatchRecord:
    """Parse one match document (Cricsheet JSON or single-match CSV).

    ``format_hint`` overrides the format recorded in the document.  When the
    document holds more than two innings (super overs), the extra deliveries
    are dropped and a :class:`ParseWarning` reports how many.
    """
    record, warns = _parse_match(data, format_hint, match_id)
    for message in warns:
        warnings.warn(message, ParseWarning, stacklevel=2)
    return record


def _parse_match(
    data: bytes | str,
    format_hint: MatchFormat | None,
    match_id: str | None,
) -> tuple[MatchRecord, list[str]]:
    """Pure parsing core: returns the record and warning messages."""
    text = _decode(data)
    head = text.lstrip()
    if head.startswith("{"):
        return _match_from_json(text, format_hint, match_id)
    if head.startswith("match_id"):
        records, warns = _matches_from_csv(text, format_hint)
        if len(records) != 1:
            raise ParseError(
                f"expected exactly one match in CSV document, found {len(records)}"
            )
        return records[0], warns
    raise ParseError("unrecognised document: expected Cricsheet JSON or CSV ball log")


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError("document is not valid UTF-8", position=f"byte {e.start}") from e


def _match_from_json(
    text: str, format_hint: MatchFormat | None, match_id: str | None
) -> tuple[MatchRecord, list[str]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, position=f"line {e.lineno} column {e.colno}") from e

    info = doc.get("info")
    if not isinstance(info, dict):
        raise ParseError("missing 'info' object", position="$.info")

    fmt = format_hint or _detect_format(info)
    if fmt is None:
        raise UnsupportedFormatError(
            f"unsupported match_type {info.get('match_type')!r} and no format hint"
        )

    dates = info.get("dates")
    if not dates:
        raise ParseError("missing 'info.dates'", position="$.info.dates")
    try:
        match_date = date.fromisoformat(str(dates[0]))
    except ValueError as e:
        raise ParseError(f"bad date {dates[0]!r}", position="$.info.dates[0]") from e

    teams = info.get("teams") or []
    if len(teams) != 2:
        raise ParseError("expected exactly two teams", position="$.info.teams")
    venue = str(info.get("venue", ""))

    raw_innings = doc.get("innings")
    if not isinstance(raw_innings, list) or not raw_innings:
        raise ParseError("missing or empty 'innings' array", position="$.innings")

    warns: list[str] = []
    if len(raw_innings) > 2:
        dropped = sum(
            len(over.get("deliveries", ()))
            for entry in raw_innings[2:]
            for over in entry.get("overs", ())
        )
        warns.append(
            f"dropped {dropped} deliveries in {len(raw_innings) - 2} innings beyond innings 2"
        )
        raw_innings = raw_innings[:2]

    innings = tuple(
        _innings_from_json(entry, index + 1) for index, entry in enumerate(raw_innings)
    )

    if match_id is None:
        slug = "-".join(t.lower().replace(" ", "_") for t in teams)
        match_id = f"{match_date.isoformat()}-{slug}"

    record = MatchRecord(
        match_id=match_id,
        format=fmt,
        date=match_date,
        teams=(str(teams[0]), str(teams[1])),
        venue=venue,
        innings=innings,
    )
    return record, warns


def _detect_format(info: dict) -> MatchFormat | None:
    match_type = info.get("match_type")
    if match_type == "ODI":
        return MatchFormat.ODI
    if match_type in ("T20", "IT20"):
        event = info.get("event")
        name = event.get("name", "") if isinstance(event, dict) else str(event or "")
        if "Indian Premier League" in name:
            return MatchFormat.IPL
        return MatchFormat.T20I
    return None


def _innings_from_json(entry: dict, index: int) -> InningsRecord:
    team = str(entry.get("team", ""))
    deliveries: list[DeliveryEvent] = []
    for over_obj in entry.get("overs", ()):
        over = int(over_obj.get("over", 0))
        for ball_no, d in enumerate(over_obj.get("deliveries", ()), start=1):
            where = f"$.innings[{index - 1}].overs[over {over}].deliveries[{ball_no - 1}]"
            try:
                deliveries.append(_delivery_from_json(d, over, ball_no))
            except (ValueError, TypeError, KeyError) as e:
                raise ParseError(f"bad delivery: {e}", position=where) from e
    return InningsRecord(innings_index=index, batting_team=team, deliveries=tuple(deliveries))


# illegal kinds first: they decide legality when several extras co-occur
_EXTRAS_PRECEDENCE = (
    ("wides", ExtrasKind.WIDE),
    ("noballs", ExtrasKind.NO_BALL),
    ("byes", ExtrasKind.BYE),
    ("legbyes", ExtrasKind.LEG_BYE),
    ("penalty", ExtrasKind.PENALTY),
)


def _delivery_from_json(d: dict, over: int, ball_no: int) -> DeliveryEvent:
    runs = d.get("runs", {})
    batter_runs = int(runs.get("batter", 0))
    extras_runs = int(runs.get("extras", 0))
    extras = d.get("extras", {}) or {}
    kind = ExtrasKind.NONE
    for key, candidate in _EXTRAS_PRECEDENCE:
        if key in extras:
            kind = candidate
            break
    return DeliveryEvent(
        over=over,
        ball_in_over=ball_no,
        batter_runs=batter_runs,
        extras_runs=extras_runs,
        extras_kind=kind,
        wicket=bool(d.get("wickets")),
        legal=kind not in _ILLEGAL_KINDS,
    )


def _parse_bool(token: str, line_no: int) -> bool:
    t = token.strip().lower()
    if t in ("true", "1"):
        return True
    if t in ("false", "0"):
        return False
    raise ParseError(f"bad boolean {token!r}", position=f"line {line_no}")


def _matches_from_csv(
    text: str, format_hint: MatchFormat | None
) -> tuple[list[MatchRecord], list[str]]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise ParseError("CSV header does not match the canonical ball log", position="line 1")

    # (match_id, innings) -> deliveries, preserving first-appearance order
    by_match: dict[str, MatchFormat] = {}
    rows: dict[tuple[str, int], list[DeliveryEvent]] = {}
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 10:
            raise ParseError(
                f"expected 10 fields, found {len(parts)}", position=f"line {line_no}"
            )
        mid, fmt_s, inn_s, over_s, bio_s, legal_s, br_s, er_s, kind_s, wicket_s = parts
        fmt = format_hint or MatchFormat.from_string(fmt_s)
        if by_match.setdefault(mid, fmt) is not fmt:
            raise ParseError(
                f"conflicting formats for match {mid!r}", position=f"line {line_no}"
            )
        try:
            innings_index = int(inn_s)
            event = DeliveryEvent(
                over=int(over_s),
                ball_in_over=int(bio_s),
                batter_runs=int(br_s),
                extras_runs=int(er_s),
                extras_kind=ExtrasKind(kind_s.strip()),
                wicket=_parse_bool(wicket_s, line_no),
                legal=_parse_bool(legal_s, line_no),
            )
        except ValueError as e:
            raise ParseError(f"bad delivery row: {e}", position=f"line {line_no}") from e
        rows.setdefault((mid, innings_index), []).append(event)

    records = []
    for mid, fmt in by_match.items():
        innings = []
        for (row_mid, idx), deliveries in rows.items():
            if row_mid != mid:
                continue
            if idx not in (1, 2):
                raise ParseError(f"innings index {idx} out of range for match {mid!r}")
            innings.append(
                InningsRecord(innings_index=idx, batting_team="", deliveries=tuple(deliveries))
            )
        innings.sort(key=lambda inn: inn.innings_index)
        records.append(
            MatchRecord(
                match_id=mid,
                format=fmt,
                date=_CSV_EPOCH,
                teams=("", ""),
                venue="",
                innings=tuple(innings),
            )
        )
    return records, []


def load_corpus(
    directory: str | Path, format_filter: MatchFormat | None = None
) -> Corpus:
    """Parse every ``.json`` / ``.csv`` file in ``directory``.

    Per-file failures never abort the batch; they are collected as
    diagnostics.  Matches are returned sorted by match_id, so the result does
    not depend on filesystem enumeration order.
    """
    root = Path(directory)
    if not root.is_dir():
        raise NotADirectoryError(f"not a readable directory: {root}")

    matches: list[MatchRecord] = []
    diagnostics: list[Diagnostic] = []
    for path in sorted(root.iterdir()):
        suffix = path.suffix.lower()
        if suffix not in (".json", ".csv"):
            continue
        try:
            raw = path.read_bytes()
            if suffix == ".json":
                record, warns = _parse_match(raw, None, match_id=path.stem)
                parsed = [record]
            else:
                parsed, warns = _matches_from_csv(_decode(raw), None)
        except (ParseError, UnsupportedFormatError, OSError) as e:
            diagnostics.append(Diagnostic(path.name, str(e)))
            continue
        diagnostics.extend(Diagnostic(path.name, w) for w in warns)
        matches.extend(parsed)

    if format_filter is not None:
        matches = [m for m in matches if m.format is format_filter]
    matches.sort(key=lambda m: m.match_id)
    return Corpus(tuple(matches), tuple(diagnostics))


# ---------------------------------------------------------------------------
# trajectories


def trajectory(innings: InningsRecord, format: MatchFormat) -> InningsTrajectory:
    """Cumulative score/wicket trajectory over the legal-ball axis.

    Total runs are conserved exactly: the trajectory total equals the sum of
    batter and extras runs over all deliveries, legal or not.
    """
    deliveries = innings.deliveries
    if not deliveries:
        raise ValueError("innings has no deliveries")

    legal = np.fromiter((d.legal for d in deliveries), dtype=bool, count=len(deliveries))
    runs = np.fromiter(
        (d.total_runs for d in deliveries), dtype=np.int64, count=len(deliveries)
    )
    wkts = np.fromiter((d.wicket for d in deliveries), dtype=np.int64, count=len(deliveries))

    n_legal = int(legal.sum())
    if n_legal > format.scheduled_balls:
        raise ValueError(
            f"innings has {n_legal} legal balls but the {format.value} schedule "
            f"is {format.scheduled_balls}"
        )
    if n_legal == 0:
        # all-illegal innings: one synthetic point at ball 1
        return InningsTrajectory(
            ball=np.array([1], dtype=np.int64),
            runs=np.array([int(runs.sum())], dtype=np.int64),
            wickets=np.array([int(wkts.sum())], dtype=np.int64),
            total=int(runs.sum()),
            completed_balls=0,
        )

    # legal ball index carried by each delivery: a legal ball keeps its own
    # index, an illegal one credits the next legal ball (previous at the end)
    own_index = np.cumsum(legal)
    credit = np.where(legal, own_index, np.minimum(own_index + 1, n_legal))

    per_ball_runs = np.bincount(credit, weights=runs, minlength=n_legal + 1)[1:]
    per_ball_wkts = np.bincount(credit, weights=wkts, minlength=n_legal + 1)[1:]
    cum_runs = np.round(np.cumsum(per_ball_runs)).astype(np.int64)
    cum_wkts = np.round(np.cumsum(per_ball_wkts)).astype(np.int64)

    return InningsTrajectory(
        ball=np.arange(1, n_legal + 1, dtype=np.int64),
        runs=cum_runs,
        wickets=cum_wkts,
        total=int(cum_runs[-1]),
        completed_balls=n_legal,
    )


# ---------------------------------------------------------------------------
# canonical CSV export


def _csv_rows(match: MatchRecord) -> Iterable[str]:
    for inn in match.innings:
        for d in inn.deliveries:
            yield ",".join(
                (
                    match.match_id,
                    match.format.value,
                    str(inn.innings_index),
                    str(d.over),
                    str(d.ball_in_over),
                    "true" if d.legal else "false",
                    str(d.batter_runs),
                    str(d.extras_runs),
                    d.extras_kind.value,
                    "true" if d.wicket else "false",
                )
            )


def export_csv(matches: Iterable[MatchRecord], destination: str | Path) -> int:
    """Write matches as the canonical CSV ball log; returns the row count."""
    lines = [CSV_HEADER]
    for match in matches:
        lines.extend(_csv_rows(match))
    payload = "\n".join(lines) + "\n"
    Path(destination).write_text(payload, encoding="utf-8", newline="\n")
    return len(lines) - 1
