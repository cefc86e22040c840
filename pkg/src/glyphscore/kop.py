"""Kinds of perception (KOP) and the channel rating knowledge base.

Each visual channel kind carries a rating per KOP (associative, selective,
ordered, quantitative). Ratings map to suitability verdicts: yes is
appropriate, no is inappropriate, and the hedged ratings (limited, can-be,
maybe) default to usable unless the assessor overrides them for the
application at hand. The shipped table is a versioned JSON data file; user
overrides load from a same-shape file and are merged cell by cell.
"""
from __future__ import annotations

import json
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional, Union

from .model import ChannelKind, DataType


class Kop(str, Enum):
    ASSOCIATIVE = "associative"
    SELECTIVE = "selective"
    ORDERED = "ordered"
    QUANTITATIVE = "quantitative"


KOP_ORDER: tuple[Kop, ...] = tuple(Kop)


class KopRating(str, Enum):
    YES = "yes"
    LIMITED = "limited"
    CAN_BE = "can-be"
    MAYBE = "maybe"
    NO = "no"


class Suitability(str, Enum):
    APPROPRIATE = "appropriate"
    USABLE = "usable"
    INAPPROPRIATE = "inappropriate"


#: Larger is better; used to pick the best verdict across a variable's channels.
SUITABILITY_RANK = {
    Suitability.INAPPROPRIATE: 0,
    Suitability.USABLE: 1,
    Suitability.APPROPRIATE: 2,
}


class KopError(ValueError):
    """Raised for unknown channels, bad table files, or undefined AKOP sets."""


_AKOPS = {
    DataType.NOMINAL: frozenset({Kop.ASSOCIATIVE, Kop.SELECTIVE}),
    DataType.ORDINAL: frozenset({Kop.ASSOCIATIVE, Kop.SELECTIVE, Kop.ORDERED}),
    DataType.INTERVAL: frozenset(Kop),
    DataType.RATIO: frozenset(Kop),
}


def akops_for(data_type: DataType) -> frozenset[Kop]:
    """Applicable KOPs per data type. Directional has no published row."""
    data_type = DataType(data_type)
    if data_type not in _AKOPS:
        raise KopError(
            "AKOP set undefined for directional variables; supply the akop list explicitly"
        )
    return _AKOPS[data_type]


def suitability(rating: KopRating, override: Optional[Suitability] = None) -> Suitability:
    """Map a table rating to a verdict; override only applies to hedged cells."""
    rating = KopRating(rating)
    if rating is KopRating.YES:
        return Suitability.APPROPRIATE
    if rating is KopRating.NO:
        return Suitability.INAPPROPRIATE
    return Suitability(override) if override is not None else Suitability.USABLE


class KopTable:
    """Ratings per channel kind, loaded from the shipped file plus overrides."""

    def __init__(self, version: str, ratings: Mapping[ChannelKind, Mapping[Kop, KopRating]]):
        self.version = version
        self._ratings = {
            ChannelKind(kind): {Kop(k): KopRating(r) for k, r in cells.items()}
            for kind, cells in ratings.items()
        }

    def rating(self, channel_kind: ChannelKind, kop: Kop) -> KopRating:
        channel_kind = ChannelKind(channel_kind)
        kop = Kop(kop)
        if channel_kind is ChannelKind.CUSTOM:
            raise KopError("custom channels carry no table row; supply ratings explicitly")
        cells = self._ratings.get(channel_kind)
        if cells is None or kop not in cells:
            raise KopError(f"no rating for channel {channel_kind.value!r} / {kop.value}")
        return cells[kop]

    def row(self, channel_kind: ChannelKind) -> dict[Kop, KopRating]:
        return {kop: self.rating(channel_kind, kop) for kop in KOP_ORDER}

    def with_overrides(self, overrides: Mapping) -> "KopTable":
        """Merge a same-shape ratings mapping over this table, cell by cell."""
        merged = {kind: dict(cells) for kind, cells in self._ratings.items()}
        for kind, cells in overrides.items():
            kind = ChannelKind(kind)
            if kind is ChannelKind.CUSTOM:
                raise KopError("custom is not a table row; override a named kind instead")
            slot = merged.setdefault(kind, {})
            for kop, rating in cells.items():
                slot[Kop(kop)] = KopRating(rating)
        return KopTable(self.version, merged)


def _parse_table_doc(doc: Mapping, where: str) -> tuple[str, Mapping]:
    if not isinstance(doc, Mapping):
        raise KopError(f"{where}: table document must be a JSON object")
    version = doc.get("version")
    ratings = doc.get("ratings")
    if not isinstance(version, str) or not isinstance(ratings, Mapping):
        raise KopError(f"{where}: expected keys 'version' and 'ratings'")
    return version, ratings


def load_default_table() -> KopTable:
    raw = resources.files("glyphscore").joinpath("data/kop_ratings.json").read_text("utf-8")
    version, ratings = _parse_table_doc(json.loads(raw), "kop_ratings.json")
    return KopTable(version, ratings)


def load_table(overrides: Union[str, Path, Mapping, None] = None) -> KopTable:
    """Default table, optionally merged with an override file or mapping."""
    table = load_default_table()
    if overrides is None:
        return table
    if isinstance(overrides, (str, Path)):
        doc = json.loads(Path(overrides).read_text("utf-8"))
        _, ratings = _parse_table_doc(doc, str(overrides))
        return table.with_overrides(ratings)
    return table.with_overrides(overrides)
