"""The fixed eight-emotion vocabulary and its dimensional metadata.

Every other module consumes this one. The vocabulary, its canonical
ordering and the 1..7 intensity scale are frozen for schema version 1;
the version number travels with every stored reaction so the vocabulary
can evolve later without corrupting history.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import RatingOutOfRangeError, UnknownEmotionError

SCHEMA_VERSION = 1

INTENSITY_MIN = 1
INTENSITY_MAX = 7

#: Anchor text for the ends of the intensity scale, shown above rating sliders.
SCALE_HINT = "1 = not at all, 7 = an extreme amount"


class EmotionKind(str, Enum):
    """The eight discrete emotions, in canonical order.

    The ordering is stable across releases; serialized form is the
    lowercase member value.
    """

    ANGER = "anger"
    DISGUST = "disgust"
    FEAR = "fear"
    ANXIETY = "anxiety"
    SADNESS = "sadness"
    HAPPINESS = "happiness"
    RELAXATION = "relaxation"
    DESIRE = "desire"


CANONICAL_ORDER: tuple[EmotionKind, ...] = tuple(EmotionKind)


class Valence(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Arousal(str, Enum):
    HIGH = "high"
    LOW = "low"


class Motivation(str, Enum):
    APPROACH = "approach"
    WITHDRAWAL = "withdrawal"


@dataclass(frozen=True, slots=True)
class EmotionDescriptor:
    kind: EmotionKind
    valence: Valence
    arousal: Arousal
    motivation: Motivation
    glyph: str
    label: str


@dataclass(frozen=True, slots=True)
class EmotionSchema:
    version: int
    descriptors: tuple[EmotionDescriptor, ...]

    def descriptor(self, kind: EmotionKind) -> EmotionDescriptor:
        for d in self.descriptors:
            if d.kind is kind:
                return d
        raise UnknownEmotionError(str(kind))

    def valence(self, kind: EmotionKind) -> Valence:
        return self.descriptor(kind).valence

    @property
    def kinds(self) -> tuple[EmotionKind, ...]:
        return tuple(d.kind for d in self.descriptors)


# Dimension assignments follow the standard affective classification of
# these eight emotions: three positive / five negative, anger the lone
# approach-motivated negative, sadness and relaxation low-arousal.
_DESCRIPTORS = (
    EmotionDescriptor(EmotionKind.ANGER, Valence.NEGATIVE, Arousal.HIGH, Motivation.APPROACH, "\U0001f620", "Anger"),
    EmotionDescriptor(EmotionKind.DISGUST, Valence.NEGATIVE, Arousal.HIGH, Motivation.WITHDRAWAL, "\U0001f922", "Disgust"),
    EmotionDescriptor(EmotionKind.FEAR, Valence.NEGATIVE, Arousal.HIGH, Motivation.WITHDRAWAL, "\U0001f628", "Fear"),
    EmotionDescriptor(EmotionKind.ANXIETY, Valence.NEGATIVE, Arousal.HIGH, Motivation.WITHDRAWAL, "\U0001f630", "Anxiety"),
    EmotionDescriptor(EmotionKind.SADNESS, Valence.NEGATIVE, Arousal.LOW, Motivation.WITHDRAWAL, "\U0001f622", "Sadness"),
    EmotionDescriptor(EmotionKind.HAPPINESS, Valence.POSITIVE, Arousal.HIGH, Motivation.APPROACH, "\U0001f60a", "Happiness"),
    EmotionDescriptor(EmotionKind.RELAXATION, Valence.POSITIVE, Arousal.LOW, Motivation.APPROACH, "\U0001f60c", "Relaxation"),
    EmotionDescriptor(EmotionKind.DESIRE, Valence.POSITIVE, Arousal.HIGH, Motivation.APPROACH, "\U0001f60d", "Desire"),
)

_DEFAULT_SCHEMA = EmotionSchema(version=SCHEMA_VERSION, descriptors=_DESCRIPTORS)


def default_schema() -> EmotionSchema:
    """Return the built-in version-1 schema.

    Deterministic: every call returns a structurally equal (in fact the
    same immutable) schema.
    """
    return _DEFAULT_SCHEMA


def validate_rating(kind: EmotionKind, value: object) -> int:
    """Check an intensity value for an emotion; return it as an int.

    Accepts exactly the integers 1..7 (bool is rejected even though it
    subclasses int). Raises RatingOutOfRangeError otherwise.
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise RatingOutOfRangeError(value, kind)
    if not INTENSITY_MIN <= value <= INTENSITY_MAX:
        raise RatingOutOfRangeError(value, kind)
    return value


def parse_kind(text: str) -> EmotionKind:
    """Parse a case-insensitive emotion name; no aliases are recognized."""
    try:
        return EmotionKind(text.strip().lower())
    except ValueError:
        raise UnknownEmotionError(text) from None
