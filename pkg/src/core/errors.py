"""Exception hierarchy shared by every stripes module.

Each error derives from both :class:`StripesError` and :class:`ValueError`,
so callers can catch the library-wide base or the builtin.
"""

from __future__ import annotations


class StripesError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(StripesError, ValueError):
    """Array shapes or position dimensions disagree."""


class OddDimension(StripesError, ValueError):
    """A pair-based method was given an odd model dimension."""


class BadBase(StripesError, ValueError):
    """Exponential frequency base must be greater than one."""


class BadGain(StripesError, ValueError):
    """Unit gains must be non-negative."""


class UnsupportedPooling(StripesError, ValueError):
    """The method/pooling combination is not offered."""


class UnitCountMismatch(StripesError, ValueError):
    """Number of positional matrices does not match the number of units."""


class NonSquare(StripesError, ValueError):
    """A square matrix was required."""


class ZeroNormalizer(StripesError, ValueError):
    """An attention denominator fell below the normalizer floor."""


class IndexOutOfRange(StripesError, IndexError):
    """An index points outside the dataset."""


class SingleContext(StripesError, ValueError):
    """Discriminability needs at least two contexts."""


class FormatError(StripesError, ValueError):
    """A pianoroll file does not follow the documented format."""


class NonBinary(StripesError, ValueError):
    """A pianoroll grid holds values outside {0, 1}."""


class LengthMismatch(StripesError, ValueError):
    """Two pianorolls differ in length or resolution."""


class ResolutionTooCoarse(StripesError, ValueError):
    """The pianoroll resolution cannot represent 16th-note bins."""


class MissingAnnotation(StripesError, ValueError):
    """A chord-based context was requested without chord or key data."""


class CoverageGap(StripesError, ValueError):
    """Chord spans leave part of the pianoroll uncovered or overlap."""


class EmptyInput(StripesError, ValueError):
    """An estimator was given no events."""


class WitnessNotFound(StripesError, ValueError):
    """A positive-definiteness witness search exhausted its budget."""
