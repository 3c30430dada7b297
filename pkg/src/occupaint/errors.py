"""Exception hierarchy shared across the package.

The CLI maps these onto distinct process exit codes (see ``cli``):
usage 1, configuration 2, io 3, data format 4, numeric failure 5.
"""


class OccupaintError(Exception):
    """Base class for all package-specific failures."""


class UsageError(OccupaintError):
    """Command invoked with invalid arguments."""


class ConfigError(OccupaintError):
    """Malformed or inconsistent run configuration."""


class DataFormatError(OccupaintError):
    """A serialized artifact violates its documented format."""


class BadMagicError(DataFormatError):
    """File does not start with the expected magic bytes."""


class BadVersionError(DataFormatError):
    """File carries an unsupported format version."""


class TruncatedDataError(DataFormatError):
    """File ends before the declared payload is complete."""


class ArchitectureMismatchError(DataFormatError):
    """Stored network weights do not match the requested architecture."""


class WorldGenError(OccupaintError):
    """Obstacle placement failed within the retry budget."""


class NumericError(OccupaintError):
    """A numeric invariant broke at runtime (NaN loss, bad shapes)."""
