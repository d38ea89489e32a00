"""Exception hierarchy shared by the library, the suites and the CLI."""


class VilenkinError(ValueError):
    """Base class for every error raised by the vilenkin package."""


class GroupSpecError(VilenkinError):
    """Invalid radices, truncation level, or a grid above the size cap."""


class IndexRangeError(VilenkinError):
    """An index (n, s, j, rank, ...) outside its admissible range."""


class SpecMismatchError(VilenkinError):
    """Operands built on different groups."""


class NormOrderError(VilenkinError):
    """Exponent p outside [1, 64]."""


class WeightError(VilenkinError):
    """Malformed weight sequence or one too short for the requested mean."""


class WeightClassError(WeightError):
    """Weights with the wrong monotonicity for the requested inequality."""


class IdentityError(VilenkinError):
    """A scalar identity that must hold exactly was violated beyond tolerance."""


class RateFitError(VilenkinError):
    """Series unusable for a log-log fit."""


class ConfigError(VilenkinError):
    """Unparseable or inconsistent run configuration."""
