class RoadmatchError(Exception):
    """Base class for all roadmatch errors."""


class InputError(RoadmatchError):
    """Malformed or out-of-range user input. CLI exit code 1."""


class ConfigurationError(RoadmatchError):
    """Parameter choice that cannot work (e.g. product bound exceeded). CLI exit code 2."""


class InternalError(RoadmatchError):
    """Broken invariant; indicates a bug in the caller, not the input."""
