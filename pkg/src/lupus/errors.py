"""Error taxonomy shared across the library and the CLI.

The CLI maps these onto process exit codes: configuration/usage problems
exit 1, data problems exit 2, anything unexpected exits 3.
"""


class LupusError(Exception):
    """Base class for all library errors."""


class ConfigError(LupusError):
    """Invalid configuration: bad parameter values, unresolvable ids, misuse."""


class DataError(LupusError):
    """Invalid input data: parse failures, malformed files, schema mismatches."""
