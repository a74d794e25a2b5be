"""Exception types shared across the package.

The CLI maps these onto exit codes: InputError -> 1, ConfigError -> 2.
"""


class InputError(ValueError):
    """Malformed or inconsistent input data (files, rows, serialized chronicles)."""


class ConfigError(ValueError):
    """Invalid parameter values or an unsatisfiable generator specification."""
