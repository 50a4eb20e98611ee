"""Runtime knobs shared by the numeric/symbolic layers."""

import os

DEFAULT_DIGIT_THRESHOLD = 10_000

_threshold = int(os.environ.get("DIO_DIGIT_BUDGET", DEFAULT_DIGIT_THRESHOLD))


def digit_threshold() -> int:
    """Largest decimal length kept as a plain integer before going symbolic."""
    return _threshold


def set_digit_threshold(n: int) -> None:
    # Values built under an older threshold keep their old shape; call this
    # before constructing anything.
    global _threshold
    if n < 1:
        raise ValueError("digit threshold must be positive")
    _threshold = int(n)


def materialize_limit() -> int:
    """Digit length up to which a non-closed result is computed numerically."""
    return 10 * _threshold
