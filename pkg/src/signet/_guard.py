import os

from .errors import SizeGuardError

DEFAULT_MAX_BITS = 24


def max_subset_bits() -> int:
    raw = os.environ.get("SIGNET_MAX_SUBSET_BITS")
    if raw:
        try:
            val = int(raw)
        except ValueError:
            raise SizeGuardError(f"SIGNET_MAX_SUBSET_BITS must be an integer, got {raw!r}")
        if val <= 0:
            raise SizeGuardError("SIGNET_MAX_SUBSET_BITS must be positive")
        return val
    return DEFAULT_MAX_BITS


def check(n: int, what: str, limit: int | None = None) -> None:
    lim = max_subset_bits() if limit is None else min(limit, max_subset_bits())
    if n > lim:
        raise SizeGuardError(
            f"{what}: {n} elements exceeds the exhaustive-scan guard of {lim}; "
            "shrink the input, use sampling, or raise SIGNET_MAX_SUBSET_BITS")
