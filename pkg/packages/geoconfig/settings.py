"""Runtime configuration."""

import os

DEFAULT_SEED = 7
SEED_ENV_VAR = "GEOCONFIG_SEED"


def get_default_seed() -> int:
    """Get the seed used by randomized campaigns when none is given.

    This function checks for the GEOCONFIG_SEED environment variable first.
    If not set, it returns DEFAULT_SEED.

    Returns:
        int: The seed

    Raises:
        ValueError: If GEOCONFIG_SEED is set but is not an integer
    """
    # Check for environment variable first
    value = os.environ.get(SEED_ENV_VAR)
    if value:
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {value!r}") from None

    return DEFAULT_SEED
