"""Settings read from the environment."""

import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass

import voluptuous as vol

from .const import CONF_THREADS, DEFAULT_THREADS, ENV_THREADS, MAX_THREADS

_LOGGER = logging.getLogger(__name__)

SETTINGS_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_THREADS, default=DEFAULT_THREADS): vol.All(
            vol.Coerce(int), vol.Range(min=1, max=MAX_THREADS)
        ),
    }
)


class SettingsException(Exception):
    """Invalid setting in the environment."""


@dataclass(frozen=True)
class Settings:
    """Runtime settings; none of them changes a result."""

    threads: int = DEFAULT_THREADS


def load_settings(environ: Mapping[str, str] | None = None) -> Settings:
    """Validate the environment against SETTINGS_SCHEMA.

    Raises:
        SettingsException: If a variable has an invalid value
    """
    if environ is None:
        environ = os.environ
    raw = {}
    if ENV_THREADS in environ:
        raw[CONF_THREADS] = environ[ENV_THREADS]
    try:
        data = SETTINGS_SCHEMA(raw)
    except vol.Invalid as e:
        raise SettingsException(
            f"Expected integer 1..{MAX_THREADS} in {ENV_THREADS}, got {environ[ENV_THREADS]!r}"
        ) from e
    _LOGGER.debug("Settings: %s", data)
    return Settings(threads=data[CONF_THREADS])
