"""Constants."""

from enum import IntEnum

SCHEMA_VERSION = 1
ENV_THREADS = "KAHLER_POISSON_THREADS"
CONF_THREADS = "threads"
DEFAULT_THREADS = 1
MAX_THREADS = 64
CORPUS_INDEX = "index.json"


class ExitCode(IntEnum):
    """Process exit codes."""

    OK = 0
    FAIL = 1
    INPUT_ERROR = 2
    UNSUPPORTED = 3
