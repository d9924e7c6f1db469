"""Entry point for python -m kahler_poisson."""

import sys

from .cli import main

sys.exit(main())
