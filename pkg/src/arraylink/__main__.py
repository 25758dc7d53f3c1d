"""Module entry point: python -m arraylink."""

import sys

from .cli import main

sys.exit(main())
