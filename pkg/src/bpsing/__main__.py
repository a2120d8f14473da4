"""Module entry point, so ``python -m bpsing`` behaves like the installed script."""

import sys

from .cli import main

sys.exit(main())
