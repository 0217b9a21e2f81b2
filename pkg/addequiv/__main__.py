"""Entry point for ``python -m addequiv``."""
import sys

from addequiv.cli import main

sys.exit(main())
