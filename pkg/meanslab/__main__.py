"""Entry point for meanslab when run as a module."""

import sys

from meanslab.cli import main

if __name__ == "__main__":
    sys.exit(main())
