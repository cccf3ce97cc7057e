"""Allow ``python -m qfnn`` as an alias for the ``qfnn`` console script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
