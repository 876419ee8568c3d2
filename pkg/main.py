"""hyperrewrite - Entry point.

Run the command-line tool with:
    uv run python main.py check -s samples/twocolour.sig "o2 ; o1"
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
