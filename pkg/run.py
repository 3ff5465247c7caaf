"""Dev launcher for cfgkit.

Usage:
  python run.py enum data/grammars/g1.cfg --max-len 4
  python run.py member data/grammars/g1.cfg a a b

Equivalent to `python -m cfgkit ...` or the installed `cfgkit` script.
"""

import sys

from cfgkit.cli import main

if __name__ == "__main__":
    sys.exit(main())
