#!/usr/bin/env python3
"""Run the acceptance gate alone and show every verdict line.

Equivalent to `pytest tests/test_acceptance.py -v`; kept as a script so the
gate can be run from cron or CI without remembering pytest flags.  Exit
status is pytest's (nonzero while the known-red monotonicity criterion
stays red).
"""

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    gate = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    sys.exit(pytest.main([str(gate), "-v", *sys.argv[1:]]))
