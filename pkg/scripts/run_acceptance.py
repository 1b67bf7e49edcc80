"""Run the acceptance gate and print one line per criterion.

Usage:  python3 scripts/run_acceptance.py
"""
import sys

import pytest

if __name__ == "__main__":
    sys.exit(pytest.main(["-q", "-s", "tests/test_acceptance.py"]))
