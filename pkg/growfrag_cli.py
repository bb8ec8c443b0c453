#!/usr/bin/env python3
"""Run the growfrag command line from a source checkout."""

import sys

from growfrag.cli import main

if __name__ == "__main__":
    sys.exit(main())
