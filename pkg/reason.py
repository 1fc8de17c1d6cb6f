#!/usr/bin/env python3
"""
Entry point for the reasoner command line
"""

import sys

from reasoner.cli import main

if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\ninterrupted", file=sys.stderr)
        sys.exit(130)
