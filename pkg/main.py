"""
vote_walk command-line entry point.

Usage:
    python main.py expect --mu 0 --sigma 10 --g1 300 --g2 300 --t1 0 --t2 0 --rule and
    python main.py sweep-t2 --config data/t2_sweep_and.conf --csv t2_sweep_and.csv
"""

import sys

from vote_walk.cli import main

if __name__ == "__main__":
    sys.exit(main())
