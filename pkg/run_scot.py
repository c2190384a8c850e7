#!/usr/bin/env python3
# File: run_scot.py
# Path: AIDEV-StrategicCoT/run_scot.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  6:10PM
# Description: Runner script for the scot command line

"""
Runner script for the scot command line.

Puts the project root on the Python path so Core and Utils import from
any working directory, then hands the arguments to Core.CommandLine.

    python run_scot.py run --method cot_zero --method scot_zero --dataset gsm8k
"""

import os
import sys

ProjectRoot = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ProjectRoot)

from Core.CommandLine import Execute


def Main():
    """Main entry point for the script."""
    sys.exit(Execute(sys.argv[1:]))


if __name__ == "__main__":
    Main()
