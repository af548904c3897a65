# SPDX-License-Identifier: MIT

"""`python -m intent_ran` runs the command line."""

import sys

from intent_ran.harness.cli import main

sys.exit(main())
