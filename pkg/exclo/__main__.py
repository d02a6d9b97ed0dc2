from __future__ import annotations

import sys

from exclo.cli import main

sys.exit(main())
