"""The exclo library.

exclo builds the exclusivity graphs of n-cycle PR boxes, composes independent
copies through OR and multicolor graph products, searches them exactly for
violations of the exclusivity principle and checks the Ramsey-type
edge-coloring arguments that rule violations out.
"""

from __future__ import annotations

__version__ = "0.1.0"
