"""Online Ramsey game toolkit.

Builder draws one edge per turn, Painter immediately colours it with one of
``q`` colours, and Builder tries to force a monochromatic copy of a target
graph.  The package provides the shared coloured-state core, a match engine,
executable Builder/Painter strategies, an exact solver for small targets,
edge-budget arithmetic with verified inequality chains, and a small HTTP
service for interactive play.
"""

from __future__ import annotations

__version__ = "0.1.0"
