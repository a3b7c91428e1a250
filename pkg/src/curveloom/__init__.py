"""Curve systems on punctured spheres.

Minimal position by bigon removal, loop surgery, subsurface projections,
distance certificates, and markings, over exact rational PL scenes.
"""

__version__ = "0.1.0"
