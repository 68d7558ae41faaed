"""reflekt: exact certificates and limit-set renderings for hyperbolic
reflection groups whose boundaries are Pontryagin spheres and Menger curves."""

__version__ = "0.1.0"
