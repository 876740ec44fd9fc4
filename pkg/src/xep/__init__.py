"""Local emptiness of X_E^-(p)(Q_ell) and Frey-curve constructions for x^2 + y^3 = z^p."""

__version__ = "0.1.0"
