"""Executable ephemeris engine for Ibn al-Shatir's nested-orb model of Venus."""

__version__ = "0.1.0"
