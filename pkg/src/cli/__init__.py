"""Interfaccia a riga di comando del motore dei momenti."""

from .main import cli

__all__ = ["cli"]
