"""Star CLT Moments package."""

__version__ = "1.0.0"
__author__ = "Star CLT Moments Team"
__description__ = "Calcolo esatto dei momenti del limite centrale per le trasposizioni stellari sotto un carattere di Thoma"
