"""API HTTP per Star CLT Moments."""
