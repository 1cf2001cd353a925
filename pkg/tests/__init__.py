"""tests namespace."""
