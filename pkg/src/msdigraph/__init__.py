"""Enumeration and spectral cataloguing of minimal strong digraphs."""
