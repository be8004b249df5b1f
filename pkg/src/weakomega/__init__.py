"""Finite presentations of weak omega categories as spans of omega magmas."""
