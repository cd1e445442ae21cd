"""Differentially private geometry of Tukey depth regions."""
