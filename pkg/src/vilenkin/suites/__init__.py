"""Suites that evaluate identities, inequalities and rates."""
