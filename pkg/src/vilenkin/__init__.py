"""Vilenkin-means - summability means and approximation bounds on Vilenkin groups."""

__version__ = "0.1.0"

from vilenkin.graphs.rates_graph import create_rates_graph
from vilenkin.graphs.verify_graph import create_verify_graph

__all__ = ["create_verify_graph", "create_rates_graph"]
