"""LangGraph pipelines for verification runs and rate experiments."""
