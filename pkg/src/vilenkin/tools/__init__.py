"""Configuration, reports, serialization and the random generator."""
