"""Tests for the vilenkin package."""
