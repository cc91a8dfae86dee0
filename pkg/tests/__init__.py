"""Tests for the Maslov Analysis SDK."""
