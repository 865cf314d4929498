"""Test suite for the lt_influence package."""
