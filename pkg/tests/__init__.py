"""Test suite for infinitary."""
