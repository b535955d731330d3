"""Test suite for Virtual Links API."""
