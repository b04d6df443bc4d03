"""Test suite for LLM API Server."""
