# API/__init__.py
"""
HTTP routes over the sampling, matching and regime evaluators.
"""
