"""
LUCID Agent Core Test Suite
"""
