"""
Test suite for the random-feature estimators.
"""
