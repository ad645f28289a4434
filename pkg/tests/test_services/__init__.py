"""Service unit tests"""
