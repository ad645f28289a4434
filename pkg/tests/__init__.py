"""API Tests package"""
