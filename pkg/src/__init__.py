"""Kitaev Echo - Loschmidt echo and magnon momentum distributions of the Kitaev spin chain"""
__version__ = "1.0.0"
