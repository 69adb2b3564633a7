"""
This module bundles mostly technical utilities that might not be all this
interesting for users.
"""
