"""Search Trees - construct, validate and recognize graph search trees."""

__version__ = "0.1.0"
