"""Decision kernel and services for virtual links."""

__version__ = "0.1.0"
