"""LT Influence: spread of influence under the Linear Threshold model."""

__version__ = "0.1.0"
