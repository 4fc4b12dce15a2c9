"""Exact workbench for braided Tambara-Yamagami and near-group fusion data."""

__version__ = "0.1.0"
