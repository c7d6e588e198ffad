"""womkit: build, verify, compose, and measure write-once memory codes."""

from .core import (
    CodeParams,
    CodeProperties,
    PropertyReport,
    TableCode,
    verify_wom,
    wom_rate,
)

__version__ = "0.1.0"
