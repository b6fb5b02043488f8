"""Client SDK for the adaptenv line protocol."""

from .client import (
    ClientError,
    ClientSession,
    ServerError,
    Timeout,
    UnknownProblemId,
)

__version__ = "0.1.0"

__all__ = [
    "ClientError",
    "ClientSession",
    "ServerError",
    "Timeout",
    "UnknownProblemId",
]
