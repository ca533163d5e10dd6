"""Multi-chaotic color image cipher: plaintext-dependent bit shuffling plus
chained cross-channel diffusion, with image metrics and a randomness battery."""

from ._backend import NAME as BACKEND
from .pipeline import (
    CipherContainer,
    KeyConfig,
    decrypt,
    dump_key,
    encrypt,
    generate_key,
    load_key,
    parse,
    serialize,
)

__all__ = [
    "BACKEND",
    "CipherContainer",
    "KeyConfig",
    "decrypt",
    "dump_key",
    "encrypt",
    "generate_key",
    "load_key",
    "parse",
    "serialize",
]
