"""Unimodular-matrix cipher with check-number error correction."""

from ._unimodcrypt import *  # noqa: F401,F403
from ._unimodcrypt import UnimodError, Key  # noqa: F401
