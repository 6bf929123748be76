from __future__ import annotations

from loguru import logger

logger.remove()

__all__ = ["logger"]
