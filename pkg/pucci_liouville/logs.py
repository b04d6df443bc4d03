"""Logging setup and structured log events."""

import datetime
import json
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any

from .config import ToolkitConfig

PACKAGE_LOGGER = "pucci_liouville"


def configure_logging(config: ToolkitConfig) -> logging.Logger:
    """Attach a handler to the package logger according to config.

    A rotating file handler is used when ``config.log_file`` is set, otherwise a
    stderr stream handler. Calling this twice replaces the previous handler.

    Args:
        config: Toolkit configuration

    Returns:
        The package logger
    """
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    handler: logging.Handler
    if config.log_file:
        handler = RotatingFileHandler(
            Path(config.log_file),
            maxBytes=config.log_max_bytes,
            backupCount=config.log_backup_count,
            encoding="utf-8",
        )
    else:
        # StreamHandler defaults to stderr; stdout is reserved for results
        handler = logging.StreamHandler()

    # JSON lines stay parseable with jq when the formatter adds nothing
    if config.log_format == "json":
        handler.setFormatter(logging.Formatter("%(message)s"))
    elif config.log_file:
        handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s", datefmt="%Y-%m-%d %H:%M:%S")
        )
    else:
        handler.setFormatter(logging.Formatter("%(name)s - %(message)s"))

    logger.addHandler(handler)
    logger.setLevel(config.log_level.upper())
    logger.propagate = False
    return logger


def log_event(
    logger: logging.Logger,
    config: ToolkitConfig,
    level: str,
    event: str,
    message: str,
    **extra_fields: Any,
):
    """Log an event in the configured format (text, json, or yaml).

    Args:
        logger: Logger to emit on
        config: Toolkit configuration (selects the format)
        level: Log level ("debug", "info", "warning", "error")
        event: Event type (e.g., "sweep_started", "witness_verified")
        message: Human-readable message for text format
        **extra_fields: Additional fields to include in structured formats
    """
    log_func = getattr(logger, level.lower(), logger.info)

    if config.log_format == "json":
        log_entry = {
            "timestamp": datetime.datetime.now(datetime.UTC).isoformat(),
            "level": level.upper(),
            "event": event,
            "message": message,
            **extra_fields,
        }
        log_func(json.dumps(log_entry, ensure_ascii=False, default=str))

    elif config.log_format == "yaml":
        lines = [
            "---",
            f"timestamp: {datetime.datetime.now(datetime.UTC).isoformat()}",
            f"level: {level.upper()}",
            f"event: {event}",
            f"message: {json.dumps(message)}",
        ]
        for key, value in extra_fields.items():
            lines.append(f"{key}: {json.dumps(value, default=str)}")
        log_func("\n".join(lines))

    else:
        log_func(message)
