"""
Structured logging configuration for the toolkit
"""
import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

import structlog

from app.core.config import settings


def setup_file_logging(log_file: str) -> logging.Handler:
    """Set up a rotating file handler for toolkit logs"""
    log_path = Path(log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)

    file_handler = logging.handlers.RotatingFileHandler(
        log_path,
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    ))
    return file_handler


def configure_logging(level: Optional[str] = None, json_logs: Optional[bool] = None):
    """Configure structured logging; log records go to stderr, results to stdout"""

    level_name = (level or settings.LOG_LEVEL).upper()
    if json_logs is None:
        json_logs = settings.LOG_JSON
    if json_logs is None:
        json_logs = not sys.stderr.isatty()

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer() if json_logs else structlog.dev.ConsoleRenderer()
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        handlers.append(setup_file_logging(settings.LOG_FILE))

    logging.basicConfig(
        level=getattr(logging, level_name),
        format="%(message)s",
        handlers=handlers,
        force=True,
    )

    # Reduce noise from third-party libraries
    logging.getLogger('numpy').setLevel(logging.WARNING)
    logging.getLogger('pandas').setLevel(logging.WARNING)


logger = structlog.get_logger()
