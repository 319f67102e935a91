"""Centralized logging configuration"""

import logging
import logging.handlers
from pathlib import Path
from typing import Optional

from src.utils.config import ROOT_DIR, get_config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(level: Optional[str] = None):
    """Configure application-wide logging with rotation"""
    config = get_config()
    log_level = getattr(logging, (level or config.get('logging.level', 'INFO')).upper())

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    # Re-running the CLI in one process (tests) must not stack handlers
    for handler in list(root_logger.handlers):
        if getattr(handler, '_kitaev_handler', False):
            root_logger.removeHandler(handler)
            handler.close()

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler._kitaev_handler = True
    root_logger.addHandler(console_handler)

    if config.get('logging.log_to_file', True):
        log_dir = Path(config.get('logging.log_dir', 'data/logs'))
        if not log_dir.is_absolute():
            log_dir = ROOT_DIR / log_dir
        log_dir.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_dir / 'kitaev_echo.log',
            maxBytes=config.get('logging.max_file_size', 10485760),
            backupCount=config.get('logging.backup_count', 5),
            encoding='utf-8'
        )
        file_handler.setFormatter(formatter)
        file_handler._kitaev_handler = True
        root_logger.addHandler(file_handler)

    logging.info("Logging system initialized")
