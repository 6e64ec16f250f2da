"""Logging configuration for verification runs."""

import logging
import sys

from meanslab.config import LoggingConfig

_HANDLER_TAG = "_meanslab_handler"


def _tagged(handler: logging.Handler) -> logging.Handler:
    setattr(handler, _HANDLER_TAG, True)
    return handler


def _reset(logger: logging.Logger) -> None:
    for handler in list(logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            logger.removeHandler(handler)
            handler.close()


def setup_logging(config: LoggingConfig | None = None, console_level: int = logging.WARNING) -> logging.Logger:
    """Configure logging for the meanslab package.

    Creates, when file logging is enabled:
    - meanslab.log: Everything at the configured level
    - failures.log: Check failures and errors

    The console handler writes to stderr so stdout stays machine readable.
    Calling this again replaces the handlers it installed before.

    Returns:
        The package logger
    """
    config = config or LoggingConfig()

    detailed_formatter = logging.Formatter(
        '%(asctime)s | %(levelname)-8s | %(name)s | %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    logger = logging.getLogger("meanslab")
    failure_logger = logging.getLogger("meanslab.failures")
    _reset(logger)
    _reset(failure_logger)
    logger.setLevel(logging.DEBUG)

    if config.file_logging:
        config.directory.mkdir(parents=True, exist_ok=True)

        main_handler = _tagged(logging.FileHandler(config.directory / "meanslab.log"))
        main_handler.setFormatter(detailed_formatter)
        main_handler.setLevel(getattr(logging, config.level, logging.INFO))
        logger.addHandler(main_handler)

        failure_handler = _tagged(logging.FileHandler(config.directory / "failures.log"))
        failure_handler.setFormatter(detailed_formatter)
        failure_handler.setLevel(logging.WARNING)
        failure_logger.addHandler(failure_handler)

    # Console handler (warnings only)
    console_handler = _tagged(logging.StreamHandler(sys.stderr))
    console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    console_handler.setLevel(console_level)
    logger.addHandler(console_handler)

    return logger
