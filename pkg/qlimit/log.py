"""Logging for qlimit: one package logger with a child per module."""

import logging
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from typing import ClassVar, TextIO

ROOT_LOGGER = "qlimit"


class ColoredFormatter(logging.Formatter):
    """Colors the level name and tags records with the module that logged them.

    Records from ``qlimit.quad`` carry ``module_tag = "quad"``; records from
    the package logger carry ``qlimit``.
    """

    COLORS: ClassVar[dict[int, str]] = {
        logging.DEBUG: "\033[36m",
        logging.INFO: "\033[32m",
        logging.WARNING: "\033[33m",
        logging.ERROR: "\033[31m",
        logging.CRITICAL: "\033[35m",
    }
    RESET = "\033[0m"

    def __init__(self, fmt: str, use_color: bool = False):
        super().__init__(fmt)
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        record.module_tag = record.name.removeprefix(f"{ROOT_LOGGER}.")
        levelname = record.levelname
        if self.use_color:
            record.levelname = f"{self.COLORS.get(record.levelno, '')}{levelname}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


def setup_logging(
    quiet: bool = False, verbose: int = 0, stream: TextIO | None = None
) -> logging.Logger:
    """Configure the package logger.

    Reports go to stdout or a file, so records go to stderr unless another
    stream is given. Colors are only used on a terminal.

    Args:
        quiet: If True, only show errors
        verbose: 0 for info, 1 for debug tagged with the module, 2 or more adds
            timestamps and worker thread names
        stream: Destination of the records

    Returns:
        Configured logger
    """
    stream = stream or sys.stderr
    logger = logging.getLogger(ROOT_LOGGER)
    logger.handlers.clear()
    logger.propagate = False

    if quiet:
        level = logging.ERROR
    elif verbose >= 1:
        level = logging.DEBUG
    else:
        level = logging.INFO
    logger.setLevel(level)

    if verbose >= 2:
        fmt = "%(asctime)s %(threadName)s %(levelname)s [%(module_tag)s] %(message)s"
    elif verbose == 1:
        fmt = "%(levelname)s [%(module_tag)s] %(message)s"
    else:
        fmt = "%(levelname)s: %(message)s"

    handler = logging.StreamHandler(stream)
    handler.setLevel(level)
    handler.setFormatter(ColoredFormatter(fmt, use_color=stream.isatty()))
    logger.addHandler(handler)
    return logger


def get_logger(name: str | None = None) -> logging.Logger:
    """The package logger, or a child such as ``qlimit.quad``."""
    if name is None:
        return logging.getLogger(ROOT_LOGGER)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


@contextmanager
def timed(logger: logging.Logger, label: str) -> Iterator[None]:
    """Log the wall time of a block at debug level."""
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.debug(f"{label} took {time.perf_counter() - start:.3f}s")
