import logging

from rich.console import Console
from rich.logging import RichHandler

from gstbc_detection.configuration import Configuration

PACKAGE_LOGGER = "gstbc_detection"


def setup_logging(verbose: bool = False) -> logging.Logger:
    configuration = Configuration.Logging
    logger = logging.getLogger(PACKAGE_LOGGER)

    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            rich_tracebacks=True,
            show_path=False,
        )
        handler.setFormatter(
            logging.Formatter(
                configuration.FORMAT, datefmt=configuration.DATE_FORMAT
            )
        )
        logger.addHandler(handler)
        logger.propagate = False

    logger.setLevel(logging.DEBUG if verbose else configuration.LEVEL)

    return logger
