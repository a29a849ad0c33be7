# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import logging, os, sys

logger = logging.getLogger("legendrian")
logger.setLevel(logging.WARNING)
logger.addHandler(logging.NullHandler())

FORMAT = "[%(process)d:(%(threadName)s)] %(name)s %(message)s"


class ShutdownSafeFileHandler(logging.FileHandler):
    """
    A FileHandler class which protects calls to "close" from concurrent
    logging operations.
    """
    def close(self):
        self.acquire()
        try:
            logging.FileHandler.close(self)
        finally:
            self.release()


def log_to_stream(level=logging.INFO, stream=None):
    """
    Attach a stream handler to the package logger.

    @type  level: int
    @param level: The logging level to switch the package logger to.
    @param stream: The stream to write to (default sys.stderr).
    """
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter(FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    return handler


_level = os.environ.get("LEGENDRIAN_LOG")
if _level:
    handler = ShutdownSafeFileHandler("legendrian.%d.log" % os.getpid())
    handler.setFormatter(logging.Formatter(FORMAT))
    logger.addHandler(handler)
    logger.setLevel(getattr(logging, _level.upper(), logging.DEBUG))
    logger.debug("sys.argv: %r", sys.argv)
