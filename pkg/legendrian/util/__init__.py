# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

from legendrian.util._logging import logger, log_to_stream
from legendrian.util._parallel import parallel_map, worker_count

__all__ = ["logger", "log_to_stream", "parallel_map", "worker_count"]
