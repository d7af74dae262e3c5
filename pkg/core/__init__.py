from .exceptions import *
from .logger_config import logger
from .workers import WorkerPool
