import logging
from fractions import Fraction
from typing import Dict, Iterable, Union

from hp_modules.hp_errors import GraphInputError

# Define ANSI color codes
class Colors:
    RESULT = '\033[92m'       # Green for results and "ok"
    VIOLATION = '\033[91m'    # Red for validation failures
    CASE_INFO = '\033[96m'    # Cyan for case decisions
    SYSTEM_INFO = '\033[94m'  # Blue for system messages
    WARNING = '\033[93m'
    LOG_NAME = '\033[94m'
    LOG_INFO = '\033[92m'
    LOG_WARNING = '\033[93m'
    LOG_ERROR = '\033[91m'
    ENDC = '\033[0m'
    BOLD = '\033[1m'

# Custom Formatter for logging
class ColoredFormatter(logging.Formatter):
    LEVEL_COLORS = {
        logging.DEBUG: Colors.LOG_INFO,
        logging.INFO: Colors.LOG_INFO,
        logging.WARNING: Colors.LOG_WARNING,
        logging.ERROR: Colors.LOG_ERROR,
        logging.CRITICAL: Colors.LOG_ERROR + Colors.BOLD,
    }

    def format(self, record):
        # Color a copy so other handlers still see plain names.
        record = logging.makeLogRecord(record.__dict__)
        color = self.LEVEL_COLORS.get(record.levelno, Colors.ENDC)
        record.levelname = f"{color}{record.levelname}{Colors.ENDC}"
        record.name = f"{Colors.LOG_NAME}{record.name}{Colors.ENDC}"
        return super().format(record)

_CONFIGURED_LOGGERS: Dict[str, logging.Logger] = {}

def setup_colored_logger(name, level=logging.INFO):
    """Sets up a logger with colored output."""
    logger = logging.getLogger(name)
    logger.setLevel(level)

    if not logger.handlers:
        ch = logging.StreamHandler()
        ch.setLevel(logging.DEBUG)
        formatter = ColoredFormatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        ch.setFormatter(formatter)
        logger.addHandler(ch)

    logger.propagate = False
    _CONFIGURED_LOGGERS[name] = logger
    return logger

def set_log_level(level: Union[int, str]) -> None:
    """Retunes every logger created through setup_colored_logger."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    for logger in _CONFIGURED_LOGGERS.values():
        logger.setLevel(level)

def as_fraction(eps: Union[float, int, str, Fraction]) -> Fraction:
    """Exact rational view of an epsilon given on the command line or in code.

    Going through the decimal string keeps 0.3 equal to 3/10, so threshold
    comparisons such as 10 <= (0.3/3) * 100 hold exactly.
    """
    if isinstance(eps, Fraction):
        return eps
    return Fraction(str(eps))

def check_epsilon(eps) -> Fraction:
    """Validates 0 < eps <= 1 and returns it as a Fraction."""
    try:
        value = as_fraction(eps)
    except (ValueError, ZeroDivisionError) as e:
        raise GraphInputError(f"epsilon {eps!r} is not a number") from e
    if not (0 < value <= 1):
        raise GraphInputError(f"epsilon must satisfy 0 < eps <= 1, got {eps}")
    return value

def format_vertex_set(vertices: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"
