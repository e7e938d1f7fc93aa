"""
Environment configuration.

Values are read when asked for rather than at import so that a .env file
loaded by the entry script, or a test's monkeypatch, takes effect.
"""

import logging
import os

import psutil


LOGGER = logging.getLogger(__name__)

THREADS_VARIABLE = 'SKELETON_KIT_THREADS'
LOG_LEVEL_VARIABLE = 'SKELETON_KIT_LOG_LEVEL'

DEFAULT_THREADS = 1
DEFAULT_LOG_LEVEL = 'WARNING'


def enumeration_workers():
    """
    Number of worker threads for decomposition enumeration.

    :return: int. SKELETON_KIT_THREADS clamped to [1, cpu count], 1 when unset
             or not a positive integer
    """
    raw = os.environ.get(THREADS_VARIABLE, str(DEFAULT_THREADS))
    try:
        workers = int(raw)
    except ValueError:
        LOGGER.warning('%s=%r is not an integer, using %s', THREADS_VARIABLE, raw, DEFAULT_THREADS)
        return DEFAULT_THREADS
    if workers < 1:
        LOGGER.warning('%s=%r must be positive, using %s', THREADS_VARIABLE, raw, DEFAULT_THREADS)
        return DEFAULT_THREADS

    cpus = psutil.cpu_count() or 1
    if workers > cpus:
        LOGGER.info('capping %s=%s to %s cpus', THREADS_VARIABLE, workers, cpus)
        workers = cpus
    return workers


def log_level():
    """
    :return: int. logging level named by SKELETON_KIT_LOG_LEVEL, WARNING when
             unset or unknown
    """
    name = os.environ.get(LOG_LEVEL_VARIABLE, DEFAULT_LOG_LEVEL).upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        return logging.WARNING
    return level
