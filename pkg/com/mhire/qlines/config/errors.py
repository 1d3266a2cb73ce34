class QlinesError(Exception):
    """Base class for every error raised by the qlines services."""
