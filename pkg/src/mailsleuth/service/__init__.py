from .app import AllProvidersFailed, create_app
from .cache import ResponseCache
from .schemas import IdentifyResponse, identify_payload, rfc3339
from .session_log import SessionLog, read_entries

__all__ = [
    "AllProvidersFailed",
    "IdentifyResponse",
    "ResponseCache",
    "SessionLog",
    "create_app",
    "identify_payload",
    "read_entries",
    "rfc3339",
]
