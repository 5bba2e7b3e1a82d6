from .app import DEFAULT_MAX_UPLOAD, DEFAULT_SESSION_CAP, DEFAULT_TRACE_CAP, create_app

__all__ = ["create_app", "DEFAULT_MAX_UPLOAD", "DEFAULT_TRACE_CAP", "DEFAULT_SESSION_CAP"]
