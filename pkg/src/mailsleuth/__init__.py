"""mailsleuth: resolve an e-mail address into a consolidated person profile."""

from .core import (
    BlogProfile,
    ConsolidatedIdentity,
    EmailId,
    FieldAlternative,
    FieldResolution,
    Gender,
    InvalidEmail,
    ProfileQuadruple,
    SocialResultItem,
    SourceId,
    SourceKind,
    SourceStatus,
    Threshold,
    WebResultItem,
    normalize_email,
)

__version__ = "0.1.0"

__all__ = [
    "BlogProfile",
    "ConsolidatedIdentity",
    "EmailId",
    "FieldAlternative",
    "FieldResolution",
    "Gender",
    "InvalidEmail",
    "ProfileQuadruple",
    "SocialResultItem",
    "SourceId",
    "SourceKind",
    "SourceStatus",
    "Threshold",
    "WebResultItem",
    "normalize_email",
    "__version__",
]
