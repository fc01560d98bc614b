"""Exception hierarchy shared by every stage of the pipeline."""


class GeomintError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class ImageFormatError(GeomintError):
    """The file is unreadable, truncated, or in an unsupported format."""


class EmptyFigure(GeomintError):
    """Binarization left no foreground pixels."""


class DegenerateFigure(GeomintError):
    """Fewer than two figure points, so the principal axis is undefined."""


class ManifestError(GeomintError):
    """A problem or trial manifest is malformed."""
