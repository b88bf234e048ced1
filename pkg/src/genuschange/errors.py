"""Exception types shared across the package."""


class ResourceError(RuntimeError):
    """A configured cap (degree, extension degree, search budget) was exceeded."""


class ConstructionError(RuntimeError):
    """A construction that is mathematically guaranteed to succeed did not."""


class CheckpointError(RuntimeError):
    """A checkpoint file is corrupt or belongs to a different search."""
