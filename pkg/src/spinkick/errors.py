"""Exception types raised by spinkick."""


class SizeError(ValueError):
    """Spin count out of range, or operands of different sizes."""


class ProtocolUndefinedError(ValueError):
    """The kick protocol is not defined for the requested chain."""


class NonPhysicalStateError(ValueError):
    """A density matrix is not Hermitian or does not have unit trace."""
