"""Exception hierarchy shared by all modules.

Two broad families: contract/capability problems (caller misuse, exit code 2
in the CLI) and numeric-domain problems (data outside the operating envelope,
exit code 3).
"""


class PauliTomographError(Exception):
    """Base class for every error raised by this package."""


class ContractError(PauliTomographError):
    """Input violates a documented precondition or invariant."""


class CapabilityError(PauliTomographError):
    """Request is outside the supported envelope (not a bug, a boundary)."""


class NumericDomainError(PauliTomographError):
    """Data left the numeric operating envelope (aliasing, support loss...)."""


class IllPosedOperatorError(NumericDomainError):
    """Spectral antiderivative applied to a field with a zero mode.

    Carries the offending zero-frequency coefficient magnitude.
    """

    def __init__(self, message, zero_mode_magnitude):
        super().__init__(message)
        self.zero_mode_magnitude = zero_mode_magnitude


class IllPosedDeconvolutionError(NumericDomainError):
    """Deconvolution would amplify spectral noise beyond the safe bound.

    Carries a small diagnostic of the offending spectrum region.
    """

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class ReconstructionError(NumericDomainError):
    """Tomographic inversion cannot proceed (e.g. angular coverage too thin)."""
